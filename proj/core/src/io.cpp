#include "lp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lp {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (lineno == 1) {
            table.header = cells;
            continue;
        }
        std::vector<double> row;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cells[c], &used));
                if (used != cells[c].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw std::runtime_error("csv: parse error at " + path.string() + ":" +
                                         std::to_string(lineno) + " column " +
                                         std::to_string(c + 1));
            }
        }
        if (row.size() != table.header.size())
            throw std::runtime_error("csv: wrong column count at " + path.string() + ":" +
                                     std::to_string(lineno));
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw std::runtime_error("csv: empty file " + path.string());
    return table;
}

}  // namespace

void write_field_csv(const SampledField& field, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path.string());
    const Grid& g = field.grid();
    out << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
    for (std::size_t i = 0; i < field.size(); ++i) {
        const Point p = g.center(i);
        if (g.dim() == 1) {
            out << format_double(p[0]) << ',' << format_double(field.value(i)) << '\n';
        } else {
            out << format_double(p[0]) << ',' << format_double(p[1]) << ','
                << format_double(field.value(i)) << '\n';
        }
    }
}

namespace {

// Reconstructs the uniform grid from the cell-center columns.
SampledField field_from_table(const CsvTable& table, const std::filesystem::path& path) {
    const std::size_t cols = table.header.size();
    if (cols != 2 && cols != 3)
        throw std::runtime_error("csv: expected `x[,y],value` columns in " + path.string());
    const int dim = cols == 2 ? 1 : 2;
    if (table.rows.empty()) throw std::runtime_error("csv: no rows in " + path.string());

    std::vector<double> xs;
    for (const auto& row : table.rows) xs.push_back(row[0]);
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const int cells = static_cast<int>(sorted.size());
    if (cells < 2) throw std::runtime_error("csv: fewer than 2 distinct centers in " +
                                            path.string());
    const double h = sorted[1] - sorted[0];
    Point lo{sorted.front() - h / 2.0, 0.0};
    Point hi{sorted.back() + h / 2.0, 0.0};
    if (dim == 2) {
        std::vector<double> ys;
        for (const auto& row : table.rows) ys.push_back(row[1]);
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        if (static_cast<int>(ys.size()) != cells)
            throw std::runtime_error("csv: grid is not square in " + path.string());
        lo[1] = ys.front() - h / 2.0;
        hi[1] = ys.back() + h / 2.0;
    }
    Grid grid(dim, lo, hi, cells);
    if (table.rows.size() != grid.cell_count())
        throw std::runtime_error("csv: row count does not fill the grid in " + path.string());

    std::vector<double> values(grid.cell_count());
    for (const auto& row : table.rows) {
        const int ix = static_cast<int>(std::llround((row[0] - lo[0]) / h - 0.5));
        const int iy = dim == 2 ? static_cast<int>(std::llround((row[1] - lo[1]) / h - 0.5)) : 0;
        if (ix < 0 || ix >= cells || iy < 0 || iy >= (dim == 2 ? cells : 1))
            throw std::runtime_error("csv: center off the grid in " + path.string());
        values[grid.index(ix, iy)] = row[dim];
    }
    return SampledField(grid, std::move(values));
}

}  // namespace

SampledField read_field_csv(const std::filesystem::path& path) {
    return field_from_table(read_csv(path), path);
}

RegionMask read_mask_csv(const std::filesystem::path& path) {
    const SampledField f = read_field_csv(path);
    std::vector<std::uint8_t> m(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) m[i] = f.value(i) > 0.5 ? 1 : 0;
    return RegionMask(f.grid(), std::move(m));
}

void write_upper_csv(const UpperHalfField& field, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path.string());
    const Grid& g = field.grid();
    out << (g.dim() == 1 ? "x,t,value\n" : "x,y,t,value\n");
    for (std::size_t j = 0; j < field.ladder().size(); ++j) {
        const double t = field.ladder().value(j);
        for (std::size_t i = 0; i < g.cell_count(); ++i) {
            const Point p = g.center(i);
            out << format_double(p[0]) << ',';
            if (g.dim() == 2) out << format_double(p[1]) << ',';
            out << format_double(t) << ',' << format_double(field.at(j, i)) << '\n';
        }
    }
}

void write_cover_csv(const WhitneyCover& cover, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path.string());
    const int dim = cover.source.grid().dim();
    out << (dim == 1 ? "center_x,side\n" : "center_x,center_y,side\n");
    for (const Cube& q : cover.cubes) {
        out << format_double(q.center[0]) << ',';
        if (dim == 2) out << format_double(q.center[1]) << ',';
        out << format_double(q.side) << '\n';
    }
}

Json whitney_report_json(const WhitneyReport& report) {
    Json j;
    j["disjoint_interiors"] = report.disjoint_ok;
    j["coverage"] = report.coverage_ok;
    j["dist_bracket"] = report.dist_bracket_ok;
    j["side_ratio"] = report.side_ratio_ok;
    j["neighbor_count"] = report.neighbor_count_ok;
    j["pass"] = report.all_ok();
    j["uncovered_cells"] = report.uncovered_cells;
    j["filler_count"] = report.filler_count;
    j["max_neighbors"] = report.max_neighbors;
    j["spacing"] = report.spacing;
    Json w = Json::array();
    for (const auto& v : report.violations) {
        w.push_back({{"invariant", v.invariant},
                     {"cube_a", v.cube_a},
                     {"cube_b", v.cube_b},
                     {"measured", v.measured}});
    }
    j["violations"] = w;
    return j;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::uint64_t digest_field(const SampledField& field) {
    std::string bytes;
    bytes.reserve(field.size() * sizeof(double) + 64);
    const Grid& g = field.grid();
    const int dim = g.dim();
    const int cells = g.cells_per_axis();
    bytes.append(reinterpret_cast<const char*>(&dim), sizeof(dim));
    bytes.append(reinterpret_cast<const char*>(&cells), sizeof(cells));
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double v = field.value(i);
        bytes.append(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    return fnv1a(bytes);
}

Json make_report(const std::string& checker, std::uint64_t inputs_digest, const Json& payload) {
    Json report = payload;
    report["checker"] = checker;
    {
        char buf[19];
        std::snprintf(buf, sizeof(buf), "0x%016llx",
                      static_cast<unsigned long long>(inputs_digest));
        report["inputs_digest"] = buf;
    }
    Json doc;
    doc["report"] = report;
    const auto now = std::chrono::system_clock::now();
    doc["metadata"] = {
        {"generated_at_unix_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count()},
        {"tool", "lpverify 0.1.0"}};
    return doc;
}

void write_json(const Json& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("json: cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace lp
