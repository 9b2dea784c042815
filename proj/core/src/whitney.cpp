#include "lp/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double sqrt_n(int dim) { return dim == 1 ? 1.0 : std::numbers::sqrt2; }

// Distance from each cell's closed square to the nearest complement cell
// center, in grid units of h. Exact: the per-axis excess max(0, |d| - 1/2)
// is monotone in |d|, so the nearest-in-row site minimizes the row term.
std::vector<double> cell_to_complement_distance(const RegionMask& region) {
    const Grid& grid = region.grid();
    const int N = grid.cells_per_axis();
    const double h = grid.spacing();
    const std::size_t cells = grid.cell_count();
    std::vector<double> dist(cells, kInf);

    auto excess = [](double d) { return std::max(0.0, d - 0.5); };

    if (grid.dim() == 1) {
        // two-pass nearest complement cell
        std::vector<double> nearest(cells, kInf);
        double last = kInf;
        for (int i = 0; i < N; ++i) {
            if (!region.contains(static_cast<std::size_t>(i))) last = i;
            nearest[i] = std::isinf(last) ? kInf : i - last;
        }
        last = kInf;
        for (int i = N - 1; i >= 0; --i) {
            if (!region.contains(static_cast<std::size_t>(i))) last = i;
            if (!std::isinf(last)) nearest[i] = std::min(nearest[i], last - i);
        }
        for (std::size_t i = 0; i < cells; ++i)
            dist[i] = std::isinf(nearest[i]) ? kInf : excess(nearest[i]) * h;
        return dist;
    }

    // per-row nearest complement column distance (in cells)
    std::vector<double> rowdist(cells, kInf);
    for (int r = 0; r < N; ++r) {
        double last = kInf;
        for (int c = 0; c < N; ++c) {
            const std::size_t i = grid.index(c, r);
            if (!region.contains(i)) last = c;
            rowdist[i] = std::isinf(last) ? kInf : c - last;
        }
        last = kInf;
        for (int c = N - 1; c >= 0; --c) {
            const std::size_t i = grid.index(c, r);
            if (!region.contains(i)) last = c;
            if (!std::isinf(last)) rowdist[i] = std::min(rowdist[i], last - c);
        }
    }
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            double best = kInf;
            for (int rp = 0; rp < N; ++rp) {
                const double a = rowdist[grid.index(c, rp)];
                if (std::isinf(a)) continue;
                const double dx = excess(a);
                const double dy = excess(std::abs(rp - r));
                best = std::min(best, dx * dx + dy * dy);
            }
            dist[grid.index(c, r)] = std::isinf(best) ? kInf : std::sqrt(best) * h;
        }
    }
    return dist;
}

struct DyadicLevel {
    int side_cells = 1;              // 2^level
    int per_axis = 0;                // cubes per axis
    std::vector<std::uint8_t> inside;
    std::vector<double> mindist;
    std::vector<std::uint8_t> eligible;
};

Cube cube_from_cells(const Grid& grid, int level_side, int ax, int ay) {
    const double h = grid.spacing();
    const double side = level_side * h;
    Point c{grid.lo()[0] + (ax + 0.5) * side, 0.0};
    if (grid.dim() == 2) c[1] = grid.lo()[1] + (ay + 0.5) * side;
    return Cube{c, side};
}

}  // namespace

double cube_measure(const Cube& cube, int dim) {
    return dim == 1 ? cube.side : cube.side * cube.side;
}

bool cube_contains(const Cube& cube, int dim, const Point& p) {
    for (int a = 0; a < dim; ++a) {
        if (std::abs(p[a] - cube.center[a]) > cube.side / 2.0) return false;
    }
    return true;
}

WhitneyCover whitney_decompose(const RegionMask& region) {
    const double rn = sqrt_n(region.grid().dim());
    return whitney_decompose(region, rn, 4.0 * rn);
}

WhitneyCover whitney_decompose(const RegionMask& region, double dist_lo, double dist_hi,
                               const WhitneyOptions& options) {
    const Grid& grid = region.grid();
    const int dim = grid.dim();
    if (region.is_empty()) throw std::invalid_argument("whitney: region is empty");
    if (region.is_full())
        throw std::invalid_argument("whitney: region equals the whole grid (empty complement)");
    if (!is_power_of_two(grid.cells_per_axis()))
        throw std::invalid_argument("whitney: cells_per_axis must be a power of two");
    if (options.diam_convention) {
        dist_lo *= sqrt_n(dim);
        dist_hi *= sqrt_n(dim);
    }
    if (!(dist_lo > 0.0) || !(dist_hi >= 4.0 * dist_lo))
        throw std::invalid_argument("whitney: constants must satisfy 0 < lo and hi >= 4 lo");

    const int N = grid.cells_per_axis();
    const std::vector<double> dist = cell_to_complement_distance(region);

    // dyadic tree, bottom-up: a cube is eligible when it lies inside the
    // region and its distance to the complement is at least dist_lo times
    // its side; eligibility is downward-closed along chains
    int max_level = 0;
    while ((1 << (max_level + 1)) <= N) ++max_level;
    std::vector<DyadicLevel> tree(max_level + 1);
    for (int lv = 0; lv <= max_level; ++lv) {
        auto& L = tree[lv];
        L.side_cells = 1 << lv;
        L.per_axis = N >> lv;
        const std::size_t count = dim == 1 ? static_cast<std::size_t>(L.per_axis)
                                           : static_cast<std::size_t>(L.per_axis) * L.per_axis;
        L.inside.assign(count, 0);
        L.mindist.assign(count, kInf);
        L.eligible.assign(count, 0);
    }
    auto node = [&](const DyadicLevel& L, int ax, int ay) {
        return dim == 1 ? static_cast<std::size_t>(ax)
                        : static_cast<std::size_t>(ay) * L.per_axis + ax;
    };
    {
        auto& L0 = tree[0];
        for (std::size_t i = 0; i < grid.cell_count(); ++i) {
            L0.inside[i] = region.contains(i);
            L0.mindist[i] = dist[i];
        }
    }
    for (int lv = 1; lv <= max_level; ++lv) {
        auto& L = tree[lv];
        const auto& C = tree[lv - 1];
        for (int ay = 0; ay < (dim == 2 ? L.per_axis : 1); ++ay) {
            for (int ax = 0; ax < L.per_axis; ++ax) {
                bool in = true;
                double md = kInf;
                for (int cy = 0; cy < (dim == 2 ? 2 : 1); ++cy) {
                    for (int cx = 0; cx < 2; ++cx) {
                        const std::size_t ci = node(C, 2 * ax + cx, 2 * ay + cy);
                        in = in && C.inside[ci];
                        md = std::min(md, C.mindist[ci]);
                    }
                }
                const std::size_t i = node(L, ax, ay);
                L.inside[i] = in;
                L.mindist[i] = md;
            }
        }
    }
    const double h = grid.spacing();
    for (int lv = 0; lv <= max_level; ++lv) {
        auto& L = tree[lv];
        const double side = L.side_cells * h;
        for (std::size_t i = 0; i < L.inside.size(); ++i) {
            L.eligible[i] =
                L.inside[i] && L.mindist[i] >= dist_lo * side * (1.0 - 1e-12) ? 1 : 0;
        }
    }

    WhitneyCover cover{{}, {}, region, dist_lo, dist_hi};
    std::vector<std::uint8_t> covered(grid.cell_count(), 0);

    // maximal eligible cubes: eligible with an ineligible parent (the full
    // box is never eligible because the complement is nonempty)
    for (int lv = max_level; lv >= 0; --lv) {
        const auto& L = tree[lv];
        for (int ay = 0; ay < (dim == 2 ? L.per_axis : 1); ++ay) {
            for (int ax = 0; ax < L.per_axis; ++ax) {
                const std::size_t i = node(L, ax, ay);
                if (!L.eligible[i]) continue;
                if (lv < max_level) {
                    const auto& P = tree[lv + 1];
                    if (P.eligible[node(P, ax / 2, ay / 2)]) continue;
                }
                cover.cubes.push_back(cube_from_cells(grid, L.side_cells, ax, ay));
                cover.is_filler.push_back(0);
                for (int cy = 0; cy < (dim == 2 ? L.side_cells : 1); ++cy) {
                    for (int cx = 0; cx < L.side_cells; ++cx) {
                        covered[grid.index(ax * L.side_cells + cx,
                                           dim == 2 ? ay * L.side_cells + cy : 0)] = 1;
                    }
                }
            }
        }
    }

    // residual boundary layer: member cells too close to the complement for
    // any dyadic cube; cover them with flagged single-cell cubes so the
    // union is exact
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (region.contains(i) && !covered[i]) {
            const int ix = static_cast<int>(i % static_cast<std::size_t>(N));
            const int iy = static_cast<int>(i / static_cast<std::size_t>(N));
            cover.cubes.push_back(cube_from_cells(grid, 1, ix, dim == 2 ? iy : 0));
            cover.is_filler.push_back(1);
        }
    }
    return cover;
}

double cube_dist_to_complement(const Cube& cube, const RegionMask& region) {
    const Grid& grid = region.grid();
    const int dim = grid.dim();
    if (region.is_full())
        throw std::invalid_argument("cube_dist_to_complement: complement is empty");
    double best = kInf;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (region.contains(i)) continue;
        const Point w = grid.center(i);
        double d2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double e = std::max(0.0, std::abs(w[a] - cube.center[a]) - cube.side / 2.0);
            d2 += e * e;
        }
        best = std::min(best, d2);
    }
    return std::sqrt(best);
}

namespace {

bool interiors_overlap(const Cube& a, const Cube& b, int dim, double eps) {
    for (int ax = 0; ax < dim; ++ax) {
        const double gap = std::abs(a.center[ax] - b.center[ax]) - (a.side + b.side) / 2.0;
        if (gap >= -eps) return false;
    }
    return true;
}

bool boundaries_touch(const Cube& a, const Cube& b, int dim, double eps) {
    // closures intersect but interiors do not
    bool close = true;
    for (int ax = 0; ax < dim; ++ax) {
        const double gap = std::abs(a.center[ax] - b.center[ax]) - (a.side + b.side) / 2.0;
        if (gap > eps) close = false;
    }
    return close && !interiors_overlap(a, b, dim, eps);
}

// Cell index window [x0,x1) x [y0,y1) when the cube is aligned to cell
// boundaries, so its distance to the complement equals the min of the
// per-cell distances.
struct CellWindow {
    int x0, x1, y0, y1;
};

std::optional<CellWindow> aligned_cell_window(const Cube& q, const Grid& grid) {
    const double h = grid.spacing();
    CellWindow w{0, 0, 0, 0};
    for (int a = 0; a < grid.dim(); ++a) {
        const double lo = (q.center[a] - q.side / 2.0 - grid.lo()[a]) / h;
        const double hi = (q.center[a] + q.side / 2.0 - grid.lo()[a]) / h;
        const double rlo = std::round(lo);
        const double rhi = std::round(hi);
        if (std::abs(lo - rlo) > 1e-6 || std::abs(hi - rhi) > 1e-6) return std::nullopt;
        const int ilo = static_cast<int>(rlo);
        const int ihi = static_cast<int>(rhi);
        if (ilo < 0 || ihi > grid.cells_per_axis() || ihi <= ilo) return std::nullopt;
        if (a == 0) {
            w.x0 = ilo;
            w.x1 = ihi;
        } else {
            w.y0 = ilo;
            w.y1 = ihi;
        }
    }
    if (grid.dim() == 1) {
        w.y0 = 0;
        w.y1 = 1;
    }
    return w;
}

}  // namespace

WhitneyReport verify_whitney(const WhitneyCover& cover) {
    const Grid& grid = cover.source.grid();
    const int dim = grid.dim();
    const double h = grid.spacing();
    const double eps = 1e-9 * h;
    WhitneyReport rep;
    rep.spacing = h;
    const std::size_t M = cover.cubes.size();
    for (auto f : cover.is_filler) rep.filler_count += (f != 0);

    // 1. pairwise disjoint interiors (all cubes, fillers included)
    rep.disjoint_ok = true;
    for (std::size_t i = 0; i < M && rep.violations.size() <= 64; ++i) {
        for (std::size_t j = i + 1; j < M && rep.violations.size() <= 64; ++j) {
            if (interiors_overlap(cover.cubes[i], cover.cubes[j], dim, eps)) {
                rep.disjoint_ok = false;
                rep.violations.push_back({"disjoint_interiors", i, j, 0.0});
            }
        }
    }

    const std::vector<double> dist = cover.source.is_full()
                                         ? std::vector<double>(grid.cell_count(), kInf)
                                         : cell_to_complement_distance(cover.source);

    // 2. coverage: union of cubes = region, up to one boundary-cell layer
    {
        const RegionMask painted = rasterize_union(cover.cubes, grid);
        const double layer = h * (dim == 1 ? 0.5 : 0.7072) * 1.001;
        rep.coverage_ok = true;
        for (std::size_t i = 0; i < grid.cell_count(); ++i) {
            if (cover.source.contains(i) && !painted.contains(i)) {
                ++rep.uncovered_cells;
                if (dist[i] > layer) {
                    rep.coverage_ok = false;
                    rep.violations.push_back({"coverage", i, 0, dist[i]});
                }
            }
            if (!cover.source.contains(i) && painted.contains(i)) {
                rep.coverage_ok = false;
                rep.violations.push_back({"coverage_overshoot", i, 0, 0.0});
            }
        }
    }

    // 3. distance bracket on proper cubes, tolerance h
    rep.dist_bracket_ok = true;
    for (std::size_t i = 0; i < M; ++i) {
        if (cover.is_filler[i]) continue;
        double d;
        if (const auto w = aligned_cell_window(cover.cubes[i], grid)) {
            d = kInf;
            for (int iy = w->y0; iy < w->y1; ++iy) {
                for (int ix = w->x0; ix < w->x1; ++ix) {
                    d = std::min(d, dist[grid.index(ix, dim == 2 ? iy : 0)]);
                }
            }
        } else {
            d = cube_dist_to_complement(cover.cubes[i], cover.source);
        }
        const double r = cover.cubes[i].side;
        if (d < cover.dist_lo * r - h || d > cover.dist_hi * r + h) {
            rep.dist_bracket_ok = false;
            rep.violations.push_back({"dist_bracket", i, 0, d});
        }
    }

    // 4+5. touching side ratios in [1/4, 4] and at most 12^n neighbors,
    // among proper cubes
    rep.side_ratio_ok = true;
    rep.neighbor_count_ok = true;
    {
        std::vector<int> neighbors(M, 0);
        for (std::size_t i = 0; i < M; ++i) {
            if (cover.is_filler[i]) continue;
            for (std::size_t j = i + 1; j < M; ++j) {
                if (cover.is_filler[j]) continue;
                if (!boundaries_touch(cover.cubes[i], cover.cubes[j], dim, eps)) continue;
                ++neighbors[i];
                ++neighbors[j];
                const double ratio = cover.cubes[i].side / cover.cubes[j].side;
                if (ratio < 0.25 - 1e-12 || ratio > 4.0 + 1e-12) {
                    rep.side_ratio_ok = false;
                    rep.violations.push_back({"side_ratio", i, j, ratio});
                }
            }
        }
        const int limit = dim == 1 ? 12 : 144;
        for (std::size_t i = 0; i < M; ++i) {
            rep.max_neighbors = std::max(rep.max_neighbors, neighbors[i]);
            if (neighbors[i] > limit) {
                rep.neighbor_count_ok = false;
                rep.violations.push_back({"neighbor_count", i, 0,
                                          static_cast<double>(neighbors[i])});
            }
        }
    }
    return rep;
}

RegionMask rasterize_union(const std::vector<Cube>& cubes, const Grid& grid) {
    const int dim = grid.dim();
    const int N = grid.cells_per_axis();
    const double h = grid.spacing();
    std::vector<std::uint8_t> m(grid.cell_count(), 0);
    for (const Cube& q : cubes) {
        // cell index window covering the cube, then exact center-in-cube test
        int a0[2] = {0, 0};
        int a1[2] = {0, 0};
        for (int a = 0; a < dim; ++a) {
            const double lo = q.center[a] - q.side / 2.0 - grid.lo()[a];
            const double hi = q.center[a] + q.side / 2.0 - grid.lo()[a];
            a0[a] = std::max(0, static_cast<int>(std::floor(lo / h - 0.5)));
            a1[a] = std::min(N - 1, static_cast<int>(std::ceil(hi / h + 0.5)));
        }
        if (dim == 1) {
            for (int ix = a0[0]; ix <= a1[0]; ++ix) {
                if (cube_contains(q, dim, grid.center(grid.index(ix)))) m[grid.index(ix)] = 1;
            }
        } else {
            for (int iy = a0[1]; iy <= a1[1]; ++iy) {
                for (int ix = a0[0]; ix <= a1[0]; ++ix) {
                    const std::size_t i = grid.index(ix, iy);
                    if (cube_contains(q, dim, grid.center(i))) m[i] = 1;
                }
            }
        }
    }
    return RegionMask(grid, std::move(m));
}

DoublingCheck doubling_union_check(const std::vector<Cube>& cubes, double a, const Grid& grid) {
    if (!(a > 1.0)) throw std::invalid_argument("doubling check: a must exceed 1");
    if (cubes.empty()) throw std::invalid_argument("doubling check: cube list is empty");
    const int dim = grid.dim();
    for (const Cube& q : cubes) {
        for (int ax = 0; ax < dim; ++ax) {
            if (q.center[ax] - a * q.side / 2.0 < grid.lo()[ax] - 1e-9 ||
                q.center[ax] + a * q.side / 2.0 > grid.hi()[ax] + 1e-9)
                throw std::invalid_argument(
                    "doubling check: dilated cube does not fit in the grid");
        }
    }
    std::vector<Cube> dilated = cubes;
    for (Cube& q : dilated) q.side *= a;

    DoublingCheck out;
    out.lhs = rasterize_union(dilated, grid).measure();
    out.rhs = std::pow(a, dim) * rasterize_union(cubes, grid).measure();
    double perimeter = 0.0;
    for (const Cube& q : dilated) perimeter += dim == 1 ? 2.0 : 4.0 * q.side;
    if (out.rhs > 0.0) {
        out.slack = 4.0 * grid.spacing() * perimeter / out.rhs;
        out.ok = out.lhs <= out.rhs * (1.0 + out.slack);
    } else {
        out.slack = 0.0;
        out.ok = out.lhs == 0.0;
    }
    return out;
}

}  // namespace lp
