#include "lp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lp {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Grid::Grid(int dim, Point lo, Point hi, int cells_per_axis)
    : dim_(dim), lo_(lo), hi_(hi), cells_(cells_per_axis) {
    require(dim == 1 || dim == 2, "grid: dim must be 1 or 2");
    require(cells_per_axis >= 2, "grid: cells_per_axis must be >= 2");
    for (int a = 0; a < dim; ++a) {
        require(std::isfinite(lo[a]) && std::isfinite(hi[a]), "grid: bounds must be finite");
        require(hi[a] > lo[a], "grid: hi must exceed lo on every axis");
    }
    if (dim == 2) {
        const double lx = hi[0] - lo[0];
        const double ly = hi[1] - lo[1];
        require(std::abs(lx - ly) <= 1e-12 * std::max(lx, ly),
                "grid: box must be square (equal extent on all axes)");
    }
    h_ = (hi[0] - lo[0]) / static_cast<double>(cells_);
}

std::size_t Grid::cell_count() const {
    const auto n = static_cast<std::size_t>(cells_);
    return dim_ == 1 ? n : n * n;
}

double Grid::cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

double Grid::diameter() const {
    const double L = hi_[0] - lo_[0];
    return dim_ == 1 ? L : L * std::sqrt(2.0);
}

Point Grid::center(std::size_t index) const {
    if (dim_ == 1) {
        return {lo_[0] + (static_cast<double>(index) + 0.5) * h_, 0.0};
    }
    const auto n = static_cast<std::size_t>(cells_);
    const auto ix = static_cast<double>(index % n);
    const auto iy = static_cast<double>(index / n);
    return {lo_[0] + (ix + 0.5) * h_, lo_[1] + (iy + 0.5) * h_};
}

std::size_t Grid::index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(cells_) +
           static_cast<std::size_t>(ix);
}

bool Grid::operator==(const Grid& other) const {
    return dim_ == other.dim_ && cells_ == other.cells_ && lo_ == other.lo_ && hi_ == other.hi_;
}

Grid make_grid(int dim, const std::vector<double>& lo, const std::vector<double>& hi,
               int cells_per_axis) {
    require(lo.size() == static_cast<std::size_t>(dim) &&
                hi.size() == static_cast<std::size_t>(dim),
            "make_grid: lo/hi length must equal dim");
    Point plo{0.0, 0.0};
    Point phi{0.0, 0.0};
    for (std::size_t a = 0; a < lo.size(); ++a) {
        plo[a] = lo[a];
        phi[a] = hi[a];
    }
    return Grid(dim, plo, phi, cells_per_axis);
}

SampledField::SampledField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    require(values_.size() == grid_.cell_count(), "field: values length must equal cell count");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("field: all values must be finite");
    }
}

SampledField SampledField::sample(const Grid& grid, const std::function<double(Point)>& fn) {
    std::vector<double> v(grid.cell_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.center(i));
    return SampledField(grid, std::move(v));
}

SampledField SampledField::sample_unit_mass(const Grid& grid,
                                            const std::function<double(Point)>& fn) {
    SampledField raw = sample(grid, fn);
    const double m = norm(raw, Norm::L1);
    require(m > 0.0, "sample_unit_mass: function has zero L1 mass on this grid");
    std::vector<double> v(raw.values().begin(), raw.values().end());
    for (double& x : v) x /= m;
    return SampledField(grid, std::move(v));
}

SampledField SampledField::zeros(const Grid& grid) {
    return SampledField(grid, std::vector<double>(grid.cell_count(), 0.0));
}

RegionMask::RegionMask(Grid grid, std::vector<std::uint8_t> member)
    : grid_(grid), member_(std::move(member)) {
    require(member_.size() == grid_.cell_count(), "mask: member length must equal cell count");
}

RegionMask RegionMask::from_predicate(const Grid& grid, const std::function<bool(Point)>& fn) {
    std::vector<std::uint8_t> m(grid.cell_count());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = fn(grid.center(i)) ? 1 : 0;
    return RegionMask(grid, std::move(m));
}

RegionMask RegionMask::empty(const Grid& grid) {
    return RegionMask(grid, std::vector<std::uint8_t>(grid.cell_count(), 0));
}

std::size_t RegionMask::count() const {
    std::size_t c = 0;
    for (auto m : member_) c += (m != 0);
    return c;
}

double RegionMask::measure() const {
    return static_cast<double>(count()) * grid_.cell_volume();
}

RegionMask RegionMask::complement() const {
    std::vector<std::uint8_t> m(member_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = member_[i] ? 0 : 1;
    return RegionMask(grid_, std::move(m));
}

RegionMask RegionMask::unite(const RegionMask& other) const {
    require(grid_ == other.grid_, "mask: union requires a shared grid");
    std::vector<std::uint8_t> m(member_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = (member_[i] || other.member_[i]) ? 1 : 0;
    return RegionMask(grid_, std::move(m));
}

double integrate(const SampledField& field) {
    const double s = std::accumulate(field.values().begin(), field.values().end(), 0.0);
    return s * field.grid().cell_volume();
}

double norm(const SampledField& field, Norm p) {
    switch (p) {
        case Norm::L1: {
            double s = 0.0;
            for (double v : field.values()) s += std::abs(v);
            return s * field.grid().cell_volume();
        }
        case Norm::L2: {
            double s = 0.0;
            for (double v : field.values()) s += v * v;
            return std::sqrt(s * field.grid().cell_volume());
        }
        case Norm::Linf: {
            double s = 0.0;
            for (double v : field.values()) s = std::max(s, std::abs(v));
            return s;
        }
    }
    throw std::invalid_argument("norm: p must be one of {1, 2, inf}");
}

double superlevel_measure(const SampledField& field, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("superlevel_measure: rho must be positive");
    std::size_t c = 0;
    for (double v : field.values()) c += (std::abs(v) > rho);
    return static_cast<double>(c) * field.grid().cell_volume();
}

RegionMask superlevel_mask(const SampledField& field, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("superlevel_mask: rho must be positive");
    std::vector<std::uint8_t> m(field.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = field.value(i) > rho ? 1 : 0;
    return RegionMask(field.grid(), std::move(m));
}

SampledField lin_comb(double a, const SampledField& f, double b, const SampledField& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("lin_comb: fields must share a grid");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f.value(i) + b * g.value(i);
    return SampledField(f.grid(), std::move(v));
}

}  // namespace lp
