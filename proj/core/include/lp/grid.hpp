#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lp {

/// A point in R^n, n <= 2. Only the first `dim` coordinates are meaningful.
using Point = std::array<double, 2>;

inline Point point1(double x) { return {x, 0.0}; }
inline Point point2(double x, double y) { return {x, y}; }

/// Uniform grid over an axis-aligned box in R^n (n = 1 or 2) with equal
/// spacing on every axis. Cell centers sit at lo + (k + 1/2) h per axis.
/// Cells are indexed row-major with x fastest: index = iy * cells + ix.
class Grid {
public:
    Grid(int dim, Point lo, Point hi, int cells_per_axis);

    int dim() const { return dim_; }
    Point lo() const { return lo_; }
    Point hi() const { return hi_; }
    int cells_per_axis() const { return cells_; }
    double spacing() const { return h_; }
    std::size_t cell_count() const;

    /// h^n, the Lebesgue measure of one cell.
    double cell_volume() const;

    /// Euclidean diagonal of the box, used as the default top of the t-ladder.
    double diameter() const;

    Point center(std::size_t index) const;
    std::size_t index(int ix, int iy = 0) const;

    bool operator==(const Grid& other) const;

private:
    int dim_;
    Point lo_;
    Point hi_;
    int cells_;
    double h_;
};

Grid make_grid(int dim, const std::vector<double>& lo, const std::vector<double>& hi,
               int cells_per_axis);

/// Real values sampled at the cell centers of a Grid. Immutable after
/// construction; all values are required to be finite.
class SampledField {
public:
    SampledField(Grid grid, std::vector<double> values);

    static SampledField sample(const Grid& grid, const std::function<double(Point)>& fn);
    /// Sample and scale so that the L1 norm is exactly 1 on this grid.
    static SampledField sample_unit_mass(const Grid& grid,
                                         const std::function<double(Point)>& fn);
    static SampledField zeros(const Grid& grid);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Boolean cell set over a Grid, measured by cell counting.
class RegionMask {
public:
    RegionMask(Grid grid, std::vector<std::uint8_t> member);

    static RegionMask from_predicate(const Grid& grid, const std::function<bool(Point)>& fn);
    static RegionMask empty(const Grid& grid);

    const Grid& grid() const { return grid_; }
    std::span<const std::uint8_t> member() const { return member_; }
    bool contains(std::size_t i) const { return member_[i] != 0; }

    std::size_t count() const;
    double measure() const;
    bool is_empty() const { return count() == 0; }
    bool is_full() const { return count() == grid_.cell_count(); }

    RegionMask complement() const;
    RegionMask unite(const RegionMask& other) const;

private:
    Grid grid_;
    std::vector<std::uint8_t> member_;
};

enum class Norm { L1, L2, Linf };

double integrate(const SampledField& field);
double norm(const SampledField& field, Norm p);

/// Measure of {x : |f(x)| > rho}; rho must be positive.
double superlevel_measure(const SampledField& field, double rho);

/// Mask of {x : f(x) > rho} (no absolute value, strict inequality).
RegionMask superlevel_mask(const SampledField& field, double rho);

/// a*f + b*g on a shared grid.
SampledField lin_comb(double a, const SampledField& f, double b, const SampledField& g);

}  // namespace lp
