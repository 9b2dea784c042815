#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lp/grid.hpp"

namespace lp {

/// Axis-aligned cube Q(c, r): center c, side length r, so the faces sit at
/// c +- r/2 per axis. Q(c, a r) is the same center with side a r.
struct Cube {
    Point center{0.0, 0.0};
    double side = 0.0;
};

/// Returns the geometric measure r^n of a cube.
double cube_measure(const Cube& cube, int dim);

/// True when the cell center lies in the closed cube.
bool cube_contains(const Cube& cube, int dim, const Point& p);

/// Whitney family over an open cell set. `is_filler` flags the single-cell
/// cubes used to cover the residual boundary layer where no dyadic cube can
/// satisfy the distance bracket; the proposition invariants are stated for
/// the proper (non-filler) cubes.
struct WhitneyCover {
    std::vector<Cube> cubes;
    std::vector<std::uint8_t> is_filler;
    RegionMask source;
    double dist_lo = 0.0;  // constants in force, side-length convention
    double dist_hi = 0.0;
};

struct WhitneyOptions {
    /// When set, dist_lo/dist_hi multiply diam(Q) = sqrt(n) r instead of r.
    bool diam_convention = false;
};

/// Classic proposition constants sqrt(n) r <= dist <= 4 sqrt(n) r.
WhitneyCover whitney_decompose(const RegionMask& region);

/// Grid-anchored dyadic Whitney decomposition: selects the maximal dyadic
/// cubes inside the region whose distance to the complement is at least
/// dist_lo times the side. Requires dist_hi >= 4 dist_lo and a power-of-two
/// cells_per_axis (the dyadic tree must close up to the full box).
WhitneyCover whitney_decompose(const RegionMask& region, double dist_lo, double dist_hi,
                               const WhitneyOptions& options = {});

/// Exact distance from the cube (as a set) to the nearest complement cell
/// center; 0 if a complement center lies inside. Errors on empty complement.
double cube_dist_to_complement(const Cube& cube, const RegionMask& region);

struct WhitneyViolation {
    std::string invariant;
    std::size_t cube_a = 0;
    std::size_t cube_b = 0;
    double measured = 0.0;
};

struct WhitneyReport {
    bool disjoint_ok = false;
    bool coverage_ok = false;
    bool dist_bracket_ok = false;
    bool side_ratio_ok = false;
    bool neighbor_count_ok = false;
    std::size_t uncovered_cells = 0;
    std::size_t filler_count = 0;
    int max_neighbors = 0;
    double spacing = 0.0;
    std::vector<WhitneyViolation> violations;

    bool all_ok() const {
        return disjoint_ok && coverage_ok && dist_bracket_ok && side_ratio_ok &&
               neighbor_count_ok;
    }
};

/// Checks the five proposition invariants; violations are report entries
/// with witnesses, never errors. The distance bracket is checked with
/// tolerance h (distances are resolved at cell resolution).
WhitneyReport verify_whitney(const WhitneyCover& cover);

struct DoublingCheck {
    double lhs = 0.0;    // measure of the dilated union
    double rhs = 0.0;    // a^n times the measure of the original union
    double slack = 0.0;  // rasterization allowance
    bool ok = false;
};

/// Rasterizes union Q(x_j, r_j) and union Q(x_j, a r_j) on the grid and
/// checks |dilated| <= a^n |original| up to rasterization slack
/// (Lebesgue doubling with constant a^n).
DoublingCheck doubling_union_check(const std::vector<Cube>& cubes, double a, const Grid& grid);

/// Cells whose center lies in some cube of the list.
RegionMask rasterize_union(const std::vector<Cube>& cubes, const Grid& grid);

}  // namespace lp
