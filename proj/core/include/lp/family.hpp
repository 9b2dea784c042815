#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lp/grid.hpp"

namespace lp {

/// A test input defined analytically so it can be resampled exactly on a
/// refined or enlarged grid.
struct TestFunction {
    std::string label;
    std::function<double(Point)> fn;
};

/// Nonnegative compactly supported family: spikes, indicators, bump
/// mixtures. Supports sit in the middle fifth of [0,1]-normalized box
/// coordinates so cones of aperture up to 4 stay inside a padded box.
/// Deterministic in (dim, count, seed).
std::vector<TestFunction> default_family(int dim, int count, std::uint64_t seed);

/// Sample every family member on the grid, scaled to unit L1 mass.
std::vector<SampledField> sample_family(const std::vector<TestFunction>& family,
                                        const Grid& grid);

/// Geometric rho ladder with `count` levels spanning [lo, hi].
std::vector<double> geometric_ladder(double lo, double hi, int count);

/// Default box for the given dimension: f lives near [0.3, 0.8], the box
/// [-2, 3] pads it so wide cones are not clipped.
Grid default_grid(int dim, int cells_per_axis);

}  // namespace lp
