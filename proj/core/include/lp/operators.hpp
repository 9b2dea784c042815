#pragma once

#include <vector>

#include "lp/grid.hpp"
#include "lp/kernel.hpp"

namespace lp {

/// Geometric discretization of the scale variable t in (0, infinity):
/// t_j = t_min 2^{j/m} up to t_max, with the log-midpoint weight
/// w_j = t_j ln2 / m standing in for dt.
class TLadder {
public:
    TLadder(double t_min, double t_max, int levels_per_octave);

    /// t_min = h (below grid resolution psi_t f is unresolvable),
    /// t_max = box diameter.
    static TLadder for_grid(const Grid& grid, int levels_per_octave);

    std::span<const double> values() const { return values_; }
    double value(std::size_t j) const { return values_[j]; }
    double weight(std::size_t j) const;
    std::size_t size() const { return values_.size(); }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    int levels_per_octave() const { return m_; }

private:
    double t_min_;
    double t_max_;
    int m_;
    std::vector<double> values_;
};

/// Values of psi_t f(y) on Grid x TLadder, stored level-major.
class UpperHalfField {
public:
    UpperHalfField(Grid grid, TLadder ladder, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const TLadder& ladder() const { return ladder_; }
    double at(std::size_t level, std::size_t cell) const {
        return values_[level * grid_.cell_count() + cell];
    }
    std::span<const double> level(std::size_t j) const {
        return std::span<const double>(values_).subspan(j * grid_.cell_count(),
                                                        grid_.cell_count());
    }
    std::span<const double> values() const { return values_; }

private:
    Grid grid_;
    TLadder ladder_;
    std::vector<double> values_;
};

/// Cone aperture; alpha >= 1.
struct ConeSpec {
    explicit ConeSpec(double a);
    double alpha;
};

/// psi_t f(y) = t^{-n} sum_z psi(y/t, z/t) f(z) h^n for every (cell, level).
/// Convolution-form kernels run through the FFT engine; generic kernels fall
/// back to direct summation. Both routes compute the same sums.
UpperHalfField psi_transform(const KernelSpec& spec, const SampledField& f,
                             const TLadder& ladder);

/// S_alpha f(x) = sqrt( sum_j sum_{|x-y| < alpha t_j} |psi_{t_j} f(y)|^2
///                      h^n w_j / t_j^{n+1} ).
/// Cone membership is strict at cell centers.
SampledField square_function(const UpperHalfField& field, ConeSpec cone);

/// g*_lambda f(x) = sqrt( sum_j sum_y (t_j/(t_j+|x-y|))^{n lambda}
///                        |psi_{t_j} f(y)|^2 h^n w_j / t_j^{n+1} ), lambda > 1.
SampledField g_star(const UpperHalfField& field, double lambda);

/// Uncentered Hardy-Littlewood maximal function: at each x the sup over all
/// lattice balls containing x of the mean of |f| over the ball. The sup runs
/// over every distinct cell-window (radii (k+1/2)h for all k), so for n = 1
/// it is the exact discrete maximal function; ball measure is cell counting
/// on the infinite lattice with f extended by zero.
SampledField maximal_function(const SampledField& f);
SampledField maximal_function(const RegionMask& mask);

/// Partial sum sum_{k=0}^{K} 2^{-k lambda n / 2} S_{2^k} f, the series
/// majorant that dominates g*_lambda pointwise up to a constant.
SampledField s_alpha_series_majorant(const UpperHalfField& field, double lambda, int K);

}  // namespace lp
