#include "lp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "fft_conv.hpp"

namespace lp {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw std::runtime_error(std::string(what) + ": non-finite value");
    }
}

}  // namespace

TLadder::TLadder(double t_min, double t_max, int levels_per_octave)
    : t_min_(t_min), t_max_(t_max), m_(levels_per_octave) {
    if (!(t_min > 0.0)) throw std::invalid_argument("t-ladder: t_min must be positive");
    if (!(t_max > t_min)) throw std::invalid_argument("t-ladder: t_max must exceed t_min");
    if (levels_per_octave < 1)
        throw std::invalid_argument("t-ladder: levels_per_octave must be >= 1");
    for (int j = 0;; ++j) {
        const double t = t_min * std::exp2(static_cast<double>(j) / m_);
        if (t > t_max * (1.0 + 1e-12)) break;
        values_.push_back(t);
    }
}

TLadder TLadder::for_grid(const Grid& grid, int levels_per_octave) {
    return TLadder(grid.spacing(), grid.diameter(), levels_per_octave);
}

double TLadder::weight(std::size_t j) const { return values_[j] * kLn2 / m_; }

UpperHalfField::UpperHalfField(Grid grid, TLadder ladder, std::vector<double> values)
    : grid_(grid), ladder_(std::move(ladder)), values_(std::move(values)) {
    if (values_.size() != grid_.cell_count() * ladder_.size())
        throw std::invalid_argument("upper-half field: size must be cells x levels");
    check_finite(values_, "upper-half field");
}

ConeSpec::ConeSpec(double a) : alpha(a) {
    if (!(a >= 1.0)) throw std::invalid_argument("cone: alpha must be >= 1");
}

UpperHalfField psi_transform(const KernelSpec& spec, const SampledField& f,
                             const TLadder& ladder) {
    const Grid& grid = f.grid();
    if (spec.dim != grid.dim())
        throw std::invalid_argument("psi_transform: kernel and field dimension mismatch");

    const std::size_t cells = grid.cell_count();
    const double h = grid.spacing();
    const double hn = grid.cell_volume();
    const int n = grid.dim();
    std::vector<double> values(cells * ladder.size());

    if (spec.is_convolution()) {
        detail::ConvolutionEngine engine(grid);
        engine.load(f.values());
        for (std::size_t j = 0; j < ladder.size(); ++j) {
            const double t = ladder.value(j);
            const double scale = hn / std::pow(t, n);
            auto out = std::span<double>(values).subspan(j * cells, cells);
            engine.apply(
                [&](const std::array<int, 2>& k) {
                    return spec.profile({k[0] * h / t, k[1] * h / t});
                },
                out);
            for (double& v : out) v *= scale;
        }
    } else {
        for (std::size_t j = 0; j < ladder.size(); ++j) {
            const double t = ladder.value(j);
            const double scale = hn / std::pow(t, n);
            for (std::size_t iy = 0; iy < cells; ++iy) {
                const Point y = grid.center(iy);
                const Point ys{y[0] / t, y[1] / t};
                double acc = 0.0;
                for (std::size_t iz = 0; iz < cells; ++iz) {
                    const Point z = grid.center(iz);
                    acc += spec.evaluate(ys, {z[0] / t, z[1] / t}) * f.value(iz);
                }
                values[j * cells + iy] = acc * scale;
            }
        }
    }
    check_finite(values, "psi_transform");
    return UpperHalfField(grid, ladder, std::move(values));
}

namespace {

// Accumulate sum_j conv(lag_j, |U_j|^2) * h^n w_j / t_j^{n+1} and take sqrt.
SampledField cone_aggregate(
    const UpperHalfField& field,
    const std::function<double(const std::array<int, 2>&, double)>& lag_at_level) {
    const Grid& grid = field.grid();
    const TLadder& ladder = field.ladder();
    const std::size_t cells = grid.cell_count();
    const int n = grid.dim();
    const double hn = grid.cell_volume();

    detail::ConvolutionEngine engine(grid);
    std::vector<double> acc(cells, 0.0);
    std::vector<double> q(cells);
    std::vector<double> conv(cells);
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        const double t = ladder.value(j);
        auto level = field.level(j);
        for (std::size_t i = 0; i < cells; ++i) q[i] = level[i] * level[i];
        engine.load(q);
        engine.apply([&](const std::array<int, 2>& k) { return lag_at_level(k, t); }, conv);
        const double factor = hn * ladder.weight(j) / std::pow(t, n + 1);
        for (std::size_t i = 0; i < cells; ++i) acc[i] += conv[i] * factor;
    }
    // FFT roundoff can leave tiny negatives where the true sum is zero
    for (std::size_t i = 0; i < cells; ++i) acc[i] = std::sqrt(std::max(acc[i], 0.0));
    return SampledField(grid, std::move(acc));
}

}  // namespace

SampledField square_function(const UpperHalfField& field, ConeSpec cone) {
    const double h = field.grid().spacing();
    const int n = field.grid().dim();
    return cone_aggregate(field, [&](const std::array<int, 2>& k, double t) {
        const double d2 = n == 1 ? static_cast<double>(k[0]) * k[0]
                                 : static_cast<double>(k[0]) * k[0] +
                                       static_cast<double>(k[1]) * k[1];
        const double r = cone.alpha * t / h;
        return d2 < r * r ? 1.0 : 0.0;
    });
}

SampledField g_star(const UpperHalfField& field, double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("g_star: lambda must exceed 1");
    const double h = field.grid().spacing();
    const int n = field.grid().dim();
    return cone_aggregate(field, [&](const std::array<int, 2>& k, double t) {
        const double d = n == 1 ? std::abs(k[0]) * h
                                : std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1])) * h;
        return std::pow(t / (t + d), n * lambda);
    });
}

namespace {

// sliding max over windows [i-k, i+k] via a monotone deque, O(N)
void sliding_max(std::span<const double> in, int k, std::span<double> out) {
    const int n = static_cast<int>(in.size());
    std::deque<int> dq;
    int right = -1;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + k);
        while (right < hi) {
            ++right;
            while (!dq.empty() && in[dq.back()] <= in[right]) dq.pop_back();
            dq.push_back(right);
        }
        while (dq.front() < i - k) dq.pop_front();
        out[i] = in[dq.front()];
    }
}

SampledField maximal_1d(const Grid& grid, std::span<const double> absf) {
    const int N = grid.cells_per_axis();
    std::vector<double> prefix(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 0; i < N; ++i) prefix[i + 1] = prefix[i] + absf[i];
    std::vector<double> result(N, 0.0);
    std::vector<double> avg(N);
    std::vector<double> filt(N);
    for (int k = 0; k < N; ++k) {
        const double count = 2.0 * k + 1.0;  // full-lattice window, f zero outside the box
        for (int i = 0; i < N; ++i) {
            const int a = std::max(0, i - k);
            const int b = std::min(N, i + k + 1);
            avg[i] = (prefix[b] - prefix[a]) / count;
        }
        sliding_max(avg, k, filt);
        for (int i = 0; i < N; ++i) result[i] = std::max(result[i], filt[i]);
    }
    return SampledField(grid, std::move(result));
}

SampledField maximal_2d(const Grid& grid, std::span<const double> absf) {
    const int N = grid.cells_per_axis();
    // per-row prefix sums
    std::vector<double> prefix(static_cast<std::size_t>(N) * (N + 1), 0.0);
    for (int r = 0; r < N; ++r) {
        double* p = prefix.data() + static_cast<std::size_t>(r) * (N + 1);
        const double* row = absf.data() + static_cast<std::size_t>(r) * N;
        for (int i = 0; i < N; ++i) p[i + 1] = p[i] + row[i];
    }
    auto rowsum = [&](int r, int lo, int hi) {  // columns [lo, hi] clamped
        if (r < 0 || r >= N) return 0.0;
        lo = std::max(lo, 0);
        hi = std::min(hi, N - 1);
        if (lo > hi) return 0.0;
        const double* p = prefix.data() + static_cast<std::size_t>(r) * (N + 1);
        return p[hi + 1] - p[lo];
    };

    std::vector<double> result(static_cast<std::size_t>(N) * N, 0.0);
    std::vector<double> avg(static_cast<std::size_t>(N) * N);
    std::vector<double> rowmax(static_cast<std::size_t>(N) * N);
    std::vector<double> filt(N);

    for (int k = 0; k < N; ++k) {
        // lattice ball of radius (k+1/2)h: offsets with dx^2+dy^2 <= k(k+1)
        const long rad2 = static_cast<long>(k) * (k + 1);
        std::vector<int> halfwidth(k + 1);
        double count = 0.0;
        for (int dy = 0; dy <= k; ++dy) {
            const long rem = rad2 - static_cast<long>(dy) * dy;
            halfwidth[dy] = static_cast<int>(std::floor(std::sqrt(static_cast<double>(rem))));
            count += (dy == 0 ? 1.0 : 2.0) * (2.0 * halfwidth[dy] + 1.0);
        }

        for (int iy = 0; iy < N; ++iy) {
            for (int ix = 0; ix < N; ++ix) {
                double s = rowsum(iy, ix - halfwidth[0], ix + halfwidth[0]);
                for (int dy = 1; dy <= k; ++dy) {
                    const int w = halfwidth[dy];
                    s += rowsum(iy - dy, ix - w, ix + w);
                    s += rowsum(iy + dy, ix - w, ix + w);
                }
                avg[static_cast<std::size_t>(iy) * N + ix] = s / count;
            }
        }
        // disk max filter, decomposed into row max filters of varying width
        for (int dy = 0; dy <= k; ++dy) {
            const int w = halfwidth[dy];
            for (int r = 0; r < N; ++r) {
                auto row = std::span<const double>(avg).subspan(static_cast<std::size_t>(r) * N,
                                                                static_cast<std::size_t>(N));
                sliding_max(row, w, filt);
                std::copy(filt.begin(), filt.end(),
                          rowmax.begin() + static_cast<std::size_t>(r) * N);
            }
            for (int r = 0; r < N; ++r) {
                double* res = result.data() + static_cast<std::size_t>(r) * N;
                for (int src : {r - dy, r + dy}) {
                    if (src < 0 || src >= N) continue;
                    const double* rm = rowmax.data() + static_cast<std::size_t>(src) * N;
                    for (int i = 0; i < N; ++i) res[i] = std::max(res[i], rm[i]);
                    if (dy == 0) break;
                }
            }
        }
    }
    return SampledField(grid, std::move(result));
}

}  // namespace

SampledField maximal_function(const SampledField& f) {
    std::vector<double> absf(f.size());
    for (std::size_t i = 0; i < absf.size(); ++i) absf[i] = std::abs(f.value(i));
    return f.grid().dim() == 1 ? maximal_1d(f.grid(), absf) : maximal_2d(f.grid(), absf);
}

SampledField maximal_function(const RegionMask& mask) {
    std::vector<double> ind(mask.grid().cell_count());
    for (std::size_t i = 0; i < ind.size(); ++i) ind[i] = mask.contains(i) ? 1.0 : 0.0;
    return mask.grid().dim() == 1 ? maximal_1d(mask.grid(), ind) : maximal_2d(mask.grid(), ind);
}

SampledField s_alpha_series_majorant(const UpperHalfField& field, double lambda, int K) {
    if (!(lambda > 1.0))
        throw std::invalid_argument("series majorant: lambda must exceed 1");
    if (K < 0) throw std::invalid_argument("series majorant: K must be >= 0");
    const int n = field.grid().dim();
    std::vector<double> acc(field.grid().cell_count(), 0.0);
    for (int k = 0; k <= K; ++k) {
        const SampledField s = square_function(field, ConeSpec(std::exp2(k)));
        const double coef = std::exp2(-0.5 * k * lambda * n);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coef * s.value(i);
    }
    return SampledField(field.grid(), std::move(acc));
}

}  // namespace lp
