#include "lp/verify.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lp {

namespace {

double pow_int(double x, int n) { return n == 1 ? x : x * x; }

}  // namespace

double series_bound_rhs(double r, double dist, int n, double delta, int K) {
    double s = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double tk = std::exp2(k) * r;
        s += std::exp2(-0.5 * k * n) * std::pow(tk + dist, -n) *
             std::pow(tk / (tk + dist), delta);
    }
    return s;
}

SeriesBoundResult check_series_bound(double r, double dist, int n, double delta, int K) {
    if (!(r > 0.0)) throw std::invalid_argument("series bound: r must be positive");
    if (!(dist >= 0.0)) throw std::invalid_argument("series bound: dist must be nonnegative");
    if (n != 1 && n != 2) throw std::invalid_argument("series bound: n must be 1 or 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("series bound: delta must lie in (0,1)");
    if (n == 1 && delta >= 0.5)
        throw std::invalid_argument("series bound: delta must be < 1/2 when n = 1");
    if (K < 8) throw std::invalid_argument("series bound: K must be >= 8");

    const double rn = std::pow(r, n);
    auto integrand = [&](double t) {
        const double a = std::pow(t + dist, -n) * std::pow(t / (t + dist), delta);
        return rn * a * a / std::pow(t, n + 1);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(integrand, r,
                                              std::numeric_limits<double>::infinity(),
                                              1e-11, &error, &l1);
    SeriesBoundResult out;
    out.r = r;
    out.dist = dist;
    out.lhs = std::sqrt(value);
    out.rhs = series_bound_rhs(r, dist, n, delta, K);
    out.ratio = out.lhs / out.rhs;
    out.quad_error = error;
    return out;
}

RemarkJResult check_remark_j(double delta, double dist, double bound_delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("remark J: delta must lie in (0,1)");
    if (!(dist > 0.0)) throw std::invalid_argument("remark J: dist must be positive");
    auto integrand = [&](double t) { return std::pow(t / (t + dist), 2.0 * delta) / t; };
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double value = integrator.integrate(integrand, 0.0, dist, 1e-10, &error, &l1, &levels);
    RemarkJResult out;
    out.j = std::sqrt(value);
    const double bd = bound_delta > 0.0 ? bound_delta : delta;
    out.bound = 1.0 / std::sqrt(2.0 * bd);
    out.quad_error = error;
    out.ok = out.j <= out.bound && error <= 1e-4;
    return out;
}

namespace {

// nearest-member distance in cells, center to center; infinity when the
// target set is empty
std::vector<double> nearest_cell_distance(const RegionMask& target) {
    const Grid& grid = target.grid();
    const int N = grid.cells_per_axis();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t cells = grid.cell_count();
    std::vector<double> out(cells, kInf);

    if (grid.dim() == 1) {
        double last = kInf;
        for (int i = 0; i < N; ++i) {
            if (target.contains(static_cast<std::size_t>(i))) last = i;
            out[i] = std::isinf(last) ? kInf : i - last;
        }
        last = kInf;
        for (int i = N - 1; i >= 0; --i) {
            if (target.contains(static_cast<std::size_t>(i))) last = i;
            if (!std::isinf(last)) out[i] = std::min(out[i], last - i);
        }
        return out;
    }

    std::vector<double> rowdist(cells, kInf);
    for (int r = 0; r < N; ++r) {
        double last = kInf;
        for (int c = 0; c < N; ++c) {
            const std::size_t i = grid.index(c, r);
            if (target.contains(i)) last = c;
            rowdist[i] = std::isinf(last) ? kInf : c - last;
        }
        last = kInf;
        for (int c = N - 1; c >= 0; --c) {
            const std::size_t i = grid.index(c, r);
            if (target.contains(i)) last = c;
            if (!std::isinf(last)) rowdist[i] = std::min(rowdist[i], last - c);
        }
    }
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            double best = kInf;
            for (int rp = 0; rp < N; ++rp) {
                const double a = rowdist[grid.index(c, rp)];
                if (std::isinf(a)) continue;
                const double dy = std::abs(rp - r);
                best = std::min(best, a * a + dy * dy);
            }
            out[grid.index(c, r)] = std::isinf(best) ? kInf : std::sqrt(best);
        }
    }
    return out;
}

// lattice ball geometry at radius t (in length units) on a grid with
// spacing h: row half-widths and the full-lattice cell count
struct BallGeometry {
    int k = 0;                   // max |offset| per axis
    std::vector<int> halfwidth;  // per |dy| for n = 2
    double full_count = 0.0;
};

BallGeometry ball_geometry(double t, double h, int dim) {
    BallGeometry g;
    const double s = t / h;
    g.k = std::max(0, static_cast<int>(std::ceil(s)) - 1);
    if (dim == 1) {
        g.full_count = 2.0 * g.k + 1.0;
        return g;
    }
    g.halfwidth.resize(g.k + 1, -1);
    g.full_count = 0.0;
    for (int dy = 0; dy <= g.k; ++dy) {
        const double rem = s * s - static_cast<double>(dy) * dy;
        if (rem <= 0.0) break;
        const int w = static_cast<int>(std::ceil(std::sqrt(rem))) - 1;
        if (w < 0) break;
        g.halfwidth[dy] = w;
        g.full_count += (dy == 0 ? 1.0 : 2.0) * (2.0 * w + 1.0);
    }
    return g;
}

// counts mask cells inside the lattice ball B(center, t); prefix is the
// per-row prefix-sum table of the mask
double ball_mask_count(const Grid& grid, const std::vector<double>& prefix,
                       const BallGeometry& g, int ix, int iy) {
    const int N = grid.cells_per_axis();
    auto rowsum = [&](int r, int lo, int hi) {
        if (r < 0 || r >= N) return 0.0;
        lo = std::max(lo, 0);
        hi = std::min(hi, N - 1);
        if (lo > hi) return 0.0;
        const double* p = prefix.data() + static_cast<std::size_t>(r) * (N + 1);
        return p[hi + 1] - p[lo];
    };
    if (grid.dim() == 1) {
        return rowsum(0, ix - g.k, ix + g.k);
    }
    double s = 0.0;
    for (int dy = 0; dy <= g.k; ++dy) {
        if (dy >= static_cast<int>(g.halfwidth.size()) || g.halfwidth[dy] < 0) break;
        const int w = g.halfwidth[dy];
        s += rowsum(iy + dy, ix - w, ix + w);
        if (dy > 0) s += rowsum(iy - dy, ix - w, ix + w);
    }
    return s;
}

std::vector<double> row_prefix(const RegionMask& mask) {
    const Grid& grid = mask.grid();
    const int N = grid.cells_per_axis();
    const int rows = grid.dim() == 1 ? 1 : N;
    std::vector<double> prefix(static_cast<std::size_t>(rows) * (N + 1), 0.0);
    for (int r = 0; r < rows; ++r) {
        double* p = prefix.data() + static_cast<std::size_t>(r) * (N + 1);
        for (int c = 0; c < N; ++c) {
            p[c + 1] = p[c] + (mask.contains(grid.index(c, grid.dim() == 2 ? r : 0)) ? 1.0 : 0.0);
        }
    }
    return prefix;
}

}  // namespace

LemmaOReport check_lemma_o(const RegionMask& region, double alpha, const TLadder& ladder,
                           const LemmaOOptions& options) {
    const Grid& grid = region.grid();
    const int n = grid.dim();
    const double h = grid.spacing();
    if (!(alpha >= 1.0)) throw std::invalid_argument("lemma O: alpha must be >= 1");
    if (region.is_empty()) throw std::invalid_argument("lemma O: region is empty");
    if (region.is_full()) throw std::invalid_argument("lemma O: complement is empty");

    const double threshold = options.threshold_override > 0.0
                                 ? options.threshold_override
                                 : 1.0 / (2.0 * pow_int(alpha, n));
    const SampledField m = maximal_function(region);
    std::vector<std::uint8_t> um(grid.cell_count());
    for (std::size_t i = 0; i < um.size(); ++i) um[i] = m.value(i) > threshold ? 1 : 0;
    const RegionMask u_set(grid, std::move(um));

    LemmaOReport rep;
    rep.u_measure = u_set.measure();
    if (u_set.is_full()) {
        rep.degenerate = true;
        return rep;
    }

    const std::vector<double> dist_uc = nearest_cell_distance(u_set.complement());
    const std::vector<double> dist_oc = nearest_cell_distance(region.complement());
    const std::vector<double> prefix_o = row_prefix(region);
    const std::vector<double> prefix_u = row_prefix(u_set);

    const int N = grid.cells_per_axis();
    const std::size_t total = grid.cell_count() * ladder.size();
    const std::size_t stride = std::max<std::size_t>(1, total / options.max_samples);

    // per-level geometry for B(., t) and B(., alpha t)
    std::vector<BallGeometry> geo_t(ladder.size()), geo_at(ladder.size());
    std::vector<double> ring_t(ladder.size()), ring_at(ladder.size());
    for (std::size_t j = 0; j < ladder.size(); ++j) {
        const double t = ladder.value(j);
        geo_t[j] = ball_geometry(t, h, n);
        geo_at[j] = ball_geometry(alpha * t, h, n);
        const double inner_t = std::max(0.0, t - h * std::sqrt(static_cast<double>(n)));
        const double inner_at = std::max(0.0, alpha * t - h * std::sqrt(static_cast<double>(n)));
        ring_t[j] = geo_t[j].full_count -
                    (inner_t > 0.0 ? ball_geometry(inner_t, h, n).full_count : 0.0);
        ring_at[j] = geo_at[j].full_count -
                     (inner_at > 0.0 ? ball_geometry(inner_at, h, n).full_count : 0.0);
    }

    const double an = pow_int(alpha, n);
    for (std::size_t p = 0; p < total; p += stride) {
        const std::size_t j = p / grid.cell_count();
        const std::size_t cell = p % grid.cell_count();
        const double t = ladder.value(j);
        // (y,t) lies in the cone over U^c iff some non-U cell is within alpha t
        if (!(dist_uc[cell] * h < alpha * t)) continue;
        ++rep.samples;
        const int ix = static_cast<int>(cell % static_cast<std::size_t>(N));
        const int iy = n == 2 ? static_cast<int>(cell / static_cast<std::size_t>(N)) : 0;

        const double in_o = ball_mask_count(grid, prefix_o, geo_t[j], ix, iy);
        const double full = geo_t[j].full_count;
        if (2.0 * in_o > full + ring_t[j] + 2.0) {
            rep.i_ok = false;
            if (rep.witnesses.size() < 16)
                rep.witnesses.push_back({cell, j, "i", 2.0 * in_o, full + ring_t[j] + 2.0});
        }
        if (!(dist_oc[cell] * h < t + h * std::sqrt(static_cast<double>(n)))) {
            rep.ii_ok = false;
            if (rep.witnesses.size() < 16)
                rep.witnesses.push_back({cell, j, "ii", dist_oc[cell] * h, t});
        }
        const double in_u = ball_mask_count(grid, prefix_u, geo_at[j], ix, iy);
        const double lhs = geo_at[j].full_count - in_u;  // off-box cells are off U
        const double rhs = 2.0 * an * (full - in_o);
        const double tol = ring_at[j] + 2.0 * an * ring_t[j] + 4.0;
        if (lhs > rhs + tol) {
            rep.iii_ok = false;
            if (rep.witnesses.size() < 16)
                rep.witnesses.push_back({cell, j, "iii", lhs, rhs + tol});
        }
    }
    return rep;
}

ConeEnergyResult check_cone_energy(const SampledField& f, double threshold, double alpha,
                                   const KernelSpec& kernel, const TLadder& ladder,
                                   const ConeEnergyOptions& options) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("cone energy: alpha must be >= 1");
    if (!(threshold > 0.0)) throw std::invalid_argument("cone energy: threshold must be > 0");
    const Grid& grid = f.grid();
    const int n = grid.dim();

    const UpperHalfField up = psi_transform(kernel, f, ladder);
    const SampledField s1 = square_function(up, ConeSpec(1.0));
    const SampledField sa = square_function(up, ConeSpec(alpha));

    const RegionMask o_set = superlevel_mask(s1, threshold);
    RegionMask u_set = o_set;
    if (!options.u_equals_o) {
        const SampledField m = maximal_function(o_set);
        const double tau = 1.0 / (2.0 * pow_int(alpha, n));
        std::vector<std::uint8_t> um(grid.cell_count());
        for (std::size_t i = 0; i < um.size(); ++i) um[i] = m.value(i) > tau ? 1 : 0;
        u_set = RegionMask(grid, std::move(um));
    }
    if (u_set.is_full())
        throw std::runtime_error("cone energy: U swallowed the whole box (degenerate)");

    const double hn = grid.cell_volume();
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (!u_set.contains(i)) lhs += sa.value(i) * sa.value(i);
        if (!o_set.contains(i)) rhs += s1.value(i) * s1.value(i);
    }
    ConeEnergyResult out;
    out.lhs = lhs * hn;
    out.rhs = rhs * hn;
    out.factor = 2.0 * pow_int(alpha, n);
    out.ratio = out.rhs > 0.0 ? out.lhs / (out.factor * out.rhs)
                              : (out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    out.ok = out.lhs <= out.factor * out.rhs * (1.0 + options.slack) ||
             (out.lhs == 0.0 && out.rhs == 0.0);
    return out;
}

WeakTypeReport check_weak_type(const std::function<SampledField(const SampledField&)>& apply,
                               const std::vector<SampledField>& family,
                               const std::vector<double>& rho_ladder) {
    WeakTypeReport rep;
    for (const SampledField& f : family) {
        const SampledField out = apply(f);
        const double l1 = norm(f, Norm::L1);
        WeakTypeReport::PerInput per;
        if (l1 > 0.0) {
            for (double rho : rho_ladder) {
                const double ratio = rho * superlevel_measure(out, rho) / l1;
                if (ratio > per.worst_ratio) {
                    per.worst_ratio = ratio;
                    per.worst_rho = rho;
                }
            }
        }
        rep.worst_ratio = std::max(rep.worst_ratio, per.worst_ratio);
        rep.per_input.push_back(per);
    }
    return rep;
}

WeakTypeReport check_weak_type(WeakTypeOperator op, double lambda,
                               const std::vector<SampledField>& family,
                               const std::vector<double>& rho_ladder,
                               const KernelSpec& kernel, const TLadder& ladder) {
    if (op == WeakTypeOperator::GStar && !(lambda > 2.0))
        throw std::invalid_argument("weak type: g* requires lambda > 2");
    auto apply = [&](const SampledField& f) {
        const UpperHalfField up = psi_transform(kernel, f, ladder);
        return op == WeakTypeOperator::S1 ? square_function(up, ConeSpec(1.0))
                                          : g_star(up, lambda);
    };
    return check_weak_type(apply, family, rho_ladder);
}

ContainmentReport check_ok_uk_containment(const SampledField& f, double xi, int k_max,
                                          const KernelSpec& kernel, const TLadder& ladder,
                                          const ContainmentOptions& options) {
    if (!(xi > 0.0)) throw std::invalid_argument("containment: xi must be positive");
    if (k_max < 1) throw std::invalid_argument("containment: k_max must be >= 1");
    const Grid& grid = f.grid();
    const int n = grid.dim();

    const SampledField s1 =
        square_function(psi_transform(kernel, f, ladder), ConeSpec(1.0));

    ContainmentReport rep;
    RegionMask u_set = RegionMask::empty(grid);
    if (options.mode == UMode::IndicatorMaximal) {
        const RegionMask o_set = superlevel_mask(s1, xi);
        const double tau = options.threshold_scale / (2.0 * std::exp2(n));
        if (o_set.is_empty()) {
            u_set = RegionMask::empty(grid);
        } else {
            const SampledField m = maximal_function(o_set);
            std::vector<std::uint8_t> um(grid.cell_count());
            for (std::size_t i = 0; i < um.size(); ++i) um[i] = m.value(i) > tau ? 1 : 0;
            u_set = RegionMask(grid, std::move(um));
        }
        rep.note = "U built from M chi_O with the aperture-2 threshold 1/(2*2^n); the "
                   "xi/2 average form is available as the S1Average mode";
    } else {
        const SampledField m = maximal_function(s1);
        const double tau = options.threshold_scale * xi / 2.0;
        std::vector<std::uint8_t> um(grid.cell_count());
        for (std::size_t i = 0; i < um.size(); ++i) um[i] = m.value(i) > tau ? 1 : 0;
        u_set = RegionMask(grid, std::move(um));
        rep.note = "U = {M(S_1 f) > xi/2}, the set the containment argument averages "
                   "against; the indicator form is available as the IndicatorMaximal mode";
    }

    RegionMask prev_o = RegionMask::empty(grid);
    for (int k = 0; k <= k_max; ++k) {
        const double level = std::exp2(static_cast<double>(k) * n) * xi;
        const RegionMask o_k = superlevel_mask(s1, level);
        if (k > 0) {
            // O_{k-1} must contain O_k
            for (std::size_t i = 0; i < grid.cell_count(); ++i) {
                if (o_k.contains(i) && !prev_o.contains(i)) {
                    rep.chain_monotone = false;
                    break;
                }
            }
        }
        ContainmentReport::PerK per;
        per.k = k;
        per.o_measure = o_k.measure();
        if (!o_k.is_empty()) {
            const SampledField mk = maximal_function(o_k);
            const double tau_k = 1.0 / std::exp2(static_cast<double>(k) * n + 1.0);
            for (std::size_t i = 0; i < grid.cell_count(); ++i) {
                if (mk.value(i) > tau_k) {
                    per.u_measure += 1.0;
                    if (!u_set.contains(i)) ++per.violations;
                }
            }
            per.u_measure *= grid.cell_volume();
        }
        if (per.violations > 0) rep.contained_all = false;
        rep.per_k.push_back(per);
        prev_o = o_k;
    }
    return rep;
}

ApertureReport check_aperture_reduction(const SampledField& f, const std::vector<double>& alphas,
                                        const KernelSpec& kernel, const TLadder& ladder,
                                        const std::vector<double>& rho_ladder,
                                        const ApertureOptions& options) {
    if (alphas.empty()) throw std::invalid_argument("aperture: alpha list is empty");
    for (double a : alphas) {
        if (!(a >= 1.0)) throw std::invalid_argument("aperture: every alpha must be >= 1");
    }
    const int n = f.grid().dim();
    const double exponent = options.exponent < 0.0 ? static_cast<double>(n) : options.exponent;
    const double l1 = norm(f, Norm::L1);
    const UpperHalfField up = psi_transform(kernel, f, ladder);

    ApertureReport rep;
    for (double a : alphas) {
        const SampledField sa = square_function(up, ConeSpec(a));
        ApertureReport::PerAlpha per;
        per.alpha = a;
        for (double rho : rho_ladder) {
            per.ratio = std::max(per.ratio, rho * superlevel_measure(sa, rho) / l1);
        }
        per.normalized = per.ratio / std::pow(a, exponent);
        rep.per_alpha.push_back(per);
    }
    const auto smallest =
        std::min_element(rep.per_alpha.begin(), rep.per_alpha.end(),
                         [](const auto& x, const auto& y) { return x.alpha < y.alpha; });
    rep.baseline = smallest->normalized;
    rep.ok = true;
    for (const auto& per : rep.per_alpha) {
        if (per.normalized > rep.baseline * (1.0 + options.slack)) rep.ok = false;
    }
    return rep;
}

}  // namespace lp
