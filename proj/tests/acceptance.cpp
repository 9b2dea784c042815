// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit code is the number of failed criteria (0 = all green).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "lp/family.hpp"
#include "lp/kernel.hpp"
#include "lp/ntv.hpp"
#include "lp/operators.hpp"
#include "lp/randomsets.hpp"
#include "lp/verify.hpp"
#include "lp/whitney.hpp"

using namespace lp;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count() /
               1000.0;
    }
};

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("[%2d] %-22s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// 1. Whitney geometry on random open sets, both dimensions, under 30 s.
void criterion_whitney() {
    Timer timer;
    int passed = 0;
    int total = 0;
    std::mt19937_64 rng(20240801);
    {
        const Grid g = make_grid(1, {0.0}, {1.0}, 4096);
        for (int trial = 0; trial < 100; ++trial) {
            const RegionMask region = random_interval_union(g, 8, rng);
            const WhitneyCover cover = whitney_decompose(region);
            ++total;
            if (verify_whitney(cover).all_ok() &&
                rasterize_union(cover.cubes, g).count() == region.count())
                ++passed;
        }
    }
    {
        const Grid g = make_grid(2, {0.0, 0.0}, {1.0, 1.0}, 128);
        for (int trial = 0; trial < 100; ++trial) {
            const RegionMask region = random_rect_union(g, 6, rng);
            const WhitneyCover cover = whitney_decompose(region);
            ++total;
            if (verify_whitney(cover).all_ok() &&
                rasterize_union(cover.cubes, g).count() == region.count())
                ++passed;
        }
    }
    const double secs = timer.seconds();
    report(1, "whitney-geometry", passed == total && secs < 30.0,
           fmt("%d/%d covers pass all five invariants, %.1f s (budget 30 s)", passed, total,
               secs));
}

// 2. Lebesgue doubling of cube unions, 200 random families, a in {2,3}.
void criterion_doubling() {
    std::mt19937_64 rng(20240802);
    const Grid g1 = make_grid(1, {-4.0}, {4.0}, 4096);
    const Grid g2 = make_grid(2, {-4.0, -4.0}, {4.0, 4.0}, 256);
    int violations = 0;
    int checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto f1 = random_cube_family(g1, 50, 3.0, rng);
        const auto f2 = random_cube_family(g2, 50, 3.0, rng);
        for (double a : {2.0, 3.0}) {
            ++checks;
            if (!doubling_union_check(f1, a, g1).ok) ++violations;
            ++checks;
            if (!doubling_union_check(f2, a, g2).ok) ++violations;
        }
    }
    report(2, "doubling-union", violations == 0,
           fmt("%d checks (200 families x a in {2,3}), %d violations", checks, violations));
}

// 3. Series bound: single bounding constant over a 10x10 grid of (r, dist)
// spanning 4 decades, ratio spread < 20%, scale invariance to 1e-3.
void criterion_series() {
    bool scale_ok = true;
    bool finite = true;
    double worst_spread = 0.0;
    double sup_constant = 0.0;
    for (auto [n, delta] : {std::pair{1, 0.4}, std::pair{2, 0.75}}) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double r = std::pow(10.0, -2.0 + 4.0 * i / 9.0);
                const double d = std::pow(10.0, -2.0 + 4.0 * j / 9.0);
                const auto res = check_series_bound(r, d, n, delta);
                finite = finite && std::isfinite(res.ratio);
                lo = std::min(lo, res.ratio);
                hi = std::max(hi, res.ratio);
            }
        }
        worst_spread = std::max(worst_spread, hi / lo - 1.0);
        sup_constant = std::max(sup_constant, hi);
        for (double s : {2.0, 10.0}) {
            const auto a = check_series_bound(0.7, 3.1, n, delta);
            const auto b = check_series_bound(s * 0.7, s * 3.1, n, delta);
            scale_ok = scale_ok && std::abs(a.ratio - b.ratio) < 1e-3;
        }
    }
    const bool spread_ok = worst_spread < 0.20;
    report(3, "series-bound", finite && scale_ok && spread_ok,
           fmt("sup constant %.3f (bounded), scale-invariance %s at 1e-3, ratio spread %.0f%% "
               "(required < 20%%)",
               sup_constant, scale_ok ? "ok" : "violated", 100.0 * worst_spread));
}

// 4. Remark J against 1/sqrt(2 delta) over a delta x dist grid.
void criterion_remark_j() {
    bool ok = true;
    double worst_err = 0.0;
    for (double delta : {0.1, 0.25, 0.4, 0.75, 0.9}) {
        for (double dist : {0.1, 1.0, 10.0}) {
            const auto r = check_remark_j(delta, dist);
            ok = ok && r.j <= r.bound && r.quad_error < 1e-4;
            worst_err = std::max(worst_err, r.quad_error);
        }
    }
    report(4, "remark-j", ok, fmt("15 (delta, dist) pairs, worst quadrature error %.1e", worst_err));
}

// 5. Mean-zero tail: 20 inputs, refinement 2x within 25%, box doubling
// within 10%.
void criterion_tail() {
    const KernelSpec kernel = default_kernel(1);
    const Grid g = make_grid(1, {-32.0}, {32.0}, 2048);
    const Grid gr = make_grid(1, {-32.0}, {32.0}, 4096);
    const Grid gb = make_grid(1, {-64.0}, {64.0}, 4096);
    const TLadder lg = TLadder::for_grid(g, 6);
    const TLadder lgr = TLadder::for_grid(gr, 6);
    const TLadder lgb = TLadder::for_grid(gb, 6);

    std::vector<std::function<double(Point)>> inputs;
    for (int v = 0; v < 10; ++v) {
        const double s = 0.08 + 0.03 * v;
        const double off = 0.1 + 0.025 * v;
        inputs.push_back([s, off](Point p) {
            if (std::abs(p[0]) > 0.5) return 0.0;
            return std::exp(-(p[0] - off) * (p[0] - off) / (s * s)) -
                   std::exp(-(p[0] + off) * (p[0] + off) / (s * s));
        });
    }
    for (int v = 0; v < 10; ++v) {
        // bump minus its average over the cube: mean-zero, single-signed core
        const double s = 0.06 + 0.04 * v;
        inputs.push_back([s](Point p) {
            if (std::abs(p[0]) > 0.5) return 0.0;
            const double bump = std::exp(-p[0] * p[0] / (s * s));
            const double avg = s * std::sqrt(std::numbers::pi);  // integral over R / |Q|
            return bump - avg;
        });
    }

    int ok_count = 0;
    double worst_refine = 0.0;
    double worst_box = 0.0;
    for (const auto& fn : inputs) {
        // sample, then correct the residual mean so the discrete integral
        // vanishes exactly on every grid
        auto make = [&](const Grid& gg) {
            SampledField raw = SampledField::sample(gg, fn);
            const double mean = integrate(raw);
            std::vector<double> vals(raw.values().begin(), raw.values().end());
            const Cube support{{0.0, 0.0}, 1.0};
            std::size_t inside = 0;
            for (std::size_t i = 0; i < gg.cell_count(); ++i)
                inside += cube_contains(support, 1, gg.center(i));
            const double corr = mean / (static_cast<double>(inside) * gg.cell_volume());
            for (std::size_t i = 0; i < gg.cell_count(); ++i)
                if (cube_contains(support, 1, gg.center(i))) vals[i] -= corr;
            return SampledField(gg, std::move(vals));
        };
        const auto r0 = mean_zero_tail_check(kernel, point1(0.0), 1.0, make(g), lg);
        const auto r1 = mean_zero_tail_check(kernel, point1(0.0), 1.0, make(gr), lgr);
        const auto r2 = mean_zero_tail_check(kernel, point1(0.0), 1.0, make(gb), lgb);
        const double refine_change = std::abs(r1.ratio - r0.ratio) / r0.ratio;
        const double box_change = std::abs(r2.tail_l1 - r0.tail_l1) / r0.tail_l1;
        worst_refine = std::max(worst_refine, refine_change);
        worst_box = std::max(worst_box, box_change);
        if (std::isfinite(r0.ratio) && refine_change < 0.25 && box_change < 0.10) ++ok_count;
    }
    report(5, "mean-zero-tail", ok_count == 20,
           fmt("%d/20 inputs; worst refine drift %.1f%% (<25%%), worst box-doubling %.1f%% "
               "(<10%%)",
               ok_count, 100.0 * worst_refine, 100.0 * worst_box));
}

// 6. The maximal-function lemma on 100 random open sets plus the closed form.
void criterion_lemma_o() {
    std::mt19937_64 rng(20240806);
    const Grid g = make_grid(1, {0.0}, {1.0}, 2048);
    const TLadder ladder = TLadder::for_grid(g, 4);
    RandomSetOptions small;
    small.max_piece_frac = 0.01;
    int pass = 0;
    int total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const RegionMask region = random_interval_union(g, 8, rng, small);
        for (double alpha : {1.0, 2.0}) {
            ++total;
            if (check_lemma_o(region, alpha, ladder).all_ok()) ++pass;
        }
    }
    // closed form: O = (0,1), alpha = 1 gives U = (-1, 2)
    const Grid gi = make_grid(1, {-4.0}, {5.0}, 4096);
    const RegionMask region =
        RegionMask::from_predicate(gi, [](Point p) { return p[0] > 0.0 && p[0] < 1.0; });
    const auto rep = check_lemma_o(region, 1.0, TLadder::for_grid(gi, 4));
    const bool closed_form =
        rep.all_ok() && std::abs(rep.u_measure - 3.0) <= 2.0 * gi.spacing();
    report(6, "lemma-maximal", pass == total && closed_form,
           fmt("%d/%d random sets pass (i)-(iii); closed-form |U| = %.4f vs 3 within 2h%s",
               pass, total, rep.u_measure, closed_form ? "" : " (violated)"));
}

// 7. Cone energy: S_alpha^2 off U vs 2 alpha^n S_1^2 off O, 5% slack.
void criterion_cone_energy() {
    bool ok = true;
    double worst = 0.0;
    for (int dim : {1, 2}) {
        const KernelSpec kernel = default_kernel(dim);
        const Grid g = default_grid(dim, dim == 1 ? 2048 : 64);
        const TLadder ladder = TLadder::for_grid(g, dim == 1 ? 8 : 4);
        const auto fields = sample_family(default_family(dim, dim == 1 ? 6 : 3, 7), g);
        for (const auto& f : fields) {
            const UpperHalfField u = psi_transform(kernel, f, ladder);
            const SampledField s1 = square_function(u, ConeSpec(1.0));
            for (double alpha : {1.0, 2.0, 4.0}) {
                const double theta = (alpha > 2.0 ? 0.7 : 0.5) * norm(s1, Norm::Linf);
                const auto r = check_cone_energy(f, theta, alpha, kernel, ladder);
                ok = ok && r.ok;
                worst = std::max(worst, r.ratio);
            }
        }
    }
    report(7, "cone-energy", ok,
           fmt("both dims, alpha in {1,2,4}; worst lhs/(2 alpha^n rhs) = %.3f (allowed 1.05)",
               worst));
}

// 8. Aperture L2 scaling at 2048 cells, 8 levels/octave.
void criterion_aperture_l2() {
    const KernelSpec kernel = default_kernel(1);
    const Grid g = default_grid(1, 2048);
    const TLadder ladder = TLadder::for_grid(g, 8);
    const auto f = sample_family(default_family(1, 8, 5), g)[7];
    const UpperHalfField u = psi_transform(kernel, f, ladder);
    const double base = norm(square_function(u, ConeSpec(1.0)), Norm::L2);
    bool ok = true;
    double worst = 0.0;
    for (double alpha : {2.0, 4.0}) {
        const double measured = norm(square_function(u, ConeSpec(alpha)), Norm::L2) / base;
        const double rel = std::abs(measured - std::sqrt(alpha)) / std::sqrt(alpha);
        worst = std::max(worst, rel);
        ok = ok && rel <= 0.10;
    }
    report(8, "aperture-l2-scaling", ok,
           fmt("||S_a||/||S_1|| vs a^(1/2), worst deviation %.1f%% (allowed 10%%)",
               100.0 * worst));
}

// 9. Weak type (1,1) for S_1: 12 functions, 16 rho values, refinement-stable,
// under 60 s.
void criterion_weak_type() {
    Timer timer;
    const KernelSpec kernel = default_kernel(1);
    const auto family = default_family(1, 12, 1234);
    const auto rhos = geometric_ladder(0.05, 50.0, 16);
    const Grid base = default_grid(1, 2048);
    const Grid fine = default_grid(1, 4096);
    const auto rep = check_weak_type(WeakTypeOperator::S1, 0.0, sample_family(family, base),
                                     rhos, kernel, TLadder::for_grid(base, 8));
    const auto rep2 = check_weak_type(WeakTypeOperator::S1, 0.0, sample_family(family, fine),
                                      rhos, kernel, TLadder::for_grid(fine, 8));
    const double drift = std::abs(rep2.worst_ratio - rep.worst_ratio) / rep.worst_ratio;
    const double secs = timer.seconds();
    const bool ok = std::isfinite(rep.worst_ratio) && rep.worst_ratio > 0.0 && drift < 0.30 &&
                    secs < 60.0;
    report(9, "weak-type-s1", ok,
           fmt("sup ratio %.3f, refine drift %.1f%% (<30%%), %.1f s (budget 60 s)",
               rep.worst_ratio, 100.0 * drift, secs));
}

// 10. g* at lambda = 3: series domination with one constant (+-20%),
// weak type refinement-stable (+-30%), U_k containment for k <= 4.
void criterion_gstar() {
    const double lambda = 3.0;
    const KernelSpec kernel = default_kernel(1);
    const Grid base = default_grid(1, 2048);
    const TLadder ladder = TLadder::for_grid(base, 8);
    const auto family = default_family(1, 6, 1234);
    const auto fields = sample_family(family, base);

    std::vector<double> constants;
    for (const auto& f : fields) {
        const UpperHalfField u = psi_transform(kernel, f, ladder);
        const SampledField gs = g_star(u, lambda);
        const SampledField maj = s_alpha_series_majorant(u, lambda, 8);
        const double floor = 1e-8 * norm(maj, Norm::Linf);
        double c = 0.0;
        for (std::size_t i = 0; i < base.cell_count(); ++i) {
            if (maj.value(i) > floor) c = std::max(c, gs.value(i) / maj.value(i));
        }
        constants.push_back(c);
    }
    std::vector<double> sorted = constants;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    bool domination = true;
    for (double c : constants) {
        if (std::abs(c - median) > 0.20 * median) domination = false;
    }

    const auto rhos = geometric_ladder(0.05, 50.0, 16);
    const auto wt = check_weak_type(WeakTypeOperator::GStar, lambda, fields, rhos, kernel, ladder);
    const Grid fine = default_grid(1, 4096);
    const auto wt2 = check_weak_type(WeakTypeOperator::GStar, lambda, sample_family(family, fine),
                                     rhos, kernel, TLadder::for_grid(fine, 8));
    const double drift = std::abs(wt2.worst_ratio - wt.worst_ratio) / wt.worst_ratio;

    bool contained = true;
    for (std::size_t i = 0; i < 2; ++i) {
        const UpperHalfField u = psi_transform(kernel, fields[i], ladder);
        const SampledField s1 = square_function(u, ConeSpec(1.0));
        for (double q : {0.005, 0.02, 0.08}) {
            const auto rep = check_ok_uk_containment(fields[i], q * norm(s1, Norm::Linf), 4,
                                                     kernel, ladder);
            contained = contained && rep.contained_all;
        }
    }
    const bool ok = domination && std::isfinite(wt.worst_ratio) && drift < 0.30 && contained;
    report(10, "gstar-lambda3", ok,
           fmt("domination C median %.3f (+-20%% %s), weak-type drift %.1f%%, containment %s",
               median, domination ? "ok" : "violated", 100.0 * drift,
               contained ? "ok" : "violated"));
}

// 11. Split invariants: exact reconstruction, sup bound, cube budget,
// exact cancellation integrals.
void criterion_split() {
    const Grid g = default_grid(1, 2048);
    const auto fields = sample_family(default_family(1, 12, 1234), g);
    int checked = 0;
    int good = 0;
    for (const auto& f : fields) {
        for (double q : {0.25, 0.5, 0.75}) {
            const double rho = q * norm(f, Norm::Linf);
            ++checked;
            GoodBadSplit split = good_bad_split(f, rho);
            const SampledField b = split.bad_field();
            bool ok = true;
            for (std::size_t i = 0; i < g.cell_count(); ++i) {
                if (split.good.value(i) + b.value(i) != f.value(i)) ok = false;
            }
            ok = ok && norm(split.good, Norm::Linf) <= rho;
            double cube_total = 0.0;
            for (const auto& p : split.parts) cube_total += cube_measure(p.cube, 1);
            ok = ok && cube_total <= norm(f, Norm::L1) / rho + g.cell_volume();
            const EFamily fam = build_e_family(split);
            for (const auto& e : fam.entries) {
                const double residual = e.mass - rho * cube_measure(e.cube, 1);
                if (std::abs(residual) > 1e-8 * e.mass) ok = false;
            }
            if (ok) ++good;
        }
    }
    report(11, "split-invariants", good == checked,
           fmt("%d/%d (f, rho) pairs: reconstruction exact, ||g||_inf <= rho, cube budget, "
               "cancellation to 1e-8 a_i",
               good, checked));
}

// 12. Negative controls: every checker's shipped counterexample exits 1.
void criterion_negative_controls(const std::string& cli) {
    const std::vector<std::string> fixtures = {
        "kernel-check --inject slow_decay",
        "whitney --inject overlap",
        "whitney --inject zero_dist",
        "lemmas --inject series_slow_convergence --grid-cells 512",
        "lemmas --inject remark_j_wrong_bound --grid-cells 512",
        "lemmas --inject lemma_o_bad_threshold --grid-cells 512",
        "lemmas --inject cone_energy_no_enlargement --grid-cells 512",
        "lemmas --inject tail_slow_kernel --grid-cells 512",
        "lemmas --inject doubling_subcell --grid-cells 512",
        "weak-type --inject resolution_scaled --grid-cells 512",
        "weak-type --inject aperture_wrong_exponent --grid-cells 512",
        "weak-type --inject split_corrupted --grid-cells 512",
        "gstar --inject containment_tight --grid-cells 512",
    };
    int tripped = 0;
    std::string missed;
    for (const auto& fixture : fixtures) {
        const std::string cmd =
            cli + " " + fixture + " --out /tmp/lp_acceptance_neg > /dev/null 2>&1";
        const int rc = WEXITSTATUS(std::system(cmd.c_str()));
        if (rc == 1) {
            ++tripped;
        } else if (missed.empty()) {
            missed = fixture + " (rc " + std::to_string(rc) + ")";
        }
    }
    report(12, "negative-controls", tripped == static_cast<int>(fixtures.size()),
           fmt("%d/%zu fixtures exit 1%s%s", tripped, fixtures.size(),
               missed.empty() ? "" : "; first miss: ", missed.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = "lpverify";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    }
    std::printf("acceptance suite (tolerances pinned in code)\n");
    Timer total;
    criterion_whitney();
    criterion_doubling();
    criterion_series();
    criterion_remark_j();
    criterion_tail();
    criterion_lemma_o();
    criterion_cone_energy();
    criterion_aperture_l2();
    criterion_weak_type();
    criterion_gstar();
    criterion_split();
    criterion_negative_controls(cli);
    std::printf("%d/12 criteria passed in %.1f s\n", 12 - g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
