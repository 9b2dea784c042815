#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "lp/family.hpp"
#include "lp/randomsets.hpp"
#include "lp/operators.hpp"
#include "lp/verify.hpp"

using namespace lp;

TEST_CASE("series bound: frozen values at r = 1") {
    // independent quadrature gave lhs = 1/sqrt(3), rhs = 0.5469181607 at
    // dist = 0 and lhs = 0.2745520644, rhs = 0.3519656687 at dist = 1
    const auto a = check_series_bound(1.0, 0.0, 1, 0.4);
    CHECK(a.lhs == doctest::Approx(0.5773502692).epsilon(1e-7));
    CHECK(a.rhs == doctest::Approx(0.5469181607).epsilon(1e-9));
    CHECK(a.ratio == doctest::Approx(1.0556428927).epsilon(1e-6));
    const auto b = check_series_bound(1.0, 1.0, 1, 0.4);
    CHECK(b.lhs == doctest::Approx(0.2745520644).epsilon(1e-7));
    CHECK(b.rhs == doctest::Approx(0.3519656687).epsilon(1e-9));
}

TEST_CASE("series bound: scale invariance and K stability") {
    for (double s : {2.0, 10.0}) {
        const auto base = check_series_bound(0.7, 3.1, 1, 0.4);
        const auto scaled = check_series_bound(s * 0.7, s * 3.1, 1, 0.4);
        CHECK(std::abs(base.ratio - scaled.ratio) < 1e-6);
    }
    const double k64 = series_bound_rhs(1.0, 1.0, 1, 0.4, 64);
    const double k128 = series_bound_rhs(1.0, 1.0, 1, 0.4, 128);
    CHECK(std::abs(k128 - k64) < 1e-6 * k64);

    CHECK_THROWS_AS(check_series_bound(1.0, 0.0, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(check_series_bound(-1.0, 0.0, 1, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(check_series_bound(1.0, 0.0, 1, 0.4, 4), std::invalid_argument);
    CHECK_NOTHROW(check_series_bound(1.0, 0.0, 2, 0.75));
}

TEST_CASE("remark J against the closed-form bound") {
    // frozen oracle values (independent quadrature)
    const auto r = check_remark_j(0.4, 1.0);
    CHECK(r.j == doctest::Approx(0.9800948097).epsilon(1e-6));
    CHECK(r.bound == doctest::Approx(1.1180339887).epsilon(1e-9));
    CHECK(r.ok);

    for (double delta : {0.1, 0.25, 0.75, 0.9}) {
        for (double dist : {0.1, 1.0, 10.0}) {
            const auto rr = check_remark_j(delta, dist);
            CHECK(rr.ok);
            CHECK(rr.j <= rr.bound);
            CHECK(rr.quad_error < 1e-4);
        }
    }

    // scale invariance of J in dist
    const auto r1 = check_remark_j(0.4, 1.0);
    const auto r10 = check_remark_j(0.4, 10.0);
    CHECK(std::abs(r1.j - r10.j) < 1e-6);

    // mismatched exponent: the integral genuinely violates the tighter bound
    const auto bad = check_remark_j(0.05, 1.0, 0.9);
    CHECK(!bad.ok);
}

TEST_CASE("lemma O: closed-form interval case") {
    const Grid g = make_grid(1, {-4.0}, {5.0}, 4096);
    const RegionMask region =
        RegionMask::from_predicate(g, [](Point p) { return p[0] > 0.0 && p[0] < 1.0; });
    const TLadder ladder = TLadder::for_grid(g, 4);
    LemmaOOptions opt;
    opt.max_samples = 512;
    const auto rep = check_lemma_o(region, 1.0, ladder, opt);
    CHECK(rep.all_ok());
    CHECK(rep.samples > 0);
    // U = {M chi_(0,1) > 1/2} = (-1, 2) within 2h
    CHECK(rep.u_measure == doctest::Approx(3.0).epsilon(2.0 * g.spacing()));

    CHECK_THROWS_AS(check_lemma_o(RegionMask::empty(g), 1.0, ladder), std::invalid_argument);
    CHECK_THROWS_AS(
        check_lemma_o(RegionMask::from_predicate(g, [](Point) { return true; }), 1.0, ladder),
        std::invalid_argument);
}

TEST_CASE("lemma O: random interval unions at both apertures") {
    const Grid g = make_grid(1, {0.0}, {1.0}, 2048);
    const TLadder ladder = TLadder::for_grid(g, 4);
    std::mt19937_64 rng(77);
    // keep O small so U = {M chi_O > 1/(2 alpha^n)} stays a proper subset
    RandomSetOptions small;
    small.max_piece_frac = 0.01;
    for (int trial = 0; trial < 20; ++trial) {
        const RegionMask region = random_interval_union(g, 6, rng, small);
        for (double alpha : {1.0, 2.0}) {
            CAPTURE(trial);
            CAPTURE(alpha);
            const auto rep = check_lemma_o(region, alpha, ladder);
            CHECK(rep.all_ok());
        }
    }
}

TEST_CASE("U contains O cellwise whenever the threshold is below 1") {
    // M chi_O = 1 on every O cell (the single-cell window already averages
    // to one), so {M chi_O > tau} contains O for any tau < 1
    const Grid g = make_grid(1, {0.0}, {1.0}, 512);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const RegionMask region = random_interval_union(g, 5, rng);
        const SampledField m = maximal_function(region);
        for (double tau : {0.1, 0.5, 0.9}) {
            for (std::size_t i = 0; i < g.cell_count(); ++i) {
                if (region.contains(i)) CHECK(m.value(i) > tau);
            }
        }
    }
}

TEST_CASE("lemma O in 2d: rectangle unions at both apertures") {
    const Grid g = make_grid(2, {0.0, 0.0}, {1.0, 1.0}, 64);
    const TLadder ladder = TLadder::for_grid(g, 3);
    std::mt19937_64 rng(5);
    RandomSetOptions small;
    small.max_piece_frac = 0.06;
    for (int trial = 0; trial < 4; ++trial) {
        const RegionMask region = random_rect_union(g, 3, rng, small);
        for (double alpha : {1.0, 2.0}) {
            CAPTURE(trial);
            CAPTURE(alpha);
            const auto rep = check_lemma_o(region, alpha, ladder);
            CHECK(rep.all_ok());
            CHECK(rep.samples > 0);
        }
    }
}

TEST_CASE("lemma O: undersized U fails item (i)") {
    const Grid g = make_grid(1, {-4.0}, {5.0}, 2048);
    const RegionMask region =
        RegionMask::from_predicate(g, [](Point p) { return p[0] > 0.0 && p[0] < 1.0; });
    const TLadder ladder = TLadder::for_grid(g, 6);
    LemmaOOptions opt;
    opt.threshold_override = 0.9;  // U shrinks to barely more than O itself
    opt.max_samples = 2048;
    const auto rep = check_lemma_o(region, 1.0, ladder, opt);
    CHECK(!rep.i_ok);
}

TEST_CASE("cone energy bound") {
    const KernelSpec kernel = builtin_kernel("gauss_derivative", 1, 0.4, 0.5);
    const Grid g = default_grid(1, 1024);
    const TLadder ladder = TLadder::for_grid(g, 6);
    const auto fields = sample_family(default_family(1, 6, 17), g);

    SUBCASE("zero field is trivially fine") {
        const auto r = check_cone_energy(SampledField::zeros(g), 1.0, 2.0, kernel, ladder);
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == 0.0);
        CHECK(r.ok);
    }

    SUBCASE("bump mixtures at alpha in {1, 2, 4}") {
        for (const auto& f : fields) {
            // threshold at a high quantile of S_1 f keeps O small
            const UpperHalfField u = psi_transform(kernel, f, ladder);
            const SampledField s1 = square_function(u, ConeSpec(1.0));
            for (double alpha : {1.0, 2.0, 4.0}) {
                // wider apertures enlarge U by ~alpha^n; keep O small enough
                const double theta = (alpha > 2.0 ? 0.7 : 0.5) * norm(s1, Norm::Linf);
                const auto r = check_cone_energy(f, theta, alpha, kernel, ladder);
                CAPTURE(alpha);
                CHECK(r.ok);
                CHECK(r.ratio <= 1.0 + 0.05);
            }
        }
    }

    SUBCASE("skipping the maximal enlargement breaks the bound") {
        ConeEnergyOptions opt;
        opt.u_equals_o = true;
        const auto& f = fields[0];
        const UpperHalfField u = psi_transform(kernel, f, ladder);
        const SampledField s1 = square_function(u, ConeSpec(1.0));
        // low threshold: O grabs most of the S_1 energy, and without the
        // enlargement the alpha-cone energy has nowhere to hide
        const double theta = 0.02 * norm(s1, Norm::Linf);
        const auto r = check_cone_energy(f, theta, 4.0, kernel, ladder, opt);
        CHECK(!r.ok);
    }
}

TEST_CASE("weak type ratios") {
    const KernelSpec kernel = builtin_kernel("gauss_derivative", 1, 0.4, 0.5);
    const Grid g = default_grid(1, 1024);
    const TLadder ladder = TLadder::for_grid(g, 6);
    const auto rhos = geometric_ladder(0.05, 50.0, 12);

    SUBCASE("zero family gives zero ratios") {
        const std::vector<SampledField> fam{SampledField::zeros(g)};
        const auto rep = check_weak_type(WeakTypeOperator::S1, 0.0, fam, rhos, kernel, ladder);
        CHECK(rep.worst_ratio == 0.0);
    }

    SUBCASE("spike family: finite ratio, plateau across widths") {
        const auto fields = sample_family(default_family(1, 3, 9), g);  // three spikes
        const auto rep = check_weak_type(WeakTypeOperator::S1, 0.0, fields, rhos, kernel, ladder);
        CHECK(rep.worst_ratio > 0.0);
        CHECK(std::isfinite(rep.worst_ratio));
        // narrowing the spike does not blow the constant up
        double lo = 1e18;
        double hi = 0.0;
        for (const auto& per : rep.per_input) {
            lo = std::min(lo, per.worst_ratio);
            hi = std::max(hi, per.worst_ratio);
        }
        CHECK(hi / lo < 2.0);
    }

    SUBCASE("g* requires lambda > 2") {
        const std::vector<SampledField> fam{SampledField::zeros(g)};
        CHECK_THROWS_AS(check_weak_type(WeakTypeOperator::GStar, 1.5, fam, rhos, kernel, ladder),
                        std::invalid_argument);
        CHECK_NOTHROW(check_weak_type(WeakTypeOperator::GStar, 3.0, fam, rhos, kernel, ladder));
    }
}

TEST_CASE("O_k / U_k containment") {
    const KernelSpec kernel = builtin_kernel("gauss_derivative", 1, 0.4, 0.5);
    const Grid g = default_grid(1, 1024);
    const TLadder ladder = TLadder::for_grid(g, 6);
    const auto f = sample_family(default_family(1, 8, 31), g)[7];
    const UpperHalfField u = psi_transform(kernel, f, ladder);
    const SampledField s1 = square_function(u, ConeSpec(1.0));

    SUBCASE("zero field: all sets empty, containment vacuous") {
        const auto rep =
            check_ok_uk_containment(SampledField::zeros(g), 1.0, 4, kernel, ladder);
        CHECK(rep.contained_all);
        for (const auto& pk : rep.per_k) CHECK(pk.o_measure == 0.0);
    }

    SUBCASE("superlevel chain is monotone and containment holds at quantiles") {
        for (double q : {0.002, 0.01, 0.05}) {
            const double xi = q * norm(s1, Norm::Linf);
            for (auto mode : {UMode::S1Average, UMode::IndicatorMaximal}) {
                ContainmentOptions opt;
                opt.mode = mode;
                const auto rep = check_ok_uk_containment(f, xi, 4, kernel, ladder, opt);
                CAPTURE(q);
                CHECK(rep.chain_monotone);
                CHECK(rep.contained_all);
                CHECK(!rep.note.empty());
            }
        }
    }

    SUBCASE("containment holds in 2d") {
        const KernelSpec k2 = builtin_kernel("mexican_hat", 2, 0.75, 0.5);
        const Grid g2 = default_grid(2, 64);
        const TLadder l2 = TLadder::for_grid(g2, 3);
        const auto f2 = sample_family(default_family(2, 3, 21), g2)[2];
        const SampledField s12 = square_function(psi_transform(k2, f2, l2), ConeSpec(1.0));
        const double xi = 0.02 * norm(s12, Norm::Linf);
        const auto rep = check_ok_uk_containment(f2, xi, 3, k2, l2);
        CHECK(rep.chain_monotone);
        CHECK(rep.contained_all);
    }

    SUBCASE("tightened U threshold breaks containment") {
        ContainmentOptions opt;
        opt.mode = UMode::S1Average;
        opt.threshold_scale = 64.0;
        const double xi = 0.01 * norm(s1, Norm::Linf);
        const auto rep = check_ok_uk_containment(f, xi, 4, kernel, ladder, opt);
        CHECK(!rep.contained_all);
    }
}

TEST_CASE("aperture reduction growth") {
    const KernelSpec kernel = builtin_kernel("gauss_derivative", 1, 0.4, 0.5);
    const Grid g = default_grid(1, 1024);
    const TLadder ladder = TLadder::for_grid(g, 6);
    const auto f = sample_family(default_family(1, 1, 2), g)[0];
    const auto rhos = geometric_ladder(0.05, 50.0, 12);

    const auto rep = check_aperture_reduction(f, {1.0, 2.0, 4.0}, kernel, ladder, rhos);
    REQUIRE(rep.per_alpha.size() == 3);
    CHECK(rep.ok);
    // alpha = 1 reproduces the plain weak-type ratio
    const auto wt =
        check_weak_type(WeakTypeOperator::S1, 0.0, {f}, rhos, kernel, ladder);
    CHECK(rep.per_alpha[0].ratio == doctest::Approx(wt.worst_ratio));

    // normalizing by alpha^0 instead of alpha^n fails: the growth is real
    ApertureOptions opt;
    opt.exponent = 0.0;
    const auto flat = check_aperture_reduction(f, {1.0, 2.0, 4.0}, kernel, ladder, rhos, opt);
    CHECK(!flat.ok);
}
