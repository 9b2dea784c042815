#include "lp/ntv.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace lp {

namespace {

// cell window of a grid-aligned cube (the Whitney cubes are always aligned)
void cube_window(const Cube& q, const Grid& grid, int& x0, int& x1, int& y0, int& y1) {
    const double h = grid.spacing();
    x0 = static_cast<int>(std::round((q.center[0] - q.side / 2.0 - grid.lo()[0]) / h));
    x1 = static_cast<int>(std::round((q.center[0] + q.side / 2.0 - grid.lo()[0]) / h));
    if (grid.dim() == 2) {
        y0 = static_cast<int>(std::round((q.center[1] - q.side / 2.0 - grid.lo()[1]) / h));
        y1 = static_cast<int>(std::round((q.center[1] + q.side / 2.0 - grid.lo()[1]) / h));
    } else {
        y0 = 0;
        y1 = 1;
    }
}

}  // namespace

SampledField GoodBadSplit::bad_field() const {
    const Grid& grid = good.grid();
    std::vector<double> v(grid.cell_count(), 0.0);
    for (const BadPart& p : parts) {
        std::size_t k = 0;
        for (int iy = p.y0; iy < p.y1; ++iy) {
            for (int ix = p.x0; ix < p.x1; ++ix) {
                v[grid.index(ix, grid.dim() == 2 ? iy : 0)] = p.values[k++];
            }
        }
    }
    return SampledField(grid, std::move(v));
}

SampledField GoodBadSplit::part_field(std::size_t i) const {
    const Grid& grid = good.grid();
    const BadPart& p = parts.at(i);
    std::vector<double> v(grid.cell_count(), 0.0);
    std::size_t k = 0;
    for (int iy = p.y0; iy < p.y1; ++iy) {
        for (int ix = p.x0; ix < p.x1; ++ix) {
            v[grid.index(ix, grid.dim() == 2 ? iy : 0)] = p.values[k++];
        }
    }
    return SampledField(grid, std::move(v));
}

GoodBadSplit good_bad_split(const SampledField& f, double rho, const SplitOptions& options) {
    if (!(rho > 0.0)) throw std::invalid_argument("good_bad_split: rho must be positive");
    for (double v : f.values()) {
        if (v < 0.0)
            throw std::invalid_argument("good_bad_split: f must be nonnegative");
    }
    const Grid& grid = f.grid();
    RegionMask omega = superlevel_mask(f, rho);
    if (omega.is_empty())
        throw EmptyOmegaError("good_bad_split: {f > rho} is empty, nothing to split");
    if (omega.is_full())
        throw std::invalid_argument("good_bad_split: {f > rho} is the whole box");

    WhitneyOptions wopt;
    wopt.diam_convention = true;
    WhitneyCover cover = whitney_decompose(omega, options.dist_lo, options.dist_hi, wopt);

    // g keeps f off Omega; every Omega cell lands in exactly one cube
    std::vector<double> gv(grid.cell_count());
    for (std::size_t i = 0; i < gv.size(); ++i) gv[i] = omega.contains(i) ? 0.0 : f.value(i);

    GoodBadSplit split{rho, SampledField(grid, std::move(gv)), {}, omega, cover};
    const double hn = grid.cell_volume();
    split.parts.reserve(cover.cubes.size());
    for (std::size_t ci = 0; ci < cover.cubes.size(); ++ci) {
        BadPart part;
        part.cube = cover.cubes[ci];
        part.filler = cover.is_filler[ci] != 0;
        cube_window(part.cube, grid, part.x0, part.x1, part.y0, part.y1);
        part.values.reserve(static_cast<std::size_t>(part.x1 - part.x0) *
                            static_cast<std::size_t>(part.y1 - part.y0));
        double mass = 0.0;
        for (int iy = part.y0; iy < part.y1; ++iy) {
            for (int ix = part.x0; ix < part.x1; ++ix) {
                const double v = f.value(grid.index(ix, grid.dim() == 2 ? iy : 0));
                part.values.push_back(v);
                mass += v;
            }
        }
        part.mass = mass * hn;
        split.parts.push_back(std::move(part));
    }
    return split;
}

EFamily build_e_family(const GoodBadSplit& split) {
    const Grid& grid = split.good.grid();
    const int n = grid.dim();
    std::vector<EFamily::Entry> entries;
    std::vector<Cube> e_cubes;
    std::vector<Cube> e_star_cubes;
    for (std::size_t i = 0; i < split.parts.size(); ++i) {
        const double a = split.parts[i].mass;
        if (a <= 0.0) continue;
        const double side = std::pow(a / split.rho, 1.0 / n);
        const Cube e{split.parts[i].cube.center, side};
        entries.push_back({i, a, side, e});
        e_cubes.push_back(e);
        e_star_cubes.push_back(Cube{e.center, 6.0 * n * side});
    }
    return EFamily{std::move(entries), rasterize_union(e_cubes, grid),
                   rasterize_union(e_star_cubes, grid)};
}

AccountingReport weak_type_accounting(const SampledField& f, double rho,
                                      const KernelSpec& kernel, const TLadder& ladder,
                                      const AccountingOptions& options) {
    AccountingReport rep;
    rep.rho = rho;
    rep.threshold_ii = rho / (4.0 * std::sqrt(options.c2));
    rep.threshold_iii = 1.0 / (4.0 * std::sqrt(options.c2));

    std::optional<GoodBadSplit> maybe_split;
    try {
        maybe_split.emplace(good_bad_split(f, rho));
    } catch (const EmptyOmegaError&) {
        return rep;  // no bad set: all three terms vanish
    }
    const GoodBadSplit& split = *maybe_split;
    const Grid& grid = f.grid();
    const EFamily fam = build_e_family(split);
    rep.part_count = split.parts.size();
    rep.omega_measure = split.omega.measure();
    rep.e_star_measure = fam.e_star.measure();

    const RegionMask outside = split.omega.unite(fam.e_star).complement();
    rep.term_i = grid.cell_volume() *
                 static_cast<double>(grid.cell_count() - outside.count());

    // II: S_1(b - rho 1_E) off Omega union E*
    SampledField bad = split.bad_field();
    std::vector<double> u(grid.cell_count());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = bad.value(i) - (fam.e_union.contains(i) ? rho : 0.0);
    const SampledField s_u =
        square_function(psi_transform(kernel, SampledField(grid, std::move(u)), ladder),
                        ConeSpec(1.0));
    std::size_t count_ii = 0;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (outside.contains(i) && s_u.value(i) >= rep.threshold_ii) ++count_ii;
    }
    rep.term_ii = static_cast<double>(count_ii) * grid.cell_volume();

    // III: S_1(1_E) over the whole grid
    std::vector<double> ind(grid.cell_count());
    for (std::size_t i = 0; i < ind.size(); ++i) ind[i] = fam.e_union.contains(i) ? 1.0 : 0.0;
    const SampledField s_e =
        square_function(psi_transform(kernel, SampledField(grid, std::move(ind)), ladder),
                        ConeSpec(1.0));
    std::size_t count_iii = 0;
    for (double v : s_e.values()) count_iii += (v >= rep.threshold_iii);
    rep.term_iii = static_cast<double>(count_iii) * grid.cell_volume();

    rep.total = rep.term_i + rep.term_ii + rep.term_iii;
    rep.ratio = rep.total * rho / norm(f, Norm::L1);
    return rep;
}

TailCheck mean_zero_tail_check(const KernelSpec& kernel, const Point& c, double r,
                               const SampledField& f, const TLadder& ladder) {
    const Grid& grid = f.grid();
    const int n = grid.dim();
    const double l1 = norm(f, Norm::L1);
    if (l1 == 0.0) return {0.0, 0.0};

    const Cube support{c, r};
    double peak = 0.0;
    for (double v : f.values()) peak = std::max(peak, std::abs(v));
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (std::abs(f.value(i)) > 1e-12 * peak && !cube_contains(support, n, grid.center(i)))
            throw std::invalid_argument("mean_zero_tail_check: f is not supported in Q(c,r)");
    }
    const double mean = integrate(f);
    if (std::abs(mean) > 1e-8 * l1)
        throw std::invalid_argument("mean_zero_tail_check: f is not mean-zero");

    const SampledField s1 = square_function(psi_transform(kernel, f, ladder), ConeSpec(1.0));
    const Cube enlarged{c, 6.0 * n * r};
    double tail = 0.0;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
        if (!cube_contains(enlarged, n, grid.center(i))) tail += std::abs(s1.value(i));
    }
    TailCheck out;
    out.tail_l1 = tail * grid.cell_volume();
    out.ratio = out.tail_l1 / l1;
    return out;
}

}  // namespace lp
