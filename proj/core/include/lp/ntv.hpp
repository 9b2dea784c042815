#pragma once

#include <stdexcept>
#include <vector>

#include "lp/grid.hpp"
#include "lp/kernel.hpp"
#include "lp/operators.hpp"
#include "lp/whitney.hpp"

namespace lp {

/// Raised when the superlevel set {f > rho} is empty: there is nothing to
/// split and the caller should treat f itself as the good part.
struct EmptyOmegaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One bad part: b_i = f restricted to the Whitney cube Q_i, stored on the
/// cube's cell window only.
struct BadPart {
    Cube cube;
    bool filler = false;
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // cell window of the cube
    std::vector<double> values;          // row-major within the window
    double mass = 0.0;                   // a_i = integral of b_i
};

/// f = g + sum b_i with g = f off the superlevel set Omega = {f > rho} and
/// the b_i supported on the disjoint cubes of a Whitney cover of Omega.
struct GoodBadSplit {
    double rho = 0.0;
    SampledField good;
    std::vector<BadPart> parts;
    RegionMask omega;
    WhitneyCover cover;

    /// sum of the b_i, materialized on the full grid.
    SampledField bad_field() const;
    /// b_i materialized on the full grid.
    SampledField part_field(std::size_t i) const;
};

struct SplitOptions {
    /// Whitney constants, diam convention: dist in [lo sqrt(n) diam, hi sqrt(n) diam].
    double dist_lo = 6.0;
    double dist_hi = 24.0;
};

/// Requires f >= 0, rho > 0, and {f > rho} neither empty nor the whole box.
GoodBadSplit good_bad_split(const SampledField& f, double rho,
                            const SplitOptions& options = {});

/// The auxiliary cubes E_i = Q(c_i, r_i) with |E_i| = a_i / rho, their union
/// E, and the enlarged union E* = union Q(c_i, 6n r_i). Parts with a_i = 0
/// contribute no entry.
struct EFamily {
    struct Entry {
        std::size_t part_index = 0;
        double mass = 0.0;  // a_i
        double side = 0.0;  // r_i = (a_i/rho)^{1/n}
        Cube cube;          // E_i
    };
    std::vector<Entry> entries;
    RegionMask e_union;
    RegionMask e_star;
};

EFamily build_e_family(const GoodBadSplit& split);

/// The three measures of the weak-type estimate, computed rather than
/// bounded: I = |Omega union E*|, II the residual superlevel measure of
/// S_1(b - rho 1_E) off Omega union E*, III the superlevel measure of
/// S_1(1_E) at the fixed threshold. `ratio` = (I+II+III) rho / ||f||_1.
struct AccountingReport {
    double rho = 0.0;
    double term_i = 0.0;
    double term_ii = 0.0;
    double term_iii = 0.0;
    double total = 0.0;
    double ratio = 0.0;
    double omega_measure = 0.0;
    double e_star_measure = 0.0;
    double threshold_ii = 0.0;
    double threshold_iii = 0.0;
    std::size_t part_count = 0;
};

struct AccountingOptions {
    /// The constant C_2 in the threshold splits rho/(4 sqrt(C_2)) and
    /// 1/(4 sqrt(C_2)); nothing pins its value, so it is configuration.
    double c2 = 1.0;
};

AccountingReport weak_type_accounting(const SampledField& f, double rho,
                                      const KernelSpec& kernel, const TLadder& ladder,
                                      const AccountingOptions& options = {});

/// Tail integral of S_1 f outside the 6n-fold enlargement of the supporting
/// cube, for mean-zero f supported in Q(c, r). `ratio` = tail_l1 / ||f||_1.
struct TailCheck {
    double tail_l1 = 0.0;
    double ratio = 0.0;
};

TailCheck mean_zero_tail_check(const KernelSpec& kernel, const Point& c, double r,
                               const SampledField& f_on_cube, const TLadder& ladder);

}  // namespace lp
