#include "lp/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lp {

namespace {

double sqr(double x) { return x * x; }

double mag(const Point& p, int dim) {
    return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

// C-infinity bump supported on the unit ball, not normalized.
double bump(double r2) {
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

double radical_inverse(std::uint32_t i, std::uint32_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double x = 0.0;
    while (i > 0) {
        x += static_cast<double>(i % base) * f;
        i /= base;
        f *= inv;
    }
    return x;
}

void check_exponents(int dim, double delta, double gamma) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("kernel: dim must be 1 or 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("kernel: delta must lie in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("kernel: gamma must lie in (0,1)");
}

KernelSpec from_profile(int dim, double delta, double gamma,
                        std::function<double(const Point&)> profile, std::string label) {
    KernelSpec spec;
    spec.dim = dim;
    spec.delta = delta;
    spec.gamma = gamma;
    spec.profile = std::move(profile);
    spec.label = std::move(label);
    spec.evaluate = [p = spec.profile](const Point& x, const Point& y) {
        return p({x[0] - y[0], x[1] - y[1]});
    };
    return spec;
}

}  // namespace

double default_delta(int dim) { return dim == 1 ? 0.4 : 0.75; }

KernelSpec builtin_kernel(BuiltinKernel name, int dim, double delta, double gamma) {
    check_exponents(dim, delta, gamma);
    if (dim == 1 && delta >= 0.5)
        throw std::invalid_argument("kernel: built-ins require delta < 1/2 when dim = 1");
    switch (name) {
        case BuiltinKernel::GaussDerivative:
            // odd in the first coordinate, hence mean-zero
            return from_profile(dim, delta, gamma,
                                [dim](const Point& u) {
                                    const double r2 =
                                        dim == 1 ? sqr(u[0]) : sqr(u[0]) + sqr(u[1]);
                                    return u[0] * std::exp(-r2);
                                },
                                "gauss_derivative");
        case BuiltinKernel::MexicanHat:
            // (n - |u|^2) e^{-|u|^2/2}; the n makes the integral vanish exactly
            return from_profile(dim, delta, gamma,
                                [dim](const Point& u) {
                                    const double r2 =
                                        dim == 1 ? sqr(u[0]) : sqr(u[0]) + sqr(u[1]);
                                    return (static_cast<double>(dim) - r2) * std::exp(-r2 / 2.0);
                                },
                                "mexican_hat");
        case BuiltinKernel::CompactBumpDifference:
            // beta(u) - 2^n beta(2u); the scaling identity kills the mean
            return from_profile(dim, delta, gamma,
                                [dim](const Point& u) {
                                    const double r2 =
                                        dim == 1 ? sqr(u[0]) : sqr(u[0]) + sqr(u[1]);
                                    const double two_n = dim == 1 ? 2.0 : 4.0;
                                    return bump(r2) - two_n * bump(4.0 * r2);
                                },
                                "compact_bump_difference");
    }
    throw std::invalid_argument("kernel: unknown built-in");
}

KernelSpec builtin_kernel(const std::string& name, int dim, double delta, double gamma) {
    if (name == "gauss_derivative")
        return builtin_kernel(BuiltinKernel::GaussDerivative, dim, delta, gamma);
    if (name == "mexican_hat") return builtin_kernel(BuiltinKernel::MexicanHat, dim, delta, gamma);
    if (name == "compact_bump_difference")
        return builtin_kernel(BuiltinKernel::CompactBumpDifference, dim, delta, gamma);
    throw std::invalid_argument("kernel: unknown kernel name '" + name + "'");
}

KernelSpec default_kernel(int dim) {
    return builtin_kernel(BuiltinKernel::GaussDerivative, dim, default_delta(dim), 0.5);
}

double estimate_size_constant(const KernelSpec& spec, int sample_count, double radius) {
    if (sample_count < 1000)
        throw std::invalid_argument("estimate_size_constant: sample_count must be >= 1000");
    if (!(radius > 0.0)) throw std::invalid_argument("estimate_size_constant: radius must be > 0");
    const int n = spec.dim;
    double sup = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        const auto i = static_cast<std::uint32_t>(s + 1);
        const double q1 = radical_inverse(i, 2);
        const double q2 = radical_inverse(i, 3);
        const double q3 = radical_inverse(i, 5);
        const double q4 = radical_inverse(i, 7);
        // alternate linear and log-spaced separations so both the bulk and
        // the near-diagonal region are probed; the point set stays a prefix
        // as sample_count grows
        const double umag =
            (s % 2 == 0) ? q1 * radius : radius * std::exp(std::log(1e-6) * q1);
        Point u{0.0, 0.0};
        if (n == 1) {
            u[0] = (q2 < 0.5 ? -1.0 : 1.0) * umag;
        } else {
            const double ang = 2.0 * std::numbers::pi * q2;
            u = {umag * std::cos(ang), umag * std::sin(ang)};
        }
        Point x{(q3 - 0.5) * 2.0 * radius, n == 2 ? (q4 - 0.5) * 2.0 * radius : 0.0};
        const Point y{x[0] - u[0], x[1] - u[1]};
        const double v = spec.evaluate(x, y);
        if (!std::isfinite(v))
            throw std::domain_error("estimate_size_constant: kernel returned a non-finite value");
        const double d = mag(u, n);
        sup = std::max(sup, std::abs(v) * std::pow(1.0 + d, n + spec.delta));
    }
    return sup;
}

double estimate_smoothness_constant(const KernelSpec& spec, SmoothnessSlot which,
                                    int sample_count) {
    if (sample_count < 1000)
        throw std::invalid_argument("estimate_smoothness_constant: sample_count must be >= 1000");
    const int n = spec.dim;
    const double radius = 16.0;
    double sup = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        const auto i = static_cast<std::uint32_t>(s + 1);
        const double q1 = radical_inverse(i, 2);
        const double q2 = radical_inverse(i, 3);
        const double q3 = radical_inverse(i, 5);
        const double q4 = radical_inverse(i, 7);
        const double q5 = radical_inverse(i, 11);
        const double q6 = radical_inverse(i, 13);
        const double umag =
            (s % 2 == 0) ? q1 * radius : radius * std::exp(std::log(1e-5) * q1);
        Point u{0.0, 0.0};
        if (n == 1) {
            u[0] = (q2 < 0.5 ? -1.0 : 1.0) * umag;
        } else {
            const double ang = 2.0 * std::numbers::pi * q2;
            u = {umag * std::cos(ang), umag * std::sin(ang)};
        }
        Point x{(q3 - 0.5) * 2.0 * radius, n == 2 ? (q4 - 0.5) * 2.0 * radius : 0.0};
        const Point y{x[0] - u[0], x[1] - u[1]};
        // the smoothness conditions only constrain |h| < |x-y|/2
        const double hmag = 0.5 * umag * q5 * 0.999;
        if (hmag <= 0.0) continue;
        Point h{0.0, 0.0};
        if (n == 1) {
            h[0] = (q6 < 0.5 ? -1.0 : 1.0) * hmag;
        } else {
            const double ang = 2.0 * std::numbers::pi * q6;
            h = {hmag * std::cos(ang), hmag * std::sin(ang)};
        }
        double num = 0.0;
        if (which == SmoothnessSlot::First) {
            num = std::abs(spec.evaluate(x, y) - spec.evaluate({x[0] + h[0], x[1] + h[1]}, y));
        } else {
            num = std::abs(spec.evaluate(x, y) - spec.evaluate(x, {y[0] + h[0], y[1] + h[1]}));
        }
        if (!std::isfinite(num))
            throw std::domain_error(
                "estimate_smoothness_constant: kernel returned a non-finite value");
        const double d = mag(u, n);
        const double den = std::pow(1.0 + d, -static_cast<double>(n)) *
                           std::pow(hmag / (1.0 + d), spec.gamma) *
                           std::pow(1.0 + d, -spec.delta);
        sup = std::max(sup, num / den);
    }
    return sup;
}

}  // namespace lp
