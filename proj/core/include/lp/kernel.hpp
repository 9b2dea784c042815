#pragma once

#include <functional>
#include <string>

#include "lp/grid.hpp"

namespace lp {

/// A kernel psi(x, y) defined off the diagonal, declared to satisfy the size
/// condition |psi| <= C (1+|x-y|)^{-n-delta} and the two smoothness
/// conditions with Hoelder exponent gamma. The declared exponents are what
/// the constant estimators and lemma checkers test against.
///
/// `profile` is set when psi(x, y) = phi(x - y); the transform then runs the
/// fast convolution path. Generic kernels leave it empty and are evaluated
/// by direct summation.
struct KernelSpec {
    int dim = 1;
    double delta = 0.4;
    double gamma = 0.5;
    std::function<double(const Point&, const Point&)> evaluate;
    std::function<double(const Point&)> profile;
    std::string label;

    bool is_convolution() const { return static_cast<bool>(profile); }
};

enum class BuiltinKernel { GaussDerivative, MexicanHat, CompactBumpDifference };

/// Mean-zero convolution kernels phi(x - y). All decay faster than any
/// declared (1+|u|)^{-n-delta}, so the size/smoothness constants are finite.
/// For n = 1 a built-in must declare delta < 1/2.
KernelSpec builtin_kernel(BuiltinKernel name, int dim, double delta, double gamma);
KernelSpec builtin_kernel(const std::string& name, int dim, double delta, double gamma);

/// Default declared exponents: delta = 0.4 (n = 1) or 0.75 (n = 2), gamma = 0.5.
KernelSpec default_kernel(int dim);

double default_delta(int dim);

enum class SmoothnessSlot { First, Second };

/// sup over sampled pairs with |x-y| <= radius of |psi(x,y)| (1+|x-y|)^{n+delta}.
/// Sampling is a deterministic Halton set; growing sample_count extends the
/// point set, so the estimate is monotone nondecreasing in sample_count.
double estimate_size_constant(const KernelSpec& spec, int sample_count, double radius);

/// sup over sampled (x, y, h) with |h| < |x-y|/2 of the smoothness quotient
/// |psi(x,y) - psi(x+h,y)| / [(1+|x-y|)^{-n} (|h|/(1+|x-y|))^{gamma} (1+|x-y|)^{-delta}]
/// (second slot shifts y instead).
double estimate_smoothness_constant(const KernelSpec& spec, SmoothnessSlot which,
                                    int sample_count);

}  // namespace lp
