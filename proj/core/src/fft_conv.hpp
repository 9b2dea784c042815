#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "lp/grid.hpp"

namespace lp::detail {

/// Zero-padded linear convolution on a Grid via FFTW:
///   out(x_i) = sum_j L(i - j) q(j)
/// with the lag function L given at integer cell offsets. Padding to 2N per
/// axis makes the circular convolution equal the linear one exactly, so the
/// result matches direct summation up to roundoff.
///
/// Plans are created with FFTW_ESTIMATE so the algorithm choice (and hence
/// the bit pattern of results) is reproducible across runs.
class ConvolutionEngine {
public:
    explicit ConvolutionEngine(const Grid& grid);
    ~ConvolutionEngine();

    ConvolutionEngine(const ConvolutionEngine&) = delete;
    ConvolutionEngine& operator=(const ConvolutionEngine&) = delete;

    /// Forward-transform the cell values q; kept until the next load.
    void load(std::span<const double> q);

    /// Convolve the loaded q with the lag kernel; lag receives the offset in
    /// cells per axis (only the first dim entries meaningful).
    void apply(const std::function<double(const std::array<int, 2>&)>& lag,
               std::span<double> out);

private:
    int dim_;
    int cells_;
    int padded_;
    std::size_t real_size_;
    std::size_t spec_size_;
    double* buf_real_ = nullptr;
    void* buf_spec_ = nullptr;        // fftw_complex*
    void* spec_q_ = nullptr;          // fftw_complex*
    void* plan_fwd_ = nullptr;        // fftw_plan
    void* plan_bwd_ = nullptr;        // fftw_plan
};

}  // namespace lp::detail
