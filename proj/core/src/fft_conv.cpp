#include "fft_conv.hpp"

#include <fftw3.h>

#include <cstring>

namespace lp::detail {

ConvolutionEngine::ConvolutionEngine(const Grid& grid)
    : dim_(grid.dim()), cells_(grid.cells_per_axis()), padded_(2 * grid.cells_per_axis()) {
    const auto m = static_cast<std::size_t>(padded_);
    real_size_ = dim_ == 1 ? m : m * m;
    spec_size_ = dim_ == 1 ? (m / 2 + 1) : m * (m / 2 + 1);

    buf_real_ = fftw_alloc_real(real_size_);
    buf_spec_ = fftw_alloc_complex(spec_size_);
    spec_q_ = fftw_alloc_complex(spec_size_);

    if (dim_ == 1) {
        plan_fwd_ = fftw_plan_dft_r2c_1d(padded_, buf_real_,
                                         static_cast<fftw_complex*>(buf_spec_), FFTW_ESTIMATE);
        plan_bwd_ = fftw_plan_dft_c2r_1d(padded_, static_cast<fftw_complex*>(buf_spec_),
                                         buf_real_, FFTW_ESTIMATE);
    } else {
        plan_fwd_ = fftw_plan_dft_r2c_2d(padded_, padded_, buf_real_,
                                         static_cast<fftw_complex*>(buf_spec_), FFTW_ESTIMATE);
        plan_bwd_ = fftw_plan_dft_c2r_2d(padded_, padded_, static_cast<fftw_complex*>(buf_spec_),
                                         buf_real_, FFTW_ESTIMATE);
    }
}

ConvolutionEngine::~ConvolutionEngine() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_real_);
    fftw_free(buf_spec_);
    fftw_free(spec_q_);
}

void ConvolutionEngine::load(std::span<const double> q) {
    std::memset(buf_real_, 0, real_size_ * sizeof(double));
    if (dim_ == 1) {
        std::memcpy(buf_real_, q.data(), static_cast<std::size_t>(cells_) * sizeof(double));
    } else {
        for (int iy = 0; iy < cells_; ++iy) {
            std::memcpy(buf_real_ + static_cast<std::size_t>(iy) * padded_,
                        q.data() + static_cast<std::size_t>(iy) * cells_,
                        static_cast<std::size_t>(cells_) * sizeof(double));
        }
    }
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(spec_q_, buf_spec_, spec_size_ * sizeof(fftw_complex));
}

void ConvolutionEngine::apply(const std::function<double(const std::array<int, 2>&)>& lag,
                              std::span<double> out) {
    // lag table in wrap-around layout: offset k stored at (k + padded) mod padded
    std::memset(buf_real_, 0, real_size_ * sizeof(double));
    if (dim_ == 1) {
        for (int k = -(cells_ - 1); k <= cells_ - 1; ++k) {
            const int idx = (k + padded_) % padded_;
            buf_real_[idx] = lag({k, 0});
        }
    } else {
        for (int ky = -(cells_ - 1); ky <= cells_ - 1; ++ky) {
            const int ry = (ky + padded_) % padded_;
            double* row = buf_real_ + static_cast<std::size_t>(ry) * padded_;
            for (int kx = -(cells_ - 1); kx <= cells_ - 1; ++kx) {
                row[(kx + padded_) % padded_] = lag({kx, ky});
            }
        }
    }
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));

    auto* spec = static_cast<fftw_complex*>(buf_spec_);
    auto* sq = static_cast<fftw_complex*>(spec_q_);
    const double scale = 1.0 / static_cast<double>(real_size_);
    for (std::size_t i = 0; i < spec_size_; ++i) {
        const double re = spec[i][0] * sq[i][0] - spec[i][1] * sq[i][1];
        const double im = spec[i][0] * sq[i][1] + spec[i][1] * sq[i][0];
        spec[i][0] = re * scale;
        spec[i][1] = im * scale;
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));

    if (dim_ == 1) {
        std::memcpy(out.data(), buf_real_, static_cast<std::size_t>(cells_) * sizeof(double));
    } else {
        for (int iy = 0; iy < cells_; ++iy) {
            std::memcpy(out.data() + static_cast<std::size_t>(iy) * cells_,
                        buf_real_ + static_cast<std::size_t>(iy) * padded_,
                        static_cast<std::size_t>(cells_) * sizeof(double));
        }
    }
}

}  // namespace lp::detail
