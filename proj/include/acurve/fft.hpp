#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstring>
#include <mutex>
#include <new>
#include <span>
#include <stdexcept>

namespace acurve::fft {

enum class Direction : int { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

namespace detail {

// FFTW's planner is not re-entrant.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// fftw_malloc'd scratch so every call plans against the same alignment,
// which keeps codelet choice (and therefore rounding) reproducible.
class AlignedBuffer {
public:
    explicit AlignedBuffer(std::size_t n)
        : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!data_) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(data_); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;

    fftw_complex* get() const { return data_; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    fftw_complex* data_;
};

}  // namespace detail

/// In-place unitary 2D DFT of a row-major rows x cols array.
/// forward:  X[k] = (rows*cols)^{-1/2} sum_n x[n] exp(-2 pi i k.n / N)
/// backward: the inverse (adjoint) transform.
inline void unitary_dft_2d(std::span<std::complex<double>> data, int rows, int cols, Direction dir) {
    const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (rows <= 0 || cols <= 0 || data.size() != n)
        throw std::invalid_argument("unitary_dft_2d: shape does not match data");

    detail::AlignedBuffer buf(n);
    std::memcpy(buf.get(), data.data(), n * sizeof(fftw_complex));

    fftw_plan plan;
    {
        std::lock_guard lock(detail::planner_mutex());
        plan = fftw_plan_dft_2d(rows, cols, buf.get(), buf.get(), static_cast<int>(dir), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("unitary_dft_2d: FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(detail::planner_mutex());
        fftw_destroy_plan(plan);
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        data[i] = std::complex<double>(buf.get()[i][0] * scale, buf.get()[i][1] * scale);
}

}  // namespace acurve::fft
