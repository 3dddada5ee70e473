#include "gevwave/fft.hpp"

#include "gevwave/errors.hpp"

#include <fftw3.h>

#include <algorithm>

namespace gevwave {

struct FftBuffer::Impl {
    fftw_complex* buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Impl(std::size_t n) {
        buffer = fftw_alloc_complex(n);
        if (buffer == nullptr) throw ResolutionError("FFT buffer allocation failed");
        const int len = static_cast<int>(n);
        forward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        std::fill_n(reinterpret_cast<double*>(buffer), 2 * n, 0.0);
    }
    ~Impl() {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        fftw_free(buffer);
    }
    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;
};

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
    if (n == 0) throw InputError("FFT length must be positive");
    impl_ = std::make_unique<Impl>(n);
}

FftBuffer::~FftBuffer() = default;
FftBuffer::FftBuffer(FftBuffer&&) noexcept = default;
FftBuffer& FftBuffer::operator=(FftBuffer&&) noexcept = default;

std::span<Complex> FftBuffer::data() noexcept {
    return {reinterpret_cast<Complex*>(impl_->buffer), n_};
}

std::span<const Complex> FftBuffer::data() const noexcept {
    return {reinterpret_cast<const Complex*>(impl_->buffer), n_};
}

void FftBuffer::execute(Direction dir) {
    fftw_execute(dir == Direction::forward ? impl_->forward : impl_->backward);
}

} // namespace gevwave
