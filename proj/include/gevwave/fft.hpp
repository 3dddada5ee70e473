#pragma once

#include "gevwave/grid.hpp"

#include <cstddef>
#include <memory>
#include <span>

namespace gevwave {

// FFTW-aligned complex buffer with a reusable 1-D plan. FFTW_ESTIMATE planning keeps the
// transform deterministic between runs.
class FftBuffer {
public:
    enum class Direction { forward, backward };

    explicit FftBuffer(std::size_t n);
    ~FftBuffer();
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
    FftBuffer(FftBuffer&&) noexcept;
    FftBuffer& operator=(FftBuffer&&) noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::span<Complex> data() noexcept;
    [[nodiscard]] std::span<const Complex> data() const noexcept;

    // Unnormalized in-place transform: forward uses exp(-2 pi i jk/n), backward exp(+2 pi i jk/n).
    void execute(Direction dir);

private:
    struct Impl;
    std::size_t n_ = 0;
    std::unique_ptr<Impl> impl_;
};

} // namespace gevwave
