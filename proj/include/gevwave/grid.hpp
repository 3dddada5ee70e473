#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gevwave {

using Complex = std::complex<double>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    [[nodiscard]] bool contains(const Interval& other) const noexcept {
        return other.lo >= lo && other.hi <= hi;
    }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

// Uniform 1-D grid x_j = origin + j*spacing, j = 0..size-1.
struct UniformGrid {
    double origin = 0.0;
    double spacing = 1.0;
    std::size_t size = 0;

    [[nodiscard]] double at(std::size_t j) const noexcept {
        return origin + static_cast<double>(j) * spacing;
    }
    [[nodiscard]] double last() const noexcept { return at(size == 0 ? 0 : size - 1); }
    [[nodiscard]] Interval extent() const noexcept { return {origin, last()}; }
};

// Real samples on a uniform grid. Samples outside the support hint are exactly zero.
class GridFunction {
public:
    GridFunction() = default;
    // Validates finiteness, containment of the support hint and exact zeros outside it.
    GridFunction(UniformGrid grid, std::vector<double> values, Interval support);
    // Same, but zeroes every sample outside the support hint instead of rejecting it.
    static GridFunction clipped(UniformGrid grid, std::vector<double> values, Interval support);

    [[nodiscard]] const UniformGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] double x0() const noexcept { return grid_.origin; }
    [[nodiscard]] double dx() const noexcept { return grid_.spacing; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double x(std::size_t j) const noexcept { return grid_.at(j); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t j) const noexcept { return values_[j]; }
    [[nodiscard]] const Interval& support() const noexcept { return support_; }

    // Trapezoid rule over the whole grid.
    [[nodiscard]] double integral() const noexcept;
    [[nodiscard]] double sup_abs() const noexcept;
    [[nodiscard]] double min() const noexcept;
    // max_j |f(x_j) - f(-x_j)| over samples whose mirror image is also a grid node.
    [[nodiscard]] double evenness_error() const;

private:
    UniformGrid grid_;
    std::vector<double> values_;
    Interval support_;
};

// Complex frequency samples on xi_j = xi0 + j*dxi. Zero outside `support`.
class SpectralFunction {
public:
    SpectralFunction() = default;
    SpectralFunction(UniformGrid grid, std::vector<Complex> values, Interval support,
                     bool hermitian_real);

    [[nodiscard]] const UniformGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] double xi0() const noexcept { return grid_.origin; }
    [[nodiscard]] double dxi() const noexcept { return grid_.spacing; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double xi(std::size_t j) const noexcept { return grid_.at(j); }
    [[nodiscard]] std::span<const Complex> values() const noexcept { return values_; }
    [[nodiscard]] Complex operator[](std::size_t j) const noexcept { return values_[j]; }
    [[nodiscard]] const Interval& support() const noexcept { return support_; }
    [[nodiscard]] bool hermitian_real() const noexcept { return hermitian_real_; }

    // Integer index of xi0 in units of dxi; throws InputError when xi0 is off-lattice.
    [[nodiscard]] long long lattice_offset() const;
    // max |F(-xi) - conj(F(xi))| over mirrored grid pairs.
    [[nodiscard]] double hermitian_error() const;

private:
    UniformGrid grid_;
    std::vector<Complex> values_;
    Interval support_;
    bool hermitian_real_ = false;
};

// Symmetric integer-aligned frequency grid covering [-half_width, half_width].
[[nodiscard]] UniformGrid centered_grid(double spacing, double half_width);

} // namespace gevwave
