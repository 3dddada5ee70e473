#include "gevwave/grid.hpp"

#include "gevwave/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gevwave {

namespace {

void check_grid(const UniformGrid& grid, std::size_t n_values) {
    if (!(grid.spacing > 0.0) || !std::isfinite(grid.spacing) || !std::isfinite(grid.origin)) {
        throw InputError(fmt::format("grid spacing must be positive and finite (got {})", grid.spacing));
    }
    if (grid.size != n_values) {
        throw InputError(fmt::format("grid size {} does not match {} samples", grid.size, n_values));
    }
}

// Tolerance for comparing support endpoints against grid nodes.
double slack(const UniformGrid& grid) { return 1e-9 * grid.spacing; }

} // namespace

GridFunction::GridFunction(UniformGrid grid, std::vector<double> values, Interval support)
    : grid_(grid), values_(std::move(values)), support_(support) {
    check_grid(grid_, values_.size());
    const Interval ext = grid_.extent();
    if (support_.lo > support_.hi || support_.lo < ext.lo - slack(grid_) ||
        support_.hi > ext.hi + slack(grid_)) {
        throw InputError(fmt::format("support [{}, {}] not inside grid [{}, {}]", support_.lo,
                                     support_.hi, ext.lo, ext.hi));
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw InputError(fmt::format("non-finite sample at x = {}", grid_.at(j)));
        }
        if (values_[j] != 0.0 && !support_.contains(grid_.at(j))) {
            throw InputError(fmt::format("nonzero sample {} outside support at x = {}", values_[j],
                                         grid_.at(j)));
        }
    }
}

GridFunction GridFunction::clipped(UniformGrid grid, std::vector<double> values, Interval support) {
    check_grid(grid, values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!support.contains(grid.at(j))) values[j] = 0.0;
    }
    return {grid, std::move(values), support};
}

double GridFunction::integral() const noexcept {
    if (values_.size() < 2) return 0.0;
    double sum = 0.5 * (values_.front() + values_.back());
    for (std::size_t j = 1; j + 1 < values_.size(); ++j) sum += values_[j];
    return sum * grid_.spacing;
}

double GridFunction::sup_abs() const noexcept {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double GridFunction::min() const noexcept {
    return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double GridFunction::evenness_error() const {
    // Node j mirrors node k when origin + j*dx = -(origin + k*dx), i.e. j + k = -2*origin/dx.
    const double twice = -2.0 * grid_.origin / grid_.spacing;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9) {
        throw InputError("grid is not symmetric about 0");
    }
    const auto total = static_cast<long long>(rounded);
    double err = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const long long k = total - static_cast<long long>(j);
        if (k < 0 || k >= static_cast<long long>(values_.size())) continue;
        err = std::max(err, std::abs(values_[j] - values_[static_cast<std::size_t>(k)]));
    }
    return err;
}

SpectralFunction::SpectralFunction(UniformGrid grid, std::vector<Complex> values, Interval support,
                                   bool hermitian_real)
    : grid_(grid), values_(std::move(values)), support_(support), hermitian_real_(hermitian_real) {
    check_grid(grid_, values_.size());
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j].real()) || !std::isfinite(values_[j].imag())) {
            throw InputError(fmt::format("non-finite spectrum sample at xi = {}", grid_.at(j)));
        }
        if (values_[j] != Complex{} && !support_.contains(grid_.at(j))) {
            throw InputError(fmt::format("nonzero spectrum sample outside support at xi = {}",
                                         grid_.at(j)));
        }
    }
}

long long SpectralFunction::lattice_offset() const {
    const double q = grid_.origin / grid_.spacing;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-6) {
        throw InputError(fmt::format("spectrum origin {} is not a multiple of its spacing {}",
                                     grid_.origin, grid_.spacing));
    }
    return static_cast<long long>(r);
}

double SpectralFunction::hermitian_error() const {
    const long long off = lattice_offset();
    const auto n = static_cast<long long>(values_.size());
    double err = 0.0;
    for (long long j = 0; j < n; ++j) {
        const long long k = -2 * off - j;
        if (k < 0 || k >= n) continue;
        err = std::max(err, std::abs(values_[static_cast<std::size_t>(k)] -
                                     std::conj(values_[static_cast<std::size_t>(j)])));
    }
    return err;
}

UniformGrid centered_grid(double spacing, double half_width) {
    if (!(spacing > 0.0) || !(half_width >= 0.0)) {
        throw InputError("centered grid needs positive spacing and nonnegative half width");
    }
    const auto k = static_cast<long long>(std::ceil(half_width / spacing));
    return {static_cast<double>(-k) * spacing, spacing, static_cast<std::size_t>(2 * k + 1)};
}

} // namespace gevwave
