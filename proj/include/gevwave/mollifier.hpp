#pragma once

#include "gevwave/grid.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gevwave {

// Base kernel of the cascade. `box` is the normalized indicator of [-1, 1] (total
// variation 1); `smooth_bump` is c * exp(-1 / (1 - x^2)).
enum class BaseKernel { box, smooth_bump };

[[nodiscard]] std::string to_string(BaseKernel base);
[[nodiscard]] BaseKernel parse_base_kernel(const std::string& name);

// Symmetric periodic grid of 2^pow cells over [-half_length, half_length).
struct SpaceGrid {
    double half_length = 1.5;
    unsigned pow = 17;

    [[nodiscard]] std::size_t size() const noexcept { return std::size_t{1} << pow; }
    [[nodiscard]] double dx() const noexcept { return 2.0 * half_length / static_cast<double>(size()); }
    [[nodiscard]] UniformGrid grid() const noexcept { return {-half_length, dx(), size()}; }
};

// 1 / integral of exp(-1 / (1 - x^2)) over [-1, 1].
[[nodiscard]] double bump_normalizer();

// Point samples of the normalized smooth bump. Needs >= 64 nodes inside [-1, 1].
[[nodiscard]] GridFunction base_bump(const UniformGrid& grid);

// Sup and L1 norm of the derivative of the unit-scale base kernel.
[[nodiscard]] double base_sup(BaseKernel base);
[[nodiscard]] double base_derivative_l1(BaseKernel base);

// Block scale a(m, p) = (2(p+1))^(-p^(sigma-1) / m).
[[nodiscard]] double block_scale(double sigma, int m, std::size_t p);

// N_1 .. N_{m_max+1}: N_m is the smallest N >= 1 whose block-m tail sum is below 2^-m.
[[nodiscard]] std::vector<std::size_t> block_thresholds(double sigma, int m_max);

struct ScaleSequence {
    std::size_t first_index = 0;  // N_1
    std::size_t trunc_index = 0;  // last retained p
    std::vector<double> scales;   // a_p for p = first_index .. trunc_index
    std::vector<int> blocks;      // block m of each retained scale
    double discarded_tail = 0.0;  // tail of the computed blocks plus the 2^-m_max remainder bound
    bool degenerate = false;      // only the first factor survived the cutoff

    [[nodiscard]] double total() const noexcept;
    [[nodiscard]] std::size_t count() const noexcept { return scales.size(); }
};

// Retains scales in index order until the first one below `cutoff`; the first factor is
// always kept.
[[nodiscard]] ScaleSequence scale_sequence(double sigma, std::span<const std::size_t> thresholds,
                                           double cutoff);

struct MollifierSpec {
    double sigma = 2.0;
    int m_max = 8;
    SpaceGrid grid;
    std::optional<double> cutoff; // defaults to 4 dx
    BaseKernel base = BaseKernel::box;
    double max_mass_drift = 1e-8;
};

struct MollifierBuild {
    double sigma = 0.0;
    BaseKernel base = BaseKernel::box;
    double cutoff = 0.0;
    std::vector<std::size_t> thresholds;
    ScaleSequence sequence;
    double base_norm_c = 0.0;   // L1 norm of the unit-scale base kernel derivative
    double base_sup = 0.0;      // sup of the unit-scale base kernel
    double mass_drift = 0.0;    // |product of discrete kernel masses - 1| before renormalizing
    double min_before_clamp = 0.0;
    double evenness_error = 0.0;
    GridFunction phi;
};

// Cascade of dilated base kernels, convolved through the DFT on the periodic grid.
// Throws ResolutionError when the grid cannot resolve the retained scales or when the
// discrete mass drifts by more than spec.max_mass_drift.
[[nodiscard]] MollifierBuild build_mollifier(const MollifierSpec& spec);

struct DerivativeBoundRow {
    int order = 0;
    double measured = 0.0;
    double bound = 0.0;
    [[nodiscard]] bool within(double rel_slack) const noexcept {
        return measured <= bound * (1.0 + rel_slack);
    }
};

struct GrowthRangeFit {
    int n_lo = 0;
    int n_hi = 0;
    double ln_c = 0.0;
    double tau_eff = 0.0;
};

// ln sup |phi^(n)| ~ n^sigma ln C + tau_eff n^sigma ln n over n >= 1.
struct GrowthFit {
    double ln_c = 0.0;        // least-squares
    double tau_eff = 0.0;     // least-squares
    double ln_c_upper = 0.0;  // smallest ln C making the fitted form an upper bound
    std::vector<GrowthRangeFit> by_range;
};

struct DerivativeAudit {
    std::vector<DerivativeBoundRow> rows;
    GrowthFit growth;
    double band_limit = 0.0; // highest retained angular frequency
    double rel_slack = 1e-3;
    [[nodiscard]] bool passed() const noexcept;
};

// Spectral derivatives of phi versus the Young-inequality product bound
// sup f_{a_N1} * c^n * prod of the n largest remaining 1/a.
[[nodiscard]] DerivativeAudit derivative_bound_audit(const MollifierBuild& build, int n_max,
                                                     double rel_slack = 1e-3,
                                                     double spectral_floor = 1e-13);

// Sup of each spectral derivative of phi up to n_max, with the same band limit rule.
[[nodiscard]] std::vector<double> spectral_derivative_sups(const GridFunction& phi, int n_max,
                                                           double spectral_floor,
                                                           double* band_limit = nullptr);

// x -> (mass / a) * phi(x / a) resampled on `target` (default: the dilated source grid).
[[nodiscard]] GridFunction dilate_normalize(const GridFunction& phi, double a, double mass,
                                            std::optional<UniformGrid> target = std::nullopt);

} // namespace gevwave
