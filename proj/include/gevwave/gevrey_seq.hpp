#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gevwave {

// Weight-sequence parameters (tau, sigma) with tau > 0 and sigma > 1. The sigma = 1
// Gevrey comparison case exists only through gevrey_comparison() and is flagged.
class SequenceParams {
public:
    SequenceParams(double tau, double sigma);
    [[nodiscard]] static SequenceParams gevrey_comparison(double tau);

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] bool is_comparison() const noexcept { return comparison_; }

private:
    SequenceParams(double tau, double sigma, bool comparison);
    double tau_;
    double sigma_;
    bool comparison_ = false;
};

// ln M_p = tau * p^sigma * ln p, with ln M_0 = ln M_1 = 0.
[[nodiscard]] double log_m(std::size_t p, const SequenceParams& params);

// Immutable table of ln M_p for p = 0..p_max.
class LogSequence {
public:
    LogSequence(const SequenceParams& params, std::size_t p_max);
    [[nodiscard]] const SequenceParams& params() const noexcept { return params_; }
    [[nodiscard]] std::span<const double> log_values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t p) const noexcept { return values_[p]; }
    [[nodiscard]] std::size_t p_max() const noexcept { return values_.size() - 1; }

private:
    SequenceParams params_;
    std::vector<double> values_;
};

struct SeqAuditReport {
    std::size_t p_max = 0;
    double min_convexity_margin = 0.0; // min over interior p of L[p+1] + L[p-1] - 2 L[p]
    double min_ratio_slack = 0.0;      // min of -tau (p-1)^(sigma-1) ln(2p) - ln(M_{p-1}/M_p)
    double min_ln_c = 0.0;             // smallest ln C making the (p, q) split inequality hold
    std::pair<std::size_t, std::size_t> ln_c_argmax{0, 0};
    double ratio_series_partial = 0.0; // sum_{p<=p_max} M_{p-1}/M_p
    bool quasianalytic = false;
};

// Throws VerificationError naming (p) or (p,q) on any violated inequality.
[[nodiscard]] SeqAuditReport seq_property_audit(const SequenceParams& params, std::size_t p_max);

struct AssocFnReport {
    double k = 0.0;
    double t_exact = 0.0;
    std::size_t argmax_p = 0;
    double t_asym = 0.0; // NaN when k <= e
    double ratio = 0.0;  // t_exact / (tau^(-1/(sigma-1)) t_asym); NaN when undefined
};

// T(k) = max(0, sup_p (p ln k - ln M_p)). The search stops once the term has fallen for
// three consecutive p while below its running maximum.
[[nodiscard]] AssocFnReport assoc_t_exact(double k, const SequenceParams& params);

// Full enumeration over p <= p_max, used for cross-checking the terminating search.
[[nodiscard]] AssocFnReport assoc_t_enumerate(double k, const SequenceParams& params,
                                              std::size_t p_max);

// ln^(sigma/(sigma-1)) k / W^(1/(sigma-1))(ln k), for k > e.
[[nodiscard]] double assoc_t_asym(double k, double sigma);

struct AssocBoundFit {
    std::vector<AssocFnReport> rows;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    [[nodiscard]] double band() const noexcept { return max_ratio / min_ratio; }
};

// Ratio band of exact over scaled asymptotic form on a grid within [1e2, 1e14] (>= 20 points).
[[nodiscard]] AssocBoundFit fit_assoc_bounds(const SequenceParams& params,
                                             std::span<const double> k_grid);

// Minus-log decay rates of reference envelopes, used by decay comparisons.
namespace comparator {
[[nodiscard]] double exponential(double x);                          // x
[[nodiscard]] double subexponential(double x, double sigma_prime);   // x^(1/sigma')
[[nodiscard]] double log_tempered(double x, double sigma);           // x / ln^sigma x
} // namespace comparator

[[nodiscard]] std::vector<double> log_grid(double lo, double hi, std::size_t points);

} // namespace gevwave
