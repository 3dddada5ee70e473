#pragma once

#include "gevwave/bell_wavelet.hpp"
#include "gevwave/gevrey_seq.hpp"
#include "gevwave/grid.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gevwave {

// ---------------------------------------------------------------------------------------
// Orthonormality and completeness

// (1/2 pi) * sum F conj(G) dxi over the common lattice. Grids whose spacings differ by an
// integer factor are compared on the coarser one; other spacings are rejected.
[[nodiscard]] Complex inner_product(const SpectralFunction& f, const SpectralFunction& g);

struct GramEntry {
    WaveletIndex row;
    WaveletIndex col;
    Complex value;
};

struct GramReport {
    int m_min = 0, m_max = 0, n_min = 0, n_max = 0;
    std::vector<GramEntry> entries; // upper triangle in (m, n) order, diagonal included
    double max_offdiag = 0.0;
    double max_diag_dev = 0.0;
    GramEntry worst_offdiag{};
    GramEntry worst_diag{};

    [[nodiscard]] std::size_t members() const noexcept;
    // Entry (i, j) in member order; the lower triangle is the conjugate of the upper one.
    [[nodiscard]] Complex entry(std::size_t i, std::size_t j) const;
};

[[nodiscard]] GramReport gram_matrix(const Wavelet& wavelet, int m_min, int m_max, int n_min,
                                     int n_max, double dxi);

// Throws VerificationError naming the worst pair when either deviation exceeds tol.
void require_orthonormal(const GramReport& report, double tol);

struct DyadicRow {
    double xi = 0.0;
    double sum = 0.0;
    bool covered = false;
};

struct DyadicReport {
    int m_window = 0;
    std::vector<DyadicRow> rows;
    double max_deviation = 0.0; // over covered rows
    double worst_xi = 0.0;
    std::size_t covered = 0;
};

// s(xi) = sum_{|m| <= window} |psi_hat(2^m xi)|^2. Throws InputError when a node touches 0.
[[nodiscard]] DyadicReport dyadic_sum_check(const Wavelet& wavelet, std::span<const double> xi_grid,
                                            int m_window);

// Base band [pi - a + margin, 2(pi + a) - margin] scaled by 2^j for |j| < m_window, both signs.
[[nodiscard]] std::vector<double> default_dyadic_grid(double a, int m_window, std::size_t points,
                                                      double margin = 1e-3);

enum class CheckStatus { pass, fail, inconclusive };
[[nodiscard]] std::string to_string(CheckStatus status);

struct CompletenessScale {
    int m = 0;
    int n_reach = 0; // |n| examined
    double energy = 0.0;
    bool converged = false;
};

struct CompletenessReport {
    double ratio = 0.0;
    double norm_sq = 0.0;
    int m_window = 0;
    int n_cap = 0;
    double tol = 0.0;
    double change_tol = 0.0;
    bool inside_covered_range = false;
    std::vector<CompletenessScale> scales;
    CheckStatus status = CheckStatus::inconclusive;
};

// Energy of the coefficients <f, psi_{m,n}> over |m| <= m_window relative to ||f||^2. For each
// scale, |n| grows in blocks of 8 until a block adds less than change_tol * ||f||^2.
[[nodiscard]] CompletenessReport completeness_check(const Wavelet& wavelet, const SpectralFunction& f,
                                                    int m_window, int n_cap, double tol = 1e-3,
                                                    double change_tol = 1e-5);

// Truncated Gaussian bump centred at |xi| = centre, width `width`, cut at `cut` widths.
[[nodiscard]] SpectralFunction gaussian_test_spectrum(double dxi, double centre, double width,
                                                      double cut);

// ---------------------------------------------------------------------------------------
// Decay envelopes and fits

struct EnvelopePoint {
    double x = 0.0;
    double env = 0.0;
    bool dropped = false; // below the noise floor
};

struct Envelope {
    std::vector<EnvelopePoint> points;
    double floor = 0.0;
    double period = 0.0;
    double sup = 0.0;
};

// Local oscillation period 2 pi / omega_c at the bell centre omega_c = 3 pi / 2.
inline constexpr double kOscillationPeriod = 4.0 / 3.0;

// env(x) = max |f(t)| over |t| >= x - period/2: the windowed maximum made monotone by the
// tail supremum. Points below rel_floor * sup |f| are dropped and flagged.
[[nodiscard]] Envelope decay_envelope(const GridFunction& samples, std::span<const double> x_grid,
                                      double rel_floor = 1e-15,
                                      double period = kOscillationPeriod);

struct ComparatorRow {
    double x = 0.0;
    double env = 0.0;
    double t_sigma = 0.0;
    double lambert_bound = 0.0; // exp(-(h T + intercept))
    double gevrey2 = 0.0;       // exp(-x^(1/2))
    double gevrey3 = 0.0;       // exp(-x^(1/3))
    double log_tempered = 0.0;  // exp(-x / ln^sigma x)
    double exponential = 0.0;   // exp(-x)
};

struct RatioTrend {
    double slope = 0.0; // least-squares slope against ln x
    double first = 0.0;
    double last = 0.0;
};

struct DecayFitReport {
    double sigma = 0.0;
    double h_fit = 0.0;
    double h_stderr = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    Interval x_range;
    std::size_t used_points = 0;
    std::size_t dropped_points = 0;
    bool comparators = true;
    std::vector<ComparatorRow> table;
    RatioTrend sqrt_ratio;  // (-ln env)/x^(1/2) over the top decade
    RatioTrend log_ratio;   // (-ln env)/ln x over the full range
    double crossover_sqrt = 0.0;   // first x beyond which -ln env < x^(1/2); NaN if none
    double crossover_cbrt = 0.0;   // same for x^(1/3)

    [[nodiscard]] bool slope_ok(double r2_min) const noexcept { return h_fit > 0.0 && r_squared >= r2_min; }
    [[nodiscard]] bool slower_than_subexponential() const noexcept {
        return sqrt_ratio.slope < 0.0 && sqrt_ratio.last < sqrt_ratio.first;
    }
    [[nodiscard]] bool faster_than_polynomial() const noexcept {
        return log_ratio.slope > 0.0 && log_ratio.last > log_ratio.first;
    }
};

// Least squares of -ln env against T_sigma(x). Needs >= 30 usable points over >= 2 decades.
[[nodiscard]] DecayFitReport fit_decay(const Envelope& envelope, double sigma, bool comparators = true);

// Throws VerificationError when h_fit <= 0 or r^2 < r2_min.
void require_decay_fit(const DecayFitReport& report, double r2_min, const std::string& path);

struct DerivativeDecayReport {
    int order = 0;
    DecayFitReport fit;
    double sup = 0.0;
    double imag_residue = 0.0;
    std::optional<double> ln_c_at_target; // max over probes of ln env + h_target T
};

// Envelope regression for psi^(n) synthesized from `spectrum` (sampled at 2 pi / L).
[[nodiscard]] DerivativeDecayReport derivative_decay_check(const SpectralFunction& spectrum, int order,
                                                           std::span<const double> x_probe,
                                                           const LatticeSpec& lattice, double sigma,
                                                           std::optional<double> h_target = std::nullopt,
                                                           double rel_floor = 1e-15);

struct InterceptGrowth {
    double h_common = 0.0;         // min fitted slope over the orders
    double s = 0.0;
    std::vector<int> orders;
    std::vector<double> ln_c;      // ln C_n at h_common
    double ln_k = 0.0;             // smallest ln K with ln C_n <= (n+1) ln K + s ln n!
    bool feasible = false;
};

[[nodiscard]] InterceptGrowth intercept_growth(std::span<const DerivativeDecayReport> reports, double s);

// ---------------------------------------------------------------------------------------
// Mixed weighted-derivative bounds

struct MixedCell {
    int k = 0;
    int q = 0;
    double ln_sup = 0.0;  // ln sup |x^k psi^(q)(x)| over trusted lattice points
    double rhs = 0.0;     // ln sup - s ln k! - tau q^sigma ln q
    double slack = 0.0;   // at the optimum
};

struct MixedAuditReport {
    int k_max = 0;
    int q_max = 0;
    double s = 0.0;
    double tau = 0.0;
    double sigma = 0.0;
    std::vector<MixedCell> cells;
    std::vector<double> trusted_reach; // per q: largest trusted |x|
    double ln_c = 0.0;
    double ln_a = 0.0;
    double ln_b = 0.0;
    bool feasible = false;
    std::vector<std::pair<int, int>> violations;
};

// Minimizes ln C + k_max ln A + q_max ln B subject to
// ln S(k,q) <= ln C + k ln A + q ln B + s ln k! + tau q^sigma ln q by vertex enumeration.
[[nodiscard]] MixedAuditReport mixed_bound_audit(const SpectralFunction& spectrum,
                                                 const LatticeSpec& lattice, int k_max, int q_max,
                                                 double s, const SequenceParams& params,
                                                 double rel_floor = 1e-15);

} // namespace gevwave
