#include "gevwave/gevrey_seq.hpp"

#include "gevwave/errors.hpp"
#include "gevwave/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace gevwave {

namespace {

constexpr std::size_t kSearchCap = 10'000'000;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double term(std::size_t p, double ln_k, const SequenceParams& params) {
    return static_cast<double>(p) * ln_k - log_m(p, params);
}

void fill_asymptotic(AssocFnReport& r, const SequenceParams& params) {
    if (r.k > std::numbers::e && !params.is_comparison()) {
        r.t_asym = assoc_t_asym(r.k, params.sigma());
        const double scale = std::pow(params.tau(), -1.0 / (params.sigma() - 1.0));
        r.ratio = r.t_exact / (scale * r.t_asym);
    } else {
        r.t_asym = kNaN;
        r.ratio = kNaN;
    }
}

} // namespace

SequenceParams::SequenceParams(double tau, double sigma) : SequenceParams(tau, sigma, false) {
    if (!(sigma > 1.0)) {
        throw DomainError(fmt::format("sigma must exceed 1 (got {})", sigma));
    }
}

SequenceParams::SequenceParams(double tau, double sigma, bool comparison)
    : tau_(tau), sigma_(sigma), comparison_(comparison) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError(fmt::format("tau must be positive and finite (got {})", tau));
    }
    if (!std::isfinite(sigma)) throw DomainError("sigma must be finite");
}

SequenceParams SequenceParams::gevrey_comparison(double tau) { return {tau, 1.0, true}; }

double log_m(std::size_t p, const SequenceParams& params) {
    if (p < 2) return 0.0;
    const auto pd = static_cast<double>(p);
    return params.tau() * std::pow(pd, params.sigma()) * std::log(pd);
}

LogSequence::LogSequence(const SequenceParams& params, std::size_t p_max) : params_(params) {
    values_.reserve(p_max + 1);
    for (std::size_t p = 0; p <= p_max; ++p) values_.push_back(log_m(p, params));
}

SeqAuditReport seq_property_audit(const SequenceParams& params, std::size_t p_max) {
    if (p_max < 3) throw PreconditionError("sequence audit needs p_max >= 3");
    const LogSequence seq(params, 2 * p_max);
    const double tau = params.tau();
    const double sigma = params.sigma();

    SeqAuditReport report;
    report.p_max = p_max;

    report.min_convexity_margin = std::numeric_limits<double>::infinity();
    for (std::size_t p = 1; p < p_max; ++p) {
        const double margin = seq[p + 1] + seq[p - 1] - 2.0 * seq[p];
        // Relative rounding allowance: the three terms reach ~1e3 for moderate p.
        if (margin < -1e-12 * std::max(1.0, std::abs(seq[p + 1]))) {
            throw VerificationError(fmt::format("gevrey_seq/log_convexity/p={}", p),
                                    fmt::format("log-convexity fails at p = {}", p));
        }
        report.min_convexity_margin = std::min(report.min_convexity_margin, margin);
    }

    report.min_ratio_slack = std::numeric_limits<double>::infinity();
    const std::size_t ratio_start = params.is_comparison() ? 2 : 1;
    for (std::size_t p = ratio_start; p <= p_max; ++p) {
        const auto pd = static_cast<double>(p);
        const double bound = -tau * std::pow(pd - 1.0, sigma - 1.0) * std::log(2.0 * pd);
        const double slack = bound - (seq[p - 1] - seq[p]);
        if (slack < -1e-12 * std::max(1.0, std::abs(bound))) {
            throw VerificationError(fmt::format("gevrey_seq/ratio_bound/p={}", p),
                                    fmt::format("ratio bound fails at p = {}", p));
        }
        report.min_ratio_slack = std::min(report.min_ratio_slack, slack);
        report.ratio_series_partial += std::exp(seq[p - 1] - seq[p]);
    }

    const SequenceParams doubled = params.is_comparison()
                                       ? SequenceParams::gevrey_comparison(std::pow(2.0, sigma - 1.0) * tau)
                                       : SequenceParams(std::pow(2.0, sigma - 1.0) * tau, sigma);
    report.min_ln_c = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= p_max; ++p) {
        for (std::size_t q = 0; q <= p_max; ++q) {
            const double weight = std::pow(static_cast<double>(p), sigma) +
                                  std::pow(static_cast<double>(q), sigma);
            const double excess = seq[p + q] - log_m(p, doubled) - log_m(q, doubled);
            if (weight == 0.0) {
                if (excess > 0.0) {
                    throw VerificationError(fmt::format("gevrey_seq/split/p={},q={}", p, q),
                                            "split inequality infeasible at (0, 0)");
                }
                continue;
            }
            const double needed = excess / weight;
            if (needed > report.min_ln_c) {
                report.min_ln_c = needed;
                report.ln_c_argmax = {p, q};
            }
        }
    }
    if (!std::isfinite(report.min_ln_c)) {
        throw VerificationError("gevrey_seq/split", "no finite constant for the split inequality");
    }

    // The ratio series diverges exactly in the sigma = 1, tau <= 1 case.
    report.quasianalytic = params.is_comparison() && tau <= 1.0;
    return report;
}

AssocFnReport assoc_t_exact(double k, const SequenceParams& params) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw DomainError(fmt::format("associated function needs finite k > 0 (got {})", k));
    }
    const double ln_k = std::log(k);
    AssocFnReport r;
    r.k = k;
    double best = 0.0;
    double prev = 0.0;
    int falls = 0;
    for (std::size_t p = 1; p < kSearchCap; ++p) {
        const double t = term(p, ln_k, params);
        if (t > best) {
            best = t;
            r.argmax_p = p;
        }
        falls = (t < prev && t < best) ? falls + 1 : 0;
        prev = t;
        if (falls >= 3) {
            r.t_exact = best;
            fill_asymptotic(r, params);
            return r;
        }
    }
    throw ConvergenceError(fmt::format("associated-function search did not terminate for k = {}", k),
                           best);
}

AssocFnReport assoc_t_enumerate(double k, const SequenceParams& params, std::size_t p_max) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw DomainError(fmt::format("associated function needs finite k > 0 (got {})", k));
    }
    const double ln_k = std::log(k);
    AssocFnReport r;
    r.k = k;
    for (std::size_t p = 1; p <= p_max; ++p) {
        const double t = term(p, ln_k, params);
        if (t > r.t_exact) {
            r.t_exact = t;
            r.argmax_p = p;
        }
    }
    fill_asymptotic(r, params);
    return r;
}

double assoc_t_asym(double k, double sigma) {
    if (!(k > std::numbers::e) || !std::isfinite(k)) {
        throw DomainError(fmt::format("asymptotic associated function needs k > e (got {})", k));
    }
    if (!(sigma > 1.0)) throw DomainError(fmt::format("sigma must exceed 1 (got {})", sigma));
    const double ln_k = std::log(k);
    const double w = lambert_w0(ln_k);
    return std::pow(ln_k, sigma / (sigma - 1.0)) / std::pow(w, 1.0 / (sigma - 1.0));
}

AssocBoundFit fit_assoc_bounds(const SequenceParams& params, std::span<const double> k_grid) {
    if (params.is_comparison()) throw InputError("bound fit needs sigma > 1");
    if (k_grid.size() < 20) {
        throw InputError(fmt::format("bound fit needs at least 20 points (got {})", k_grid.size()));
    }
    AssocBoundFit fit;
    fit.min_ratio = std::numeric_limits<double>::infinity();
    fit.max_ratio = 0.0;
    double prev = 0.0;
    for (double k : k_grid) {
        if (!(k >= 1e2 && k <= 1e14)) {
            throw InputError(fmt::format("bound fit grid point {} outside [1e2, 1e14]", k));
        }
        if (k <= prev) throw InputError("bound fit grid must be strictly increasing");
        prev = k;
        AssocFnReport r = assoc_t_exact(k, params);
        fit.min_ratio = std::min(fit.min_ratio, r.ratio);
        fit.max_ratio = std::max(fit.max_ratio, r.ratio);
        fit.rows.push_back(r);
    }
    if (!(fit.min_ratio > 0.0)) throw InputError("bound fit grid yields a vanishing ratio");
    return fit;
}

namespace comparator {

double exponential(double x) { return x; }

double subexponential(double x, double sigma_prime) { return std::pow(x, 1.0 / sigma_prime); }

double log_tempered(double x, double sigma) { return x / std::pow(std::log(x), sigma); }

} // namespace comparator

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw InputError(fmt::format("log grid needs 0 < lo < hi and >= 2 points (got {}, {}, {})",
                                     lo, hi, points));
    }
    std::vector<double> grid(points);
    const double llo = std::log(lo);
    const double step = (std::log(hi) - llo) / static_cast<double>(points - 1);
    for (std::size_t j = 0; j < points; ++j) grid[j] = std::exp(llo + step * static_cast<double>(j));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

} // namespace gevwave
