#include "gevwave/lambert.hpp"

#include "gevwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace gevwave {

namespace {

double halley_step(double w, double x, double& residual) {
    const double ew = std::exp(w);
    residual = w * ew - x;
    return residual / (ew * (w + 1.0) - (w + 2.0) * residual / (2.0 * w + 2.0));
}

// One extra step after convergence; kept only if the residual does not grow.
double polish(double w, double x, double residual) {
    double unused = 0.0;
    const double candidate = std::max(w - halley_step(w, x, unused), 0.0);
    double after = 0.0;
    (void)halley_step(candidate, x, after);
    return std::abs(after) <= std::abs(residual) ? candidate : w;
}

double initial_guess(double x) {
    if (x < std::numbers::e) return x < 0.5 ? x * (1.0 - x) : x;
    const double lx = std::log(x);
    return lx - std::log(lx);
}

} // namespace

double lambert_w0(double x, const WEvalConfig& cfg) {
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError(fmt::format("lambert_w0 needs a finite x >= 0 (got {})", x));
    }
    if (!(cfg.abs_tol > 0.0) || cfg.max_iter < 1) {
        throw DomainError("lambert_w0 needs abs_tol > 0 and max_iter >= 1");
    }
    if (x == 0.0) return 0.0;

    const double tol = cfg.abs_tol * std::max(1.0, x);
    double w = initial_guess(x);
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double step = halley_step(w, x, residual);
        if (std::abs(residual) <= tol) return polish(w, x, residual);
        w = std::max(w - step, 0.0);
    }
    residual = w * std::exp(w) - x;
    if (std::abs(residual) <= tol) return polish(w, x, residual);
    throw ConvergenceError(
        fmt::format("lambert_w0({}) did not converge in {} iterations", x, cfg.max_iter), residual);
}

WBoundReport w_bounds_check(std::span<const double> x_grid, const WEvalConfig& cfg) {
    WBoundReport report;
    report.min_lower_slack = std::numeric_limits<double>::infinity();
    report.min_upper_slack = std::numeric_limits<double>::infinity();
    report.points.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x >= std::numbers::e)) {
            throw DomainError(fmt::format("bounds are stated for x >= e (got {})", x));
        }
        const double lx = std::log(x);
        const double llx = std::log(lx);
        WBoundPoint pt{x, lambert_w0(x, cfg), lx - llx, lx - 0.5 * llx};
        report.min_lower_slack = std::min(report.min_lower_slack, pt.lower_slack());
        report.min_upper_slack = std::min(report.min_upper_slack, pt.upper_slack());
        report.points.push_back(pt);
    }
    return report;
}

} // namespace gevwave
