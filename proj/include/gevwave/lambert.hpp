#pragma once

#include <span>
#include <vector>

namespace gevwave {

struct WEvalConfig {
    double abs_tol = 1e-13; // residual tolerance relative to max(1, x)
    int max_iter = 64;
};

// Principal branch W0 on [0, inf) by Halley iteration on w*e^w = x.
// Throws DomainError for negative/non-finite x, ConvergenceError when the cap is hit.
[[nodiscard]] double lambert_w0(double x, const WEvalConfig& cfg = {});

struct WBoundPoint {
    double x = 0.0;
    double w = 0.0;
    double lower = 0.0; // ln x - ln ln x
    double upper = 0.0; // ln x - 0.5 ln ln x
    [[nodiscard]] double lower_slack() const noexcept { return w - lower; }
    [[nodiscard]] double upper_slack() const noexcept { return upper - w; }
};

struct WBoundReport {
    std::vector<WBoundPoint> points;
    double min_lower_slack = 0.0;
    double min_upper_slack = 0.0;
    [[nodiscard]] bool holds() const noexcept { return min_lower_slack >= 0.0 && min_upper_slack >= 0.0; }
};

// Two-sided logarithmic bounds for x >= e. Throws DomainError for any x < e.
[[nodiscard]] WBoundReport w_bounds_check(std::span<const double> x_grid, const WEvalConfig& cfg = {});

} // namespace gevwave
