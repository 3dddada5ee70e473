#include "gevwave/errors.hpp"
#include "gevwave/gevrey_seq.hpp"
#include "gevwave/lambert.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

using namespace gevwave;

TEST_SUITE("lambert") {

TEST_CASE("fixed points of the principal branch") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("values agree with the bisection oracle") {
    for (double x : {1e-6, 0.3, 1.0, 10.0, 1e3, 1e6, 1e8, std::exp(std::numbers::e)}) {
        CAPTURE(x);
        const double ref = oracle::lambert_bisect(x);
        CHECK(lambert_w0(x) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(oracle::lambert_bisect(10.0) == doctest::Approx(1.7455280027406994).epsilon(1e-14));
    CHECK(lambert_w0(10.0) == doctest::Approx(1.7455280027406994).epsilon(1e-13));
    CHECK(lambert_w0(1e6) == doctest::Approx(11.383358086140053).epsilon(1e-13));
    CHECK(lambert_w0(std::exp(std::numbers::e)) == doctest::Approx(2.0167797648922006).epsilon(1e-13));
}

TEST_CASE("defining identity on a log grid") {
    double worst = 0.0;
    for (double x : log_grid(1e-6, 1e8, 1000)) {
        const double w = lambert_w0(x);
        worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::max(1.0, x));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("round trip through w e^w") {
    for (int i = 0; i <= 500; ++i) {
        const double w = 50.0 * i / 500.0;
        CAPTURE(w);
        CHECK(lambert_w0(w * std::exp(w)) == doctest::Approx(w).epsilon(1e-10));
    }
}

TEST_CASE("monotone and concave on uniform grids") {
    for (double hi : {1.0, 10.0, 1e4}) {
        std::vector<double> w;
        for (int i = 0; i <= 400; ++i) w.push_back(lambert_w0(hi * i / 400.0));
        for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] - w[i - 1] >= 0.0);
        for (std::size_t i = 1; i + 1 < w.size(); ++i) CHECK(w[i + 1] - 2.0 * w[i] + w[i - 1] <= 1e-13);
    }
}

TEST_CASE("logarithmic asymptote") {
    const auto grid = log_grid(1e2, 1e8, 50);
    double prev = std::numeric_limits<double>::infinity();
    for (double x : grid) {
        const double dev = std::abs(lambert_w0(x) / std::log(x) - 1.0);
        CHECK(dev <= prev);
        prev = dev;
    }
    CHECK(prev <= 0.25);
}

TEST_CASE("two-sided bounds above e") {
    const WBoundReport at_e = w_bounds_check(std::vector<double>{std::numbers::e});
    CHECK(std::abs(at_e.min_lower_slack) <= 1e-15);
    CHECK(std::abs(at_e.min_upper_slack) <= 1e-15);

    const WBoundReport big = w_bounds_check(std::vector<double>{1e6});
    const auto& p = big.points.front();
    CHECK(p.lower == doctest::Approx(11.1896).epsilon(1e-4));
    CHECK(p.upper == doctest::Approx(12.5026).epsilon(1e-4));
    CHECK(big.holds());

    const double ee = std::exp(std::numbers::e);
    const WBoundReport mid = w_bounds_check(std::vector<double>{ee});
    CHECK(mid.points.front().lower == doctest::Approx(std::numbers::e - 1.0));
    CHECK(mid.points.front().upper == doctest::Approx(std::numbers::e - 0.5));
    CHECK(mid.holds());

    auto grid = log_grid(std::numbers::e * (1.0 + 1e-6), 1e8, 400);
    const WBoundReport strict = w_bounds_check(grid);
    CHECK(strict.min_lower_slack > 0.0);
    CHECK(strict.min_upper_slack > 0.0);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS((void)lambert_w0(-1.0), DomainError);
    CHECK_THROWS_AS((void)lambert_w0(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS((void)lambert_w0(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS((void)w_bounds_check(std::vector<double>{2.0}), DomainError);
    try {
        (void)lambert_w0(1e8, WEvalConfig{1e-13, 1});
        FAIL("expected a convergence error");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.last_residual()));
        CHECK(std::abs(e.last_residual()) > 1e-13 * 1e8);
    }
}

} // TEST_SUITE
