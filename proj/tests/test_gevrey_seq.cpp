#include "gevwave/errors.hpp"
#include "gevwave/gevrey_seq.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

using namespace gevwave;

TEST_SUITE("gevrey_seq") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SequenceParams(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(SequenceParams(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(SequenceParams(-1.0, 2.0), DomainError);
    const SequenceParams cmp = SequenceParams::gevrey_comparison(1.0);
    CHECK(cmp.is_comparison());
    CHECK(cmp.sigma() == 1.0);
    CHECK_FALSE(SequenceParams(1.0, 2.0).is_comparison());
}

TEST_CASE("log-domain sequence values") {
    const SequenceParams params(1.0, 2.0);
    CHECK(log_m(0, params) == 0.0);
    CHECK(log_m(1, params) == 0.0);
    CHECK(log_m(2, params) == doctest::Approx(4.0 * std::log(2.0)));
    CHECK(log_m(3, SequenceParams(0.5, 3.0)) == doctest::Approx(0.5 * 27.0 * std::log(3.0)));
    const LogSequence seq(params, 10);
    CHECK(seq.p_max() == 10);
    CHECK(seq[10] == doctest::Approx(100.0 * std::log(10.0)));
}

TEST_CASE("sequence audit for representative parameters") {
    for (auto [tau, sigma] : {std::pair{1.0, 2.0}, {0.5, 2.0}, {1.0, 3.0}, {2.0, 1.5}}) {
        CAPTURE(tau);
        CAPTURE(sigma);
        const SeqAuditReport rep = seq_property_audit(SequenceParams(tau, sigma), 40);
        CHECK(rep.min_convexity_margin >= 0.0);
        CHECK(rep.min_ratio_slack >= -1e-12);
        CHECK(std::isfinite(rep.min_ln_c));
        CHECK_FALSE(rep.quasianalytic);
        CHECK(rep.ratio_series_partial < 10.0);
    }
    const SeqAuditReport gev = seq_property_audit(SequenceParams::gevrey_comparison(1.0), 40);
    CHECK(gev.quasianalytic);
    CHECK_THROWS_AS((void)seq_property_audit(SequenceParams(1.0, 2.0), 2), PreconditionError);
}

TEST_CASE("associated function fixtures") {
    const SequenceParams params(1.0, 2.0);
    const AssocFnReport r = assoc_t_exact(1e6, params);
    CHECK(r.t_exact == doctest::Approx(33.08133245393885).epsilon(1e-13));
    CHECK(r.argmax_p == 4);
    CHECK(assoc_t_asym(1e12, 2.0) == doctest::Approx(314.0905982461799).epsilon(1e-12));
    for (double k : {0.25, 0.5, 1.0}) CHECK(assoc_t_exact(k, params).t_exact == 0.0);
    CHECK(std::isnan(assoc_t_exact(2.0, params).t_asym));
    CHECK_THROWS_AS((void)assoc_t_asym(2.0, 2.0), DomainError);
    CHECK_THROWS_AS((void)assoc_t_exact(-1.0, params), DomainError);
}

TEST_CASE("terminating search equals the enumeration oracle") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log_k(std::log(3.0), std::log(1e14));
    std::uniform_real_distribution<double> tau_d(0.1, 4.0);
    std::uniform_real_distribution<double> sigma_d(1.2, 3.5);
    for (int i = 0; i < 100; ++i) {
        const double k = std::exp(log_k(rng));
        const double tau = tau_d(rng);
        const double sigma = sigma_d(rng);
        CAPTURE(k);
        CAPTURE(tau);
        CAPTURE(sigma);
        const SequenceParams params(tau, sigma);
        const AssocFnReport fast = assoc_t_exact(k, params);
        const oracle::AssocValue ref = oracle::assoc_enumerate(k, tau, sigma, 10 * fast.argmax_p + 50);
        CHECK(fast.t_exact == doctest::Approx(ref.t).epsilon(1e-12));
        CHECK(fast.argmax_p == ref.argmax);
        const AssocFnReport full = assoc_t_enumerate(k, params, 10 * fast.argmax_p + 50);
        CHECK(full.t_exact == fast.t_exact);
    }
}

TEST_CASE("monotone and shift-dominated in k") {
    for (auto [tau, sigma] : {std::pair{1.0, 2.0}, {0.5, 2.0}, {1.0, 3.0}}) {
        const SequenceParams params(tau, sigma);
        const auto grid = log_grid(10.0, 1e12, 300);
        double prev = 0.0;
        for (double k : grid) {
            const double t = assoc_t_exact(k, params).t_exact;
            CHECK(t >= prev);
            prev = t;
            for (double shift : {0.5, 3.0}) {
                CHECK(t <= (1.0 + 1e-9) * assoc_t_exact(k + shift, params).t_exact);
            }
        }
    }
}

TEST_CASE("exact-versus-asymptotic sandwich") {
    const auto grid = log_grid(1e3, 1e12, 40);
    for (auto [tau, sigma] : {std::pair{1.0, 2.0}, {0.5, 2.0}, {1.0, 3.0}}) {
        CAPTURE(tau);
        CAPTURE(sigma);
        const SequenceParams params(tau, sigma);
        const AssocBoundFit fit = fit_assoc_bounds(params, grid);
        CHECK(fit.band() <= 10.0);
        const double scale = std::pow(tau, -1.0 / (sigma - 1.0));
        for (const auto& row : fit.rows) {
            const double ref = oracle::assoc_enumerate(row.k, tau, sigma).t;
            CHECK(row.t_exact == doctest::Approx(ref).epsilon(1e-12));
            CHECK(fit.min_ratio * scale * row.t_asym <= row.t_exact * (1.0 + 1e-12));
            CHECK(row.t_exact <= fit.max_ratio * scale * row.t_asym * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("tau scaling at sigma = 2 approaches 1/tau") {
    double previous = INFINITY;
    for (double k : {1e8, 1e12, 1e50, 1e100, 1e300}) {
        const double t1 = assoc_t_exact(k, SequenceParams(1.0, 2.0)).t_exact;
        const double t16 = assoc_t_exact(k, SequenceParams(16.0, 2.0)).t_exact;
        const double scaled = 16.0 * t16 / t1;
        CHECK(scaled > 1.0);
        CHECK(scaled < 10.0);
        CHECK(scaled < previous);
        previous = scaled;
    }
}

TEST_CASE("bound fit rejects degenerate grids") {
    const SequenceParams params(1.0, 2.0);
    CHECK_THROWS_AS((void)fit_assoc_bounds(params, log_grid(1e3, 1e12, 10)), InputError);
    CHECK_THROWS_AS((void)fit_assoc_bounds(params, log_grid(1e1, 1e12, 40)), InputError);
    std::vector<double> flat(30, 1e5);
    CHECK_THROWS_AS((void)fit_assoc_bounds(params, flat), InputError);
    CHECK_THROWS_AS((void)fit_assoc_bounds(SequenceParams::gevrey_comparison(1.0), log_grid(1e3, 1e12, 40)),
                    InputError);
    CHECK_THROWS_AS((void)log_grid(0.0, 1.0, 10), InputError);
}

TEST_CASE("comparator rates") {
    CHECK(comparator::exponential(7.0) == 7.0);
    CHECK(comparator::subexponential(64.0, 3.0) == doctest::Approx(4.0));
    CHECK(comparator::log_tempered(std::exp(2.0), 2.0) == doctest::Approx(std::exp(2.0) / 4.0));
}

} // TEST_SUITE
