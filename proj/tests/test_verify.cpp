#include "gevwave/bell_wavelet.hpp"
#include "gevwave/errors.hpp"
#include "gevwave/gevrey_seq.hpp"
#include "gevwave/mollifier.hpp"
#include "gevwave/verify.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

using namespace gevwave;

namespace {

constexpr double kPi = std::numbers::pi;

const MollifierBuild& build() {
    static const MollifierBuild b = build_mollifier(MollifierSpec{});
    return b;
}

const Wavelet& wavelet() {
    static const Wavelet w{Bell(kPi / 6.0, build())};
    return w;
}

// Envelope exactly exp(-(h T_sigma(x) + c)) sampled on a log grid.
Envelope synthetic_envelope(double h, double c, double sigma, double lo, double hi, std::size_t n) {
    Envelope env;
    env.period = kOscillationPeriod;
    env.sup = 1.0;
    for (double x : log_grid(lo, hi, n)) env.points.push_back({x, std::exp(-(h * assoc_t_asym(x, sigma) + c)), false});
    return env;
}

} // namespace

TEST_SUITE("verify") {

TEST_CASE("inner products: direct sum and commensurability") {
    const double dxi = 2.0 * kPi / 4096.0;
    const SpectralFunction f = wavelet_member_spectrum(wavelet(), {0, 0}, dxi);
    const SpectralFunction g = wavelet_member_spectrum(wavelet(), {0, 1}, dxi);
    Complex ref{};
    for (std::size_t j = 0; j < f.size(); ++j) ref += f[j] * std::conj(g[j]);
    ref *= dxi / (2.0 * kPi);
    CHECK(std::abs(inner_product(f, g) - ref) <= 1e-15);
    CHECK(std::abs(inner_product(f, f) - 1.0) <= 1e-7);

    const SpectralFunction odd = wavelet_member_spectrum(wavelet(), {0, 0}, dxi * 1.5);
    CHECK_THROWS_AS((void)inner_product(f, odd), InputError);
    const SpectralFunction coarse = wavelet_member_spectrum(wavelet(), {0, 1}, dxi * 2.0);
    CHECK(std::abs(inner_product(f, coarse)) <= 1e-7);
}

TEST_CASE("Gram matrix: Hermitian, orthonormal, stable under refinement") {
    const double dxi = 2.0 * kPi / 8192.0;
    const GramReport g = gram_matrix(wavelet(), -1, 1, -3, 3, dxi);
    CHECK(g.members() == 21);
    CHECK(g.entries.size() == 21 * 22 / 2);
    for (std::size_t i = 0; i < g.members(); ++i) {
        for (std::size_t j = 0; j < g.members(); ++j) CHECK(g.entry(i, j) == std::conj(g.entry(j, i)));
    }
    CHECK(g.max_diag_dev <= 1e-7);
    CHECK(g.max_offdiag <= 1e-7);
    CHECK_NOTHROW(require_orthonormal(g, 1e-7));
    try {
        require_orthonormal(g, 1e-300);
        FAIL("expected a verification error");
    } catch (const VerificationError& e) {
        CHECK(e.path().starts_with("verify-onw/gram/"));
    }

    const GramReport fine = gram_matrix(wavelet(), -1, 1, -3, 3, dxi / 2.0);
    double moved = 0.0;
    for (std::size_t k = 0; k < g.entries.size(); ++k) {
        moved = std::max(moved, std::abs(g.entries[k].value - fine.entries[k].value));
    }
    CHECK(moved <= 1e-9);
    CHECK_THROWS_AS((void)gram_matrix(wavelet(), 1, 0, 0, 0, dxi), InputError);
}

TEST_CASE("dyadic partition of unity") {
    const double a = wavelet().a();
    const auto grid = default_dyadic_grid(a, 6, 301);
    const DyadicReport rep = dyadic_sum_check(wavelet(), grid, 6);
    CHECK(rep.covered == grid.size());
    CHECK(rep.max_deviation <= 1e-9);
    // Too narrow a window leaves the outer bands uncovered rather than failing them.
    const DyadicReport narrow = dyadic_sum_check(wavelet(), grid, 2);
    CHECK(narrow.covered < grid.size());
    CHECK(narrow.max_deviation <= 1e-9);
    CHECK_THROWS_AS((void)dyadic_sum_check(wavelet(), std::vector<double>{0.0}, 3), InputError);
}

TEST_CASE("completeness: pass, self-test and inconclusive windows") {
    const double dxi = 2.0 * kPi / 65536.0;
    const SpectralFunction f = gaussian_test_spectrum(dxi, 4.0, 0.5, 7.0);
    const CompletenessReport rep = completeness_check(wavelet(), f, 4, 4096);
    CHECK(rep.status == CheckStatus::pass);
    CHECK(std::abs(rep.ratio - 1.0) <= 1e-3);

    const SpectralFunction self = wavelet_member_spectrum(wavelet(), {0, 0}, dxi);
    CHECK(std::abs(completeness_check(wavelet(), self, 2, 512).ratio - 1.0) <= 1e-6);

    const SpectralFunction wide = gaussian_test_spectrum(dxi, 40.0, 4.0, 7.0);
    const CompletenessReport out = completeness_check(wavelet(), wide, 1, 64);
    CHECK(out.status == CheckStatus::inconclusive);
    CHECK(to_string(out.status) == "inconclusive");
    CHECK_THROWS_AS((void)gaussian_test_spectrum(dxi, 1.0, 0.5, 7.0), InputError);
}

TEST_CASE("decay fit recovers a synthetic slope") {
    const Envelope env = synthetic_envelope(0.7, 1.3, 2.0, 1e2, 3e4, 60);
    const DecayFitReport fit = fit_decay(env, 2.0);
    CHECK(fit.h_fit == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(fit.intercept == doctest::Approx(1.3).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.slope_ok(0.9));
    CHECK(fit.slower_than_subexponential());
    CHECK(fit.faster_than_polynomial());
    CHECK(fit.table.size() == 60);
    CHECK_NOTHROW(require_decay_fit(fit, 0.9, "decay-fit/psi"));

    const Envelope flat = synthetic_envelope(-0.2, 0.0, 2.0, 1e2, 3e4, 60);
    try {
        require_decay_fit(fit_decay(flat, 2.0), 0.9, "decay-fit/psi");
        FAIL("expected a verification error");
    } catch (const VerificationError& e) {
        CHECK(e.path() == "decay-fit/psi/h_fit");
    }
    CHECK_THROWS_AS((void)fit_decay(synthetic_envelope(0.7, 1.3, 2.0, 1e2, 3e4, 20), 2.0), InputError);
    CHECK_THROWS_AS((void)fit_decay(synthetic_envelope(0.7, 1.3, 2.0, 1e2, 5e3, 60), 2.0), InputError);
    Envelope floored = synthetic_envelope(0.7, 1.3, 2.0, 1e2, 3e4, 60);
    for (std::size_t i = 25; i < floored.points.size(); ++i) floored.points[i].dropped = true;
    CHECK_THROWS_AS((void)fit_decay(floored, 2.0), ResolutionError);
}

TEST_CASE("regressor is increasing on the fit range") {
    double prev = 0.0;
    for (double x : log_grid(1e2, 3e4, 200)) {
        const double t = assoc_t_asym(x, 2.0);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("envelope is a nonincreasing tail hull") {
    const double a = 0.01;
    const Wavelet w{Bell(a, build())};
    const LatticeSynthesis syn = synthesize_psi_lattice(w.sample(frequency_grid(a, 17)), LatticeSpec{});
    const auto probes = log_grid(10.0, 3e4, 80);
    const Envelope env = decay_envelope(syn.values, probes);
    for (std::size_t i = 1; i < env.points.size(); ++i) CHECK(env.points[i].env <= env.points[i - 1].env);
    CHECK(env.floor == doctest::Approx(1e-15 * env.sup));
    CHECK_THROWS_AS((void)decay_envelope(syn.values, std::vector<double>{1e9}), InputError);
}

TEST_CASE("intercept growth over synthetic fits") {
    std::vector<DerivativeDecayReport> reports;
    for (int n = 0; n <= 4; ++n) {
        DerivativeDecayReport r;
        r.order = n;
        r.fit = fit_decay(synthetic_envelope(0.5 + 0.01 * n, -2.0 * n, 2.0, 1e2, 3e4, 40), 2.0);
        reports.push_back(r);
    }
    const InterceptGrowth g = intercept_growth(reports, 1.0);
    CHECK(g.h_common == doctest::Approx(0.5));
    CHECK(g.feasible);
    for (std::size_t i = 0; i < g.orders.size(); ++i) {
        const int n = g.orders[i];
        CHECK(g.ln_c[i] <= (n + 1) * g.ln_k + std::lgamma(n + 1.0) + 1e-12);
    }
    CHECK_THROWS_AS((void)intercept_growth(std::vector<DerivativeDecayReport>{}, 1.0), InputError);
}

TEST_CASE("mixed audit: constraints hold and the optimum is a vertex") {
    const SpectralFunction spec = wavelet().sample(frequency_grid(kPi / 6.0, 17));
    const LatticeSpec lattice;
    const MixedAuditReport rep = mixed_bound_audit(spec, lattice, 3, 3, 1.0, SequenceParams(1.0, 2.0));
    REQUIRE(rep.feasible);
    CHECK(rep.cells.size() == 16);
    int tight = 0;
    for (const auto& c : rep.cells) {
        CHECK(c.slack >= -1e-9);
        if (std::abs(c.slack) <= 1e-9) ++tight;
    }
    CHECK(tight >= 3);

    // (k, q) = (0, 0) is the plain sup of psi over the trusted lattice.
    const LatticeSynthesis syn = synthesize_psi_lattice(spec, lattice);
    CHECK(rep.cells.front().ln_sup == doctest::Approx(std::log(syn.values.sup_abs())).epsilon(1e-12));

    const MixedAuditReport k0 = mixed_bound_audit(spec, lattice, 0, 4, 1.0, SequenceParams(1.0, 2.0));
    CHECK(k0.feasible);
    CHECK(k0.ln_a == 0.0);
    CHECK_THROWS_AS((void)mixed_bound_audit(spec, lattice, 11, 0, 1.0, SequenceParams(1.0, 2.0)), PreconditionError);
    CHECK_THROWS_AS((void)mixed_bound_audit(spec, lattice, 1, 1, 1.5, SequenceParams(1.0, 2.0)), DomainError);
}

} // TEST_SUITE
