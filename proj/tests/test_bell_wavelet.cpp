#include "gevwave/bell_wavelet.hpp"
#include "gevwave/errors.hpp"
#include "gevwave/mollifier.hpp"
#include "oracles.hpp"

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

const LatticeSynthesis& synthesis() {
    static const LatticeSynthesis syn =
        synthesize_psi_lattice(wavelet().sample(frequency_grid(kPi / 6.0, 17)), LatticeSpec{});
    return syn;
}

} // namespace

TEST_SUITE("bell_wavelet") {

TEST_CASE("theta clamps and complementary symmetry") {
    const double a = kPi / 6.0;
    const GridFunction density = dilate_normalize(build().phi, a, kPi / 2.0);
    const GridFunction th = theta(density);
    for (std::size_t j = 0; j < th.size(); ++j) {
        const double x = th.x(j);
        if (x <= density.support().lo) CHECK(th[j] == 0.0);
        if (x >= density.support().hi) CHECK(th[j] == kPi / 2.0);
    }
    const ThetaFunction fn(density);
    double worst = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
        const double x = 1.2 * a * i / 2000.0 + 1e-7;
        worst = std::max(worst, std::abs(fn(x) + fn(-x) - kPi / 2.0));
    }
    CHECK(worst <= 1e-9);
    CHECK(fn(-a) == 0.0);
    CHECK(fn(a) == kPi / 2.0);
    CHECK_THROWS_AS((void)theta(build().phi), InputError);
}

TEST_CASE("bell support, flat top and partition") {
    const Bell& b = wavelet().bell();
    const double a = b.a();
    const UniformGrid grid = frequency_grid(a, 16);
    for (std::size_t j = 0; j < grid.size; ++j) {
        const double xi = grid.at(j);
        const double z = std::abs(xi);
        if (z >= kPi + a && z <= 2.0 * (kPi - a)) CHECK(b(xi) == 1.0);
        if (z <= kPi - a || z >= 2.0 * (kPi + a)) CHECK(b(xi) == 0.0);
        CHECK(b(xi) == b(-xi));
    }
    // sin^2 + cos^2 of the same angle on each transition band: b(xi)^2 + b(2 xi)^2 = 1 there.
    for (int i = 0; i <= 400; ++i) {
        const double xi = kPi - a + 2.0 * a * i / 400.0;
        CHECK(b(xi) * b(xi) + b(2.0 * xi) * b(2.0 * xi) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(b.outer_edge() < 8.0 * kPi / 3.0 + 1e-12);
}

TEST_CASE("half-width domain") {
    CHECK_THROWS_AS(Bell(1.2, build()), DomainError);
    CHECK_THROWS_AS(Bell(0.0, build()), DomainError);
    CHECK_THROWS_AS(Bell(kMaxBellHalfWidth, build()), DomainError);
    CHECK_NOTHROW(Bell(1.0, build()));
}

TEST_CASE("psi_hat phase and derivative multiplier") {
    const Wavelet& w = wavelet();
    for (double xi : {3.0, 4.5, -5.2, 6.9}) {
        const Complex v = w.psi_hat(xi);
        CHECK(std::abs(v) == doctest::Approx(w.bell()(xi)));
        CHECK(std::abs(v - std::polar(w.bell()(xi), xi / 2.0)) <= 1e-15);
    }
    const SpectralFunction spec = w.sample(frequency_grid(w.a(), 10));
    CHECK(spec.hermitian_error() <= 1e-13);
    const SpectralFunction d0 = psi_derivative_spectrum(spec, 0);
    for (std::size_t j = 0; j < spec.size(); ++j) CHECK(d0[j] == spec[j]);
    const SpectralFunction d1 = psi_derivative_spectrum(spec, 1);
    const long long at_pi = static_cast<long long>(std::llround((kPi - spec.xi0()) / spec.dxi()));
    const auto j = static_cast<std::size_t>(at_pi);
    CHECK(std::abs(d1[j] - Complex{0.0, -spec.xi(j)} * spec[j]) <= 1e-15);
    CHECK_THROWS_AS((void)psi_derivative_spectrum(spec, 41), PreconditionError);
    CHECK_THROWS_AS((void)psi_derivative_spectrum(spec, -1), PreconditionError);
}

TEST_CASE("lattice synthesis: norm, realness and direct-sum oracle") {
    const LatticeSynthesis& syn = synthesis();
    CHECK(std::abs(syn.l2_norm - 1.0) <= 1e-8);
    CHECK(syn.imag_residue <= 1e-12);

    const SpectralFunction spec = wavelet().sample(frequency_grid(kPi / 6.0, 17));
    std::vector<std::pair<double, Complex>> samples;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (spec[j] != Complex{}) samples.emplace_back(spec.xi(j), spec[j]);
    }
    const GridFunction& psi = syn.values;
    for (long long offset : {0LL, 8LL, 9LL, -40LL, 333LL, -4000LL}) {
        const auto j = static_cast<std::size_t>(static_cast<long long>(psi.size() / 2) + offset);
        const Complex ref = oracle::inverse_sum(samples, spec.dxi(), psi.x(j));
        CAPTURE(psi.x(j));
        CHECK(std::abs(psi[j] - ref.real()) <= 1e-12);
        CHECK(std::abs(ref.imag()) <= 1e-12);
    }
}

TEST_CASE("lattice agrees with direct quadrature") {
    const GridFunction& psi = synthesis().values;
    int checked = 0;
    for (std::size_t j = psi.size() / 2 - 128; j < psi.size() / 2 + 128; j += 7) {
        if (std::abs(psi[j]) <= 1e-3) continue;
        const double direct = eval_psi_point(wavelet(), psi.x(j));
        CAPTURE(psi.x(j));
        CHECK(std::abs(psi[j] - direct) <= 1e-8 * std::abs(direct));
        ++checked;
    }
    CHECK(checked >= 20);
    CHECK_THROWS_AS((void)eval_psi_point(wavelet(), std::nan("")), DomainError);
}

TEST_CASE("synthesis preconditions") {
    const SpectralFunction wrong = wavelet().sample(frequency_grid(kPi / 6.0, 16));
    CHECK_THROWS_AS((void)synthesize_psi_lattice(wrong, LatticeSpec{}), InputError);
    const SpectralFunction sparse = wavelet().sample(frequency_grid(kPi / 6.0, 10));
    CHECK_THROWS_AS((void)synthesize_psi_lattice(sparse, LatticeSpec{10, 14}), ResolutionError);
    const SpectralFunction fine = wavelet().sample(frequency_grid(kPi / 6.0, 17));
    CHECK_THROWS_AS((void)synthesize_psi_lattice(fine, LatticeSpec{17, 18}), ResolutionError);
}

TEST_CASE("dilates and translates") {
    const Wavelet& w = wavelet();
    const double dxi = 2.0 * kPi / 4096.0;
    const SpectralFunction m1 = wavelet_member_spectrum(w, {1, 3}, dxi);
    for (std::size_t j = 0; j < m1.size(); j += 97) {
        const double xi = m1.xi(j);
        const Complex expected = std::pow(2.0, -0.5) * std::polar(1.0, 1.5 * xi) * w.psi_hat(xi / 2.0);
        CHECK(std::abs(m1[j] - expected) <= 1e-14);
    }
    CHECK_THROWS_AS((void)wavelet_member_spectrum(w, {31, 0}, dxi), InputError);
}

} // TEST_SUITE
