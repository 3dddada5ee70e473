#include "gevwave/errors.hpp"
#include "gevwave/mollifier.hpp"
#include "oracles.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include <doctest.h>

using namespace gevwave;

namespace {

const MollifierBuild& default_build() {
    static const MollifierBuild build = build_mollifier(MollifierSpec{});
    return build;
}

double sup_gap(const GridFunction& f, const GridFunction& g) {
    double gap = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) gap = std::max(gap, std::abs(f[j] - g[j]));
    return gap;
}

} // namespace

TEST_SUITE("mollifier") {

TEST_CASE("bump normalizer agrees with adaptive Simpson") {
    const double integral =
        oracle::simpson([](double x) { return std::abs(x) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - x * x)); }, -1.0,
                        1.0, 1e-15);
    CHECK(bump_normalizer() == doctest::Approx(1.0 / integral).epsilon(1e-12));
    CHECK(bump_normalizer() == doctest::Approx(2.252283621043581).epsilon(1e-13));
    CHECK(base_sup(BaseKernel::box) == 0.5);
    CHECK(base_sup(BaseKernel::smooth_bump) == doctest::Approx(bump_normalizer() / std::exp(1.0)));
    CHECK(base_derivative_l1(BaseKernel::box) == 1.0);
}

TEST_CASE("sampled bump integrates to one") {
    const GridFunction f = base_bump(UniformGrid{-1.5, 3.0 / 4096.0, 4097});
    CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.min() >= 0.0);
    CHECK(f.evenness_error() <= 1e-15);
    CHECK_THROWS_AS((void)base_bump(UniformGrid{-1.5, 1.0, 4}), InputError);
}

TEST_CASE("base kernel names") {
    CHECK(parse_base_kernel("box") == BaseKernel::box);
    CHECK(parse_base_kernel(to_string(BaseKernel::smooth_bump)) == BaseKernel::smooth_bump);
    CHECK_THROWS_AS((void)parse_base_kernel("gauss"), InputError);
}

TEST_CASE("block thresholds and scales") {
    const std::vector<std::size_t> expected{1, 2, 4, 6, 8, 10, 13, 15, 18};
    CHECK(block_thresholds(2.0, 8) == expected);
    CHECK(block_scale(2.0, 1, 1) == doctest::Approx(0.25));
    CHECK(block_scale(2.0, 2, 2) == doctest::Approx(std::pow(6.0, -1.0)));
    // Direct tail sums of each block stay below 2^-m from its threshold on.
    for (int m = 1; m <= 9; ++m) {
        double tail = 0.0;
        for (std::size_t p = expected[static_cast<std::size_t>(m - 1)]; p < 4000; ++p) tail += block_scale(2.0, m, p);
        CHECK(tail < std::ldexp(1.0, -m));
    }
    CHECK_THROWS_AS((void)block_thresholds(1.0, 8), DomainError);
    CHECK_THROWS_AS((void)block_thresholds(2.0, 0), DomainError);
}

TEST_CASE("scale sequence truncation") {
    const auto thresholds = block_thresholds(2.0, 8);
    const ScaleSequence seq = scale_sequence(2.0, thresholds, 4.0 * 3.0 / 131072.0);
    CHECK(seq.count() == 17);
    CHECK(seq.first_index == 1);
    CHECK(seq.trunc_index == 17);
    CHECK(seq.total() == doctest::Approx(0.580683).epsilon(1e-6));
    CHECK(seq.total() < 1.0);
    CHECK_FALSE(seq.degenerate);
    const ScaleSequence tiny = scale_sequence(2.0, thresholds, 10.0);
    CHECK(tiny.degenerate);
    CHECK(tiny.count() == 1);
    CHECK_THROWS_AS((void)scale_sequence(2.0, thresholds, 0.0), DomainError);
}

TEST_CASE("default build certificates") {
    const MollifierBuild& b = default_build();
    const GridFunction& phi = b.phi;
    CHECK(phi.support().lo >= -1.0);
    CHECK(phi.support().hi <= 1.0);
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (std::abs(phi.x(j)) > 1.0) CHECK(phi[j] == 0.0);
    }
    CHECK(std::abs(phi.integral() - 1.0) <= 1e-8);
    CHECK(phi.min() >= 0.0);
    CHECK(phi.evenness_error() <= 1e-10);
    CHECK(b.mass_drift <= 1e-8);
    CHECK(b.min_before_clamp >= -1e-12);
}

TEST_CASE("derivative audit dominance") {
    const DerivativeAudit audit = derivative_bound_audit(default_build(), 12);
    CHECK(audit.rows.size() == 13);
    for (const auto& row : audit.rows) {
        CAPTURE(row.order);
        CHECK(row.within(1e-3));
    }
    CHECK(audit.passed());
    CHECK(std::isfinite(audit.growth.tau_eff));
    CHECK_THROWS_AS((void)derivative_bound_audit(default_build(), 13), PreconditionError);
    CHECK_THROWS_AS((void)derivative_bound_audit(default_build(), 0), PreconditionError);
}

TEST_CASE("smooth bump base builds and passes the audit") {
    MollifierSpec spec;
    spec.base = BaseKernel::smooth_bump;
    const MollifierBuild b = build_mollifier(spec);
    CHECK(std::abs(b.phi.integral() - 1.0) <= 1e-8);
    CHECK(b.phi.min() >= 0.0);
    CHECK(derivative_bound_audit(b, 8).passed());
}

TEST_CASE("truncation levels: sup monotone and consecutive gaps bounded") {
    const MollifierBuild& full = default_build();
    // Distinct truncation levels reached by sweeping the cutoff through the retained scales.
    std::map<std::size_t, MollifierBuild> levels;
    for (std::size_t c = 1; c < full.sequence.count(); ++c) {
        MollifierSpec spec;
        spec.cutoff = full.sequence.scales[c] * (1.0 + 1e-12);
        MollifierBuild b = build_mollifier(spec);
        const std::size_t count = b.sequence.count();
        levels.emplace(count, std::move(b));
    }
    levels.emplace(full.sequence.count(), full);
    REQUIRE(levels.size() >= 5);

    const MollifierBuild* prev = nullptr;
    for (const auto& [count, b] : levels) {
        if (prev != nullptr) {
            CAPTURE(count);
            CHECK(b.phi.sup_abs() <= prev->phi.sup_abs() * (1.0 + 1e-12));
            double added = 0.0;
            for (std::size_t i = prev->sequence.count(); i < count; ++i) added += b.sequence.scales[i];
            const double slope = spectral_derivative_sups(prev->phi, 1, 1e-13)[1];
            CHECK(sup_gap(b.phi, prev->phi) <= slope * added);
        }
        prev = &b;
    }
}

TEST_CASE("resolution and drift guards") {
    MollifierSpec coarse;
    coarse.grid = SpaceGrid{1.5, 8};
    coarse.cutoff = 1e-3;
    CHECK_THROWS_AS((void)build_mollifier(coarse), ResolutionError);
    MollifierSpec strict;
    strict.max_mass_drift = 1e-30;
    CHECK_THROWS_AS((void)build_mollifier(strict), ResolutionError);
    MollifierSpec bad;
    bad.sigma = 1.0;
    CHECK_THROWS_AS((void)build_mollifier(bad), DomainError);
}

TEST_CASE("dilation and renormalization") {
    const GridFunction& phi = default_build().phi;
    const GridFunction same = dilate_normalize(phi, 1.0, 1.0);
    CHECK(sup_gap(same, phi) == 0.0);

    const GridFunction half = dilate_normalize(phi, 0.5, 1.0);
    CHECK(half.sup_abs() == doctest::Approx(2.0 * phi.sup_abs()).epsilon(1e-12));
    CHECK(half.integral() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(half.support().hi <= 0.5 * phi.support().hi + 1e-15);

    const GridFunction bell_cut = dilate_normalize(phi, 0.3, std::numbers::pi / 2.0);
    CHECK(bell_cut.integral() == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));

    // Off-node target: Hermite resampling keeps the mass.
    const UniformGrid target{-0.5, 0.3 / 4000.0, 13334};
    const GridFunction moved = dilate_normalize(phi, 0.3, 1.0, target);
    CHECK(moved.integral() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS((void)dilate_normalize(phi, 0.3, 1.0, UniformGrid{-0.5, 0.1, 11}), ResolutionError);
    CHECK_THROWS_AS((void)dilate_normalize(phi, -1.0, 1.0), DomainError);
}

} // TEST_SUITE
