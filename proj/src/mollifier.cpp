#include "gevwave/mollifier.hpp"

#include "gevwave/errors.hpp"
#include "gevwave/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

namespace gevwave {

namespace {

constexpr std::size_t kTailTermCap = 10'000'000;
constexpr double kTailTermFloor = 1e-30;
const Complex kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

double bump_shape(double u) {
    const double s = 1.0 - u * u;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double block_tail(double sigma, int m, std::size_t from) {
    double sum = 0.0;
    for (std::size_t p = from; p < from + kTailTermCap; ++p) {
        const double t = block_scale(sigma, m, p);
        sum += t;
        if (t < kTailTermFloor) return sum;
    }
    throw ConvergenceError(fmt::format("block {} tail from p = {} did not fall below {}", m, from,
                                       kTailTermFloor),
                           sum);
}

// Cell averages of the base kernel dilated to half width a, on the cell centred at x.
double cell_average(BaseKernel base, double a, double x, double dx) {
    const double lo = std::max(x - 0.5 * dx, -a);
    const double hi = std::min(x + 0.5 * dx, a);
    if (hi <= lo) return 0.0;
    if (base == BaseKernel::box) return (hi - lo) / (2.0 * a * dx);
    const double integral =
        boost::math::quadrature::gauss<double, 20>::integrate(bump_shape, lo / a, hi / a);
    return bump_normalizer() * integral / dx;
}

std::size_t wrap(long long j, std::size_t n) {
    const auto nn = static_cast<long long>(n);
    return static_cast<std::size_t>(((j % nn) + nn) % nn);
}

// Fits y ~ c1 * x1 + c2 * x2 (no intercept) by normal equations.
std::pair<double, double> two_term_fit(std::span<const double> x1, std::span<const double> x2,
                                       std::span<const double> y) {
    double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        s11 += x1[i] * x1[i];
        s12 += x1[i] * x2[i];
        s22 += x2[i] * x2[i];
        t1 += x1[i] * y[i];
        t2 += x2[i] * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 0.0)) throw InputError("growth fit is degenerate");
    return {(t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det};
}

} // namespace

std::string to_string(BaseKernel base) {
    return base == BaseKernel::box ? "box" : "smooth_bump";
}

BaseKernel parse_base_kernel(const std::string& name) {
    if (name == "box") return BaseKernel::box;
    if (name == "smooth_bump") return BaseKernel::smooth_bump;
    throw InputError(fmt::format("unknown base kernel '{}' (expected box or smooth_bump)", name));
}

double bump_normalizer() {
    static const double c = [] {
        boost::math::quadrature::tanh_sinh<double> integrator;
        return 1.0 / integrator.integrate(bump_shape, -1.0, 1.0);
    }();
    return c;
}

GridFunction base_bump(const UniformGrid& grid) {
    const Interval ext = grid.extent();
    if (ext.lo > -1.0 || ext.hi < 1.0) {
        throw InputError(fmt::format("bump grid [{}, {}] must cover [-1, 1]", ext.lo, ext.hi));
    }
    std::vector<double> values(grid.size, 0.0);
    std::size_t inside = 0;
    const double c = bump_normalizer();
    for (std::size_t j = 0; j < grid.size; ++j) {
        const double x = grid.at(j);
        if (std::abs(x) < 1.0) {
            ++inside;
            values[j] = c * bump_shape(x);
        }
    }
    if (inside < 64) {
        throw InputError(fmt::format("bump grid has {} nodes inside (-1, 1); need at least 64", inside));
    }
    return {grid, std::move(values), Interval{-1.0, 1.0}};
}

double base_sup(BaseKernel base) {
    return base == BaseKernel::box ? 0.5 : bump_normalizer() * std::exp(-1.0);
}

double base_derivative_l1(BaseKernel base) {
    // Even, unimodal kernels: total variation is twice the peak.
    return 2.0 * base_sup(base);
}

double block_scale(double sigma, int m, std::size_t p) {
    const auto pd = static_cast<double>(p);
    return std::exp(-std::pow(pd, sigma - 1.0) / static_cast<double>(m) * std::log(2.0 * (pd + 1.0)));
}

std::vector<std::size_t> block_thresholds(double sigma, int m_max) {
    if (!(sigma > 1.0)) throw DomainError(fmt::format("block thresholds need sigma > 1 (got {})", sigma));
    if (m_max < 1) throw DomainError(fmt::format("block depth must be >= 1 (got {})", m_max));
    std::vector<std::size_t> thresholds;
    std::size_t n = 1;
    for (int m = 1; m <= m_max + 1; ++m) {
        const double target = std::ldexp(1.0, -m);
        while (block_tail(sigma, m, n) >= target) ++n;
        thresholds.push_back(n);
    }
    return thresholds;
}

double ScaleSequence::total() const noexcept {
    double s = 0.0;
    for (double a : scales) s += a;
    return s;
}

ScaleSequence scale_sequence(double sigma, std::span<const std::size_t> thresholds, double cutoff) {
    if (!(cutoff > 0.0)) throw DomainError(fmt::format("cutoff must be positive (got {})", cutoff));
    if (thresholds.size() < 2) throw InputError("scale sequence needs at least two thresholds");
    ScaleSequence seq;
    seq.first_index = thresholds.front();
    const int m_max = static_cast<int>(thresholds.size()) - 1;
    bool truncated = false;
    for (int m = 1; m <= m_max; ++m) {
        for (std::size_t p = thresholds[m - 1]; p < thresholds[m]; ++p) {
            const double a = block_scale(sigma, m, p);
            if (!truncated && (a >= cutoff || seq.scales.empty())) {
                seq.scales.push_back(a);
                seq.blocks.push_back(m);
                seq.trunc_index = p;
                if (a < cutoff) truncated = true;
            } else {
                truncated = true;
                seq.discarded_tail += a;
            }
        }
    }
    seq.discarded_tail += std::ldexp(1.0, -m_max);
    seq.degenerate = seq.scales.size() == 1;
    return seq;
}

MollifierBuild build_mollifier(const MollifierSpec& spec) {
    if (!(spec.sigma > 1.0)) throw DomainError(fmt::format("sigma must exceed 1 (got {})", spec.sigma));
    const SpaceGrid& sg = spec.grid;
    const std::size_t n = sg.size();
    const double dx = sg.dx();
    if (!(sg.half_length > 1.0)) {
        throw InputError(fmt::format("mollifier grid half length {} must exceed 1", sg.half_length));
    }
    if (sg.pow < 6 || sg.pow > 26) throw InputError(fmt::format("grid power {} outside [6, 26]", sg.pow));

    MollifierBuild build;
    build.sigma = spec.sigma;
    build.base = spec.base;
    build.cutoff = spec.cutoff.value_or(4.0 * dx);
    build.thresholds = block_thresholds(spec.sigma, spec.m_max);
    build.sequence = scale_sequence(spec.sigma, build.thresholds, build.cutoff);
    build.base_norm_c = base_derivative_l1(spec.base);
    build.base_sup = base_sup(spec.base);

    const auto& scales = build.sequence.scales;
    const double smallest = *std::min_element(scales.begin(), scales.end());
    if (dx > smallest / 4.0) {
        throw ResolutionError(fmt::format("grid spacing {} exceeds a quarter of the smallest retained "
                                          "scale {}",
                                          dx, smallest));
    }

    // Largest nonzero cell offset of each discrete kernel, summed for the cascade support.
    long long reach = 0;
    for (double a : scales) reach += static_cast<long long>(std::ceil(a / dx + 0.5)) - 1;
    if (2 * reach >= static_cast<long long>(n) / 2) {
        throw ResolutionError("cascade support does not fit in the periodic grid without wrap-around");
    }

    const auto centre = static_cast<long long>(n / 2);
    FftBuffer product(n);
    FftBuffer kernel(n);
    std::fill(product.data().begin(), product.data().end(), Complex{1.0, 0.0});
    double mass_product = 1.0;
    for (double a : scales) {
        auto k = kernel.data();
        std::fill(k.begin(), k.end(), Complex{});
        const auto half = static_cast<long long>(std::ceil(a / dx + 0.5));
        for (long long j = -half; j <= half; ++j) {
            k[wrap(j, n)] = cell_average(spec.base, a, static_cast<double>(j) * dx, dx);
        }
        kernel.execute(FftBuffer::Direction::forward);
        mass_product *= k[0].real() * dx;
        auto acc = product.data();
        for (std::size_t i = 0; i < n; ++i) acc[i] *= k[i] * dx;
    }
    build.mass_drift = std::abs(mass_product - 1.0);
    if (build.mass_drift > spec.max_mass_drift) {
        throw ResolutionError(fmt::format("discrete kernel mass drift {:.3g} exceeds {:.3g}",
                                          build.mass_drift, spec.max_mass_drift));
    }

    product.execute(FftBuffer::Direction::backward);
    const auto out = product.data();
    const double scale = 1.0 / (static_cast<double>(n) * dx * mass_product);
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = out[wrap(static_cast<long long>(j) - centre, n)].real() * scale;
    }

    const double support_half = static_cast<double>(reach) * dx;
    build.min_before_clamp = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(static_cast<double>(static_cast<long long>(j) - centre)) > static_cast<double>(reach)) {
            values[j] = 0.0;
            continue;
        }
        build.min_before_clamp = std::min(build.min_before_clamp, values[j]);
        if (values[j] < 0.0) values[j] = 0.0;
    }
    if (build.min_before_clamp < -1e-12) {
        throw ResolutionError(fmt::format("cascade undershoots to {:.3g} below the -1e-12 floor",
                                          build.min_before_clamp));
    }
    build.phi = GridFunction(sg.grid(), std::move(values), Interval{-support_half, support_half});
    build.evenness_error = build.phi.evenness_error();
    return build;
}

std::vector<double> spectral_derivative_sups(const GridFunction& phi, int n_max,
                                             double spectral_floor, double* band_limit) {
    const std::size_t n = phi.size();
    const double length = static_cast<double>(n) * phi.dx();
    FftBuffer spectrum(n);
    {
        auto s = spectrum.data();
        for (std::size_t j = 0; j < n; ++j) s[j] = phi[j];
    }
    spectrum.execute(FftBuffer::Direction::forward);
    const auto s = spectrum.data();
    const auto half = static_cast<long long>(n / 2);
    auto signed_mode = [&](std::size_t i) {
        const auto k = static_cast<long long>(i);
        return k < half ? k : k - static_cast<long long>(n);
    };

    // Keep every mode up to the last one above the relative floor; the spectrum has zeros,
    // so a first-crossing rule would truncate too early.
    const double floor = spectral_floor * std::abs(s[0]);
    long long k_cut = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long long k = signed_mode(i);
        if (k == -half) continue;
        if (std::abs(s[i]) >= floor) k_cut = std::max(k_cut, std::abs(k));
    }
    if (band_limit) *band_limit = 2.0 * std::numbers::pi * static_cast<double>(k_cut) / length;

    std::vector<double> sups;
    FftBuffer work(n);
    for (int order = 0; order <= n_max; ++order) {
        auto w = work.data();
        for (std::size_t i = 0; i < n; ++i) {
            const long long k = signed_mode(i);
            if (std::abs(k) > k_cut || k == -half) {
                w[i] = Complex{};
                continue;
            }
            const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) / length;
            w[i] = s[i] * std::pow(omega, order) * kIPowers[order % 4];
        }
        work.execute(FftBuffer::Direction::backward);
        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(w[i].real()));
        sups.push_back(sup / static_cast<double>(n));
    }
    return sups;
}

bool DerivativeAudit::passed() const noexcept {
    return std::all_of(rows.begin(), rows.end(),
                       [this](const DerivativeBoundRow& r) { return r.within(rel_slack); });
}

DerivativeAudit derivative_bound_audit(const MollifierBuild& build, int n_max, double rel_slack,
                                       double spectral_floor) {
    if (n_max < 1 || n_max > 12) {
        throw PreconditionError(fmt::format("derivative audit supports 1 <= n_max <= 12 (got {})", n_max));
    }
    const auto& scales = build.sequence.scales;
    if (static_cast<int>(scales.size()) - 1 <= n_max) {
        throw PreconditionError(fmt::format("derivative audit to order {} needs more than {} factors "
                                            "after the first (have {})",
                                            n_max, n_max, scales.size() - 1));
    }
    DerivativeAudit audit;
    audit.rel_slack = rel_slack;
    const std::vector<double> sups =
        spectral_derivative_sups(build.phi, n_max, spectral_floor, &audit.band_limit);

    std::vector<double> rest(scales.begin() + 1, scales.end());
    std::sort(rest.begin(), rest.end(), std::greater<>());
    double bound = build.base_sup / scales.front();
    for (int order = 0; order <= n_max; ++order) {
        if (order > 0) bound *= build.base_norm_c / rest[static_cast<std::size_t>(order - 1)];
        audit.rows.push_back({order, sups[static_cast<std::size_t>(order)], bound});
    }

    std::vector<double> x1, x2, y;
    for (int order = 1; order <= n_max; ++order) {
        const double nd = order;
        const double ns = std::pow(nd, build.sigma);
        x1.push_back(ns);
        x2.push_back(ns * std::log(nd));
        y.push_back(std::log(sups[static_cast<std::size_t>(order)]));
    }
    auto [ln_c, tau_eff] = two_term_fit(x1, x2, y);
    audit.growth.ln_c = ln_c;
    audit.growth.tau_eff = tau_eff;
    audit.growth.ln_c_upper = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) {
        audit.growth.ln_c_upper = std::max(audit.growth.ln_c_upper, (y[i] - tau_eff * x2[i]) / x1[i]);
    }
    for (int lo = 1; lo + 3 <= n_max; lo += 2) {
        const auto off = static_cast<std::size_t>(lo - 1);
        auto [c_r, t_r] = two_term_fit(std::span(x1).subspan(off, 4), std::span(x2).subspan(off, 4),
                                       std::span(y).subspan(off, 4));
        audit.growth.by_range.push_back({lo, lo + 3, c_r, t_r});
    }
    return audit;
}

GridFunction dilate_normalize(const GridFunction& phi, double a, double mass,
                              std::optional<UniformGrid> target) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError(fmt::format("dilation needs a > 0 (got {})", a));
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw DomainError(fmt::format("dilation needs mass > 0 (got {})", mass));
    }
    const UniformGrid out = target.value_or(UniformGrid{a * phi.x0(), a * phi.dx(), phi.size()});
    if (out.spacing > a / 32.0) {
        throw ResolutionError(fmt::format("target spacing {} is coarser than a/32 = {}", out.spacing, a / 32.0));
    }
    const Interval support{a * phi.support().lo, a * phi.support().hi};
    const auto src = phi.values();
    const auto n_src = static_cast<long long>(src.size());
    auto sample = [&](long long i) { return (i < 0 || i >= n_src) ? 0.0 : src[static_cast<std::size_t>(i)]; };

    std::vector<double> values(out.size, 0.0);
    for (std::size_t j = 0; j < out.size; ++j) {
        const double x = out.at(j);
        if (!support.contains(x)) continue;
        const double pos = (x / a - phi.x0()) / phi.dx();
        const double base = std::floor(pos);
        double t = pos - base;
        auto i = static_cast<long long>(base);
        if (t > 1.0 - 1e-9) {
            ++i;
            t = 0.0;
        }
        double v;
        if (t < 1e-9) {
            v = sample(i);
        } else {
            // Cubic Hermite with centred-difference slopes.
            const double p0 = sample(i), p1 = sample(i + 1);
            const double m0 = 0.5 * (p1 - sample(i - 1));
            const double m1 = 0.5 * (sample(i + 2) - p0);
            const double t2 = t * t, t3 = t2 * t;
            v = (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
                (t3 - t2) * m1;
        }
        values[j] = mass / a * v;
    }
    const Interval ext = out.extent();
    GridFunction result = GridFunction::clipped(
        out, std::move(values), Interval{std::max(support.lo, ext.lo), std::min(support.hi, ext.hi)});
    const double integral = result.integral();
    if (std::abs(integral - mass) > 1e-8 * mass) {
        throw ResolutionError(fmt::format("dilated mass {} misses target {} by more than 1e-8", integral, mass));
    }
    return result;
}

} // namespace gevwave
