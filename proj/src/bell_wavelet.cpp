#include "gevwave/bell_wavelet.hpp"

#include "gevwave/errors.hpp"
#include "gevwave/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

namespace gevwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
const Complex kMinusIPowers[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};

double require_half_width(double a) {
    if (!(a > 0.0 && a < kMaxBellHalfWidth)) {
        throw DomainError(fmt::format("bell half width a must lie in (0, pi/3) = (0, {:.17g}); got {}",
                                      kMaxBellHalfWidth, a));
    }
    return a;
}

} // namespace

GridFunction theta(const GridFunction& phi_a) {
    if (phi_a.min() < 0.0) throw InputError("theta needs a nonnegative density");
    const double mass = phi_a.integral();
    if (std::abs(mass - kHalfPi) > 1e-6) {
        throw InputError(fmt::format("theta density mass {:.17g} deviates from pi/2 by more than 1e-6", mass));
    }
    const auto v = phi_a.values();
    const std::size_t n = v.size();
    std::vector<double> cumulative(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        cumulative[j] = cumulative[j - 1] + 0.5 * phi_a.dx() * (v[j - 1] + v[j]);
    }
    const double total = cumulative.back();
    const Interval support = phi_a.support();
    for (std::size_t j = 0; j < n; ++j) {
        const double x = phi_a.x(j);
        if (x <= support.lo) {
            cumulative[j] = 0.0;
        } else if (x >= support.hi) {
            cumulative[j] = kHalfPi;
        } else {
            cumulative[j] *= kHalfPi / total;
        }
    }
    return {phi_a.grid(), std::move(cumulative), phi_a.grid().extent()};
}

ThetaFunction::ThetaFunction(const GridFunction& phi_a)
    : samples_(theta(phi_a)), transition_(phi_a.support()) {
    const double scale = kHalfPi / phi_a.integral();
    slopes_.assign(phi_a.values().begin(), phi_a.values().end());
    for (double& s : slopes_) s *= scale;
}

double ThetaFunction::operator()(double x) const noexcept {
    if (x <= transition_.lo) return 0.0;
    if (x >= transition_.hi) return kHalfPi;
    const double h = samples_.dx();
    const double pos = (x - samples_.x0()) / h;
    const auto last = samples_.size() - 1;
    auto j = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, static_cast<double>(last - 1)));
    const double t = pos - static_cast<double>(j);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * samples_[j] + (t3 - 2 * t2 + t) * h * slopes_[j] +
           (-2 * t3 + 3 * t2) * samples_[j + 1] + (t3 - t2) * h * slopes_[j + 1];
}

Bell::Bell(double a, const MollifierBuild& build)
    : a_(require_half_width(a)),
      rising_(dilate_normalize(build.phi, a, kHalfPi)),
      falling_(dilate_normalize(build.phi, 2.0 * a, kHalfPi)) {}

double Bell::outer_edge() const noexcept { return 2.0 * (kPi + a_); }
double Bell::inner_edge() const noexcept { return kPi - a_; }

double Bell::operator()(double xi) const noexcept {
    const double z = std::abs(xi);
    if (z <= inner_edge() || z >= outer_edge()) return 0.0;
    const double up = std::sin(rising_(z - kPi));
    const double t = falling_(z - 2.0 * kPi);
    const double down = t >= kHalfPi ? 0.0 : std::cos(t);
    return up * down;
}

SpectralFunction bell(const Bell& b, const UniformGrid& freq_grid) {
    std::vector<Complex> values(freq_grid.size);
    for (std::size_t j = 0; j < freq_grid.size; ++j) values[j] = b(freq_grid.at(j));
    return {freq_grid, std::move(values), Interval{-b.outer_edge(), b.outer_edge()}, true};
}

UniformGrid frequency_grid(double a, unsigned pow) {
    return centered_grid(2.0 * kPi / std::ldexp(1.0, static_cast<int>(pow)), 2.0 * (kPi + a) + 1.0);
}

Complex Wavelet::psi_hat(double xi) const noexcept {
    const double b = bell_(xi);
    if (b == 0.0) return {};
    return std::polar(b, 0.5 * xi);
}

SpectralFunction Wavelet::sample(const UniformGrid& freq_grid) const {
    std::vector<Complex> values(freq_grid.size);
    for (std::size_t j = 0; j < freq_grid.size; ++j) values[j] = psi_hat(freq_grid.at(j));
    const double edge = bell_.outer_edge();
    return {freq_grid, std::move(values), Interval{-edge, edge}, true};
}

SpectralFunction psi_hat(const SpectralFunction& b) {
    std::vector<Complex> values(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double mag = b[j].real();
        values[j] = mag == 0.0 ? Complex{} : std::polar(mag, 0.5 * b.xi(j));
    }
    return {b.grid(), std::move(values), b.support(), b.hermitian_real()};
}

double LatticeSpec::dxi() const noexcept { return 2.0 * kPi / period(); }

LatticeSynthesis synthesize_psi_lattice(const SpectralFunction& spectrum, const LatticeSpec& lattice) {
    const double dxi = lattice.dxi();
    if (std::abs(spectrum.dxi() - dxi) > 1e-12 * dxi) {
        throw InputError(fmt::format("lattice synthesis needs spectrum spacing 2 pi / L = {} (got {})",
                                     dxi, spectrum.dxi()));
    }
    if (spectrum.support().width() / dxi < 2.0 * 4096.0) {
        throw ResolutionError("frequency sampling puts fewer than 2^12 samples across the bell");
    }
    const std::size_t n = lattice.samples();
    const auto half = static_cast<long long>(n / 2);
    const long long offset = spectrum.lattice_offset();

    FftBuffer buffer(n);
    auto data = buffer.data();
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        const Complex v = spectrum[j];
        if (v == Complex{}) continue;
        const long long k = offset + static_cast<long long>(j);
        if (k >= half || k < -half) {
            throw ResolutionError(fmt::format("spectrum reaches xi = {} beyond the lattice Nyquist limit",
                                              spectrum.xi(j)));
        }
        data[static_cast<std::size_t>((k + static_cast<long long>(n)) % static_cast<long long>(n))] = v;
    }
    buffer.execute(FftBuffer::Direction::forward);

    const double scale = dxi / (2.0 * kPi);
    std::vector<double> values(n);
    LatticeSynthesis out;
    double energy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        // Lattice node j sits at x = (j - N/2) L / N.
        const Complex v = data[(j + n / 2) % n] * scale;
        values[j] = v.real();
        out.imag_residue = std::max(out.imag_residue, std::abs(v.imag()));
        energy += v.real() * v.real();
    }
    const UniformGrid grid{-0.5 * lattice.period(), lattice.spacing(), n};
    out.l2_norm = std::sqrt(energy * lattice.spacing());
    out.values = GridFunction(grid, std::move(values), grid.extent());
    return out;
}

double eval_psi_point(const Wavelet& wavelet, double x) {
    if (!std::isfinite(x)) throw DomainError("eval_psi_point needs a finite x");
    const Bell& b = wavelet.bell();
    const double omega = x - 0.5;
    const double abs_omega = std::abs(omega);
    auto integrand = [&](double xi) { return b(xi) * std::cos(omega * xi); };

    double total = 0.0;
    // Transition bands: panels on each knot interval, split further so that every panel
    // spans at most half an oscillation period (>= 14 nodes per period).
    auto transition = [&](const ThetaFunction& th, double shift) {
        const double h = th.knot_spacing();
        const Interval tr = th.transition();
        const auto j_lo = static_cast<long long>(std::floor((tr.lo - th.knot_origin()) / h));
        const auto j_hi = static_cast<long long>(std::ceil((tr.hi - th.knot_origin()) / h));
        const int split = std::max(1, static_cast<int>(std::ceil(h * abs_omega / kPi)));
        const double w = h / split;
        double sum = 0.0;
        for (long long j = j_lo; j < j_hi; ++j) {
            const double left = shift + th.knot_origin() + static_cast<double>(j) * h;
            for (int s = 0; s < split; ++s) {
                const double lo = left + s * w;
                sum += boost::math::quadrature::gauss<double, 7>::integrate(integrand, lo, lo + w);
            }
        }
        return std::pair{sum, Interval{shift + tr.lo, shift + tr.hi}};
    };
    const auto [rise, rise_band] = transition(b.rising(), kPi);
    const auto [fall, fall_band] = transition(b.falling(), 2.0 * kPi);
    total += rise + fall;

    // Flat top b = 1 between the two transition bands.
    const double lo = rise_band.hi;
    const double hi = fall_band.lo;
    if (hi > lo) {
        total += abs_omega == 0.0 ? hi - lo : (std::sin(omega * hi) - std::sin(omega * lo)) / omega;
    }
    return total / kPi;
}

SpectralFunction wavelet_member_spectrum(const Wavelet& wavelet, WaveletIndex idx, double dxi) {
    if (std::abs(idx.m) > 30) {
        throw InputError(fmt::format("wavelet scale |m| = {} exceeds the overflow guard 30", std::abs(idx.m)));
    }
    const double dilation = std::ldexp(1.0, idx.m);
    const double edge = dilation * wavelet.bell().outer_edge();
    const UniformGrid grid = centered_grid(dxi, edge);
    const double amp = std::pow(2.0, -0.5 * idx.m);
    const double shift = static_cast<double>(idx.n) / dilation;
    std::vector<Complex> values(grid.size);
    for (std::size_t j = 0; j < grid.size; ++j) {
        const double xi = grid.at(j);
        const Complex base = wavelet.psi_hat(xi / dilation);
        if (base == Complex{}) continue;
        values[j] = amp * std::polar(1.0, shift * xi) * base;
    }
    return {grid, std::move(values), Interval{-edge, edge}, true};
}

SpectralFunction psi_derivative_spectrum(const SpectralFunction& spectrum, int q) {
    if (q < 0 || q > 40) throw PreconditionError(fmt::format("derivative order {} outside [0, 40]", q));
    std::vector<Complex> values(spectrum.values().begin(), spectrum.values().end());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] == Complex{}) continue;
        values[j] *= std::pow(spectrum.xi(j), q) * kMinusIPowers[q % 4];
    }
    return {spectrum.grid(), std::move(values), spectrum.support(), spectrum.hermitian_real()};
}

} // namespace gevwave
