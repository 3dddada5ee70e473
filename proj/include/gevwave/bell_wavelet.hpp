#pragma once

#include "gevwave/grid.hpp"
#include "gevwave/mollifier.hpp"

#include <cstddef>

namespace gevwave {

// Cumulative integral of a density of mass pi/2 by the trapezoid rule, exactly 0 left of
// the density support and exactly pi/2 right of it.
[[nodiscard]] GridFunction theta(const GridFunction& phi_a);

// Piecewise cubic Hermite interpolant of theta samples, with the density as the slope.
class ThetaFunction {
public:
    explicit ThetaFunction(const GridFunction& phi_a);

    [[nodiscard]] double operator()(double x) const noexcept;
    [[nodiscard]] const GridFunction& samples() const noexcept { return samples_; }
    // Interval outside which theta is constant.
    [[nodiscard]] const Interval& transition() const noexcept { return transition_; }
    [[nodiscard]] double knot_spacing() const noexcept { return samples_.dx(); }
    [[nodiscard]] double knot_origin() const noexcept { return samples_.x0(); }

private:
    GridFunction samples_;
    std::vector<double> slopes_;
    Interval transition_;
};

// Upper end of the admissible half-width range (0, pi/3).
inline constexpr double kMaxBellHalfWidth = 1.0471975511965976;

// b(xi) = sin(theta_a(|xi| - pi)) * cos(theta_2a(|xi| - 2 pi)), zero off pi-a <= |xi| <= 2(pi+a).
class Bell {
public:
    // Builds theta_a and theta_2a by dilating the single cascade in `build`.
    Bell(double a, const MollifierBuild& build);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double operator()(double xi) const noexcept;
    [[nodiscard]] const ThetaFunction& rising() const noexcept { return rising_; }   // theta_a
    [[nodiscard]] const ThetaFunction& falling() const noexcept { return falling_; } // theta_2a
    // Outer edge 2(pi + a) of the support.
    [[nodiscard]] double outer_edge() const noexcept;
    [[nodiscard]] double inner_edge() const noexcept; // pi - a

private:
    double a_;
    ThetaFunction rising_;
    ThetaFunction falling_;
};

// Samples of b on a frequency grid (real-valued, even).
[[nodiscard]] SpectralFunction bell(const Bell& b, const UniformGrid& freq_grid);

// Integer-aligned grid of spacing 2 pi / 2^pow over [-2(pi+a)-1, 2(pi+a)+1].
[[nodiscard]] UniformGrid frequency_grid(double a, unsigned pow);

// psi_hat(xi) = exp(i xi / 2) * b(xi) as a point evaluator.
class Wavelet {
public:
    explicit Wavelet(Bell b) : bell_(std::move(b)) {}
    [[nodiscard]] const Bell& bell() const noexcept { return bell_; }
    [[nodiscard]] double a() const noexcept { return bell_.a(); }
    [[nodiscard]] Complex psi_hat(double xi) const noexcept;
    [[nodiscard]] SpectralFunction sample(const UniformGrid& freq_grid) const;

private:
    Bell bell_;
};

// Multiplies sampled b by the unimodular phase exp(i xi / 2).
[[nodiscard]] SpectralFunction psi_hat(const SpectralFunction& b);

// Lattice {x = j L / N} of the L-periodization, synthesized by one length-N DFT.
struct LatticeSpec {
    unsigned period_pow = 17;
    unsigned samples_pow = 21;

    [[nodiscard]] double period() const noexcept { return std::ldexp(1.0, static_cast<int>(period_pow)); }
    [[nodiscard]] std::size_t samples() const noexcept { return std::size_t{1} << samples_pow; }
    [[nodiscard]] double spacing() const noexcept { return period() / static_cast<double>(samples()); }
    [[nodiscard]] double dxi() const noexcept;
};

struct LatticeSynthesis {
    GridFunction values; // x from -L/2 in steps of L/N
    double imag_residue = 0.0;
    double l2_norm = 0.0;
};

// The spectrum must be sampled at dxi = 2 pi / L on an integer-aligned grid.
[[nodiscard]] LatticeSynthesis synthesize_psi_lattice(const SpectralFunction& spectrum,
                                                      const LatticeSpec& lattice);

// (1/pi) * integral of b(xi) cos((x - 1/2) xi) over pi - a <= xi <= 2(pi + a), with
// Gauss-Legendre panels aligned to the interpolation knots.
[[nodiscard]] double eval_psi_point(const Wavelet& wavelet, double x);

struct WaveletIndex {
    int m = 0;
    int n = 0;
};

// xi -> 2^(-m/2) exp(i 2^-m n xi) psi_hat(2^-m xi) on an integer-aligned grid of spacing dxi.
[[nodiscard]] SpectralFunction wavelet_member_spectrum(const Wavelet& wavelet, WaveletIndex idx,
                                                       double dxi);

// xi -> (-i xi)^q F(xi), q <= 40.
[[nodiscard]] SpectralFunction psi_derivative_spectrum(const SpectralFunction& spectrum, int q);

} // namespace gevwave
