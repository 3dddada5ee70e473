#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

// W0(x) by bisection of the increasing map w -> w e^w.
inline double lambert_bisect(double x) {
    long double lo = 0.0L;
    long double hi = x < 1.0 ? 1.0L : std::log(static_cast<long double>(x)) + 1.0L;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (mid * std::exp(mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return static_cast<double>(0.5L * (lo + hi));
}

struct AssocValue {
    double t = 0.0;
    std::size_t argmax = 0;
};

// max(0, max_p (p ln k - tau p^sigma ln p)) by enumerating every p <= p_max.
inline AssocValue assoc_enumerate(double k, double tau, double sigma, std::size_t p_max = 20000) {
    AssocValue best;
    const long double lk = std::log(static_cast<long double>(k));
    for (std::size_t p = 1; p <= p_max; ++p) {
        const long double pd = static_cast<long double>(p);
        const long double lm = p < 2 ? 0.0L : tau * std::pow(pd, static_cast<long double>(sigma)) * std::log(pd);
        const long double term = pd * lk - lm;
        if (term > best.t) {
            best.t = static_cast<double>(term);
            best.argmax = p;
        }
    }
    return best;
}

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, double tol) {
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
                return left + right + (left + right - whole) / 15.0;
            }
            return rec(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
                   rec(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
        };
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    return rec(lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

// (dxi / 2 pi) * sum_j F(xi_j) exp(-i x xi_j), accumulated in long double.
inline std::complex<double> inverse_sum(const std::vector<std::pair<double, std::complex<double>>>& samples,
                                        double dxi, double x) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (const auto& [xi, v] : samples) {
        const long double ph = -static_cast<long double>(x) * xi;
        const long double c = std::cos(ph);
        const long double s = std::sin(ph);
        re += v.real() * c - v.imag() * s;
        im += v.real() * s + v.imag() * c;
    }
    const long double scale = dxi / (2.0L * 3.14159265358979323846264338327950288L);
    return {static_cast<double>(re * scale), static_cast<double>(im * scale)};
}

} // namespace oracle
