#include "gevwave/verify.hpp"

#include "gevwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace gevwave {

namespace {

constexpr double kPi = std::numbers::pi;

std::string label(const WaveletIndex& idx) { return fmt::format("({},{})", idx.m, idx.n); }

// Integer step that maps the finer spacing onto the coarser one.
long long decimation(double fine, double coarse) {
    const double ratio = coarse / fine;
    const double r = std::round(ratio);
    if (r < 1.0 || std::abs(ratio - r) > 1e-9 * r) {
        throw InputError(fmt::format("spectral grids with spacings {} and {} are not commensurate", fine, coarse));
    }
    return static_cast<long long>(r);
}

} // namespace

Complex inner_product(const SpectralFunction& f, const SpectralFunction& g) {
    const bool f_fine = f.dxi() <= g.dxi();
    const SpectralFunction& fine = f_fine ? f : g;
    const SpectralFunction& coarse = f_fine ? g : f;
    const long long step = decimation(fine.dxi(), coarse.dxi());
    const double dxi = coarse.dxi();

    // Coarse node c sits at fine index c * step - fine_offset.
    const long long c_off = coarse.lattice_offset();
    const long long f_off = fine.lattice_offset();
    const auto f_size = static_cast<long long>(fine.size());
    Complex sum{};
    for (std::size_t jc = 0; jc < coarse.size(); ++jc) {
        const Complex cv = coarse[jc];
        if (cv == Complex{}) continue;
        const long long jf = (c_off + static_cast<long long>(jc)) * step - f_off;
        if (jf < 0 || jf >= f_size) continue;
        const Complex fv = fine[static_cast<std::size_t>(jf)];
        sum += f_fine ? fv * std::conj(cv) : cv * std::conj(fv);
    }
    return sum * dxi / (2.0 * kPi);
}

std::size_t GramReport::members() const noexcept {
    return static_cast<std::size_t>((m_max - m_min + 1) * (n_max - n_min + 1));
}

Complex GramReport::entry(std::size_t i, std::size_t j) const {
    const std::size_t n = members();
    if (i >= n || j >= n) throw InputError("Gram entry index out of range");
    const bool swap = i > j;
    const std::size_t r = swap ? j : i;
    const std::size_t c = swap ? i : j;
    // Row r of the upper triangle starts after sum_{t<r} (n - t) entries.
    const std::size_t pos = r * n - r * (r - 1) / 2 + (c - r);
    const Complex v = entries.at(pos).value;
    return swap ? std::conj(v) : v;
}

GramReport gram_matrix(const Wavelet& wavelet, int m_min, int m_max, int n_min, int n_max, double dxi) {
    if (m_min > m_max || n_min > n_max) throw InputError("Gram index ranges are empty");
    GramReport report{m_min, m_max, n_min, n_max, {}, 0.0, 0.0, {}, {}};

    std::vector<WaveletIndex> index;
    std::vector<SpectralFunction> members;
    for (int m = m_min; m <= m_max; ++m) {
        for (int n = n_min; n <= n_max; ++n) {
            index.push_back({m, n});
            members.push_back(wavelet_member_spectrum(wavelet, {m, n}, dxi));
        }
    }
    const std::size_t count = members.size();
    report.entries.reserve(count * (count + 1) / 2);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i; j < count; ++j) {
            GramEntry e{index[i], index[j], inner_product(members[i], members[j])};
            if (i == j) {
                const double dev = std::abs(e.value - Complex{1.0, 0.0});
                if (dev > report.max_diag_dev || report.entries.empty()) {
                    report.max_diag_dev = std::max(report.max_diag_dev, dev);
                    report.worst_diag = e;
                }
            } else {
                const double mag = std::abs(e.value);
                if (mag > report.max_offdiag) {
                    report.max_offdiag = mag;
                    report.worst_offdiag = e;
                }
            }
            report.entries.push_back(e);
        }
    }
    return report;
}

void require_orthonormal(const GramReport& report, double tol) {
    if (report.max_diag_dev > tol) {
        throw VerificationError("verify-onw/gram/max_diag_dev",
                                fmt::format("diagonal entry {} deviates from 1 by {:.3g} > {:.3g}",
                                            label(report.worst_diag.row), report.max_diag_dev, tol));
    }
    if (report.max_offdiag > tol) {
        throw VerificationError("verify-onw/gram/max_offdiag",
                                fmt::format("pair {} x {} has |<.,.>| = {:.3g} > {:.3g}",
                                            label(report.worst_offdiag.row),
                                            label(report.worst_offdiag.col), report.max_offdiag, tol));
    }
}

DyadicReport dyadic_sum_check(const Wavelet& wavelet, std::span<const double> xi_grid, int m_window) {
    if (m_window < 1 || m_window > 30) throw InputError(fmt::format("dyadic window {} outside [1, 30]", m_window));
    const Bell& b = wavelet.bell();
    // Every dilation hitting the bell support must lie inside the window.
    const double covered_lo = b.outer_edge() * std::ldexp(1.0, -(m_window + 1));
    const double covered_hi = b.inner_edge() * std::ldexp(1.0, m_window + 1);

    DyadicReport report;
    report.m_window = m_window;
    report.rows.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        if (!std::isfinite(xi) || std::abs(xi) < 1e-12) {
            throw InputError(fmt::format("dyadic grid node {} touches 0", xi));
        }
        double s = 0.0;
        for (int m = -m_window; m <= m_window; ++m) {
            const double v = b(std::ldexp(xi, m));
            s += v * v;
        }
        const double z = std::abs(xi);
        DyadicRow row{xi, s, z > covered_lo && z < covered_hi};
        if (row.covered) {
            ++report.covered;
            const double dev = std::abs(s - 1.0);
            if (dev > report.max_deviation) {
                report.max_deviation = dev;
                report.worst_xi = xi;
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

std::vector<double> default_dyadic_grid(double a, int m_window, std::size_t points, double margin) {
    if (points < 2) throw InputError("dyadic grid needs at least two points per band");
    const double lo = kPi - a + margin;
    const double hi = 2.0 * (kPi + a) - margin;
    std::vector<double> grid;
    for (int j = -(m_window - 1); j <= m_window - 1; ++j) {
        for (std::size_t i = 0; i < points; ++i) {
            const double base = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            grid.push_back(std::ldexp(base, j));
        }
    }
    std::vector<double> both;
    both.reserve(2 * grid.size());
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) both.push_back(-*it);
    both.insert(both.end(), grid.begin(), grid.end());
    return both;
}

std::string to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

CompletenessReport completeness_check(const Wavelet& wavelet, const SpectralFunction& f, int m_window,
                                      int n_cap, double tol, double change_tol) {
    if (m_window < 0 || m_window > 30) throw InputError(fmt::format("completeness window {} outside [0, 30]", m_window));
    if (n_cap < 1) throw InputError("completeness translation cap must be positive");
    CompletenessReport report;
    report.m_window = m_window;
    report.n_cap = n_cap;
    report.tol = tol;
    report.change_tol = change_tol;
    report.norm_sq = inner_product(f, f).real();
    if (!(report.norm_sq > 0.0)) throw InputError("completeness test function has zero energy");

    const Bell& b = wavelet.bell();
    const double covered_lo = b.outer_edge() * std::ldexp(1.0, -(m_window + 1));
    const double covered_hi = b.inner_edge() * std::ldexp(1.0, m_window + 1);
    report.inside_covered_range = true;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == Complex{}) continue;
        const double z = std::abs(f.xi(j));
        if (!(z > covered_lo && z < covered_hi)) report.inside_covered_range = false;
    }

    const double dxi = f.dxi();
    const double block_floor = change_tol * report.norm_sq;
    double total = 0.0;
    bool all_converged = true;
    for (int m = -m_window; m <= m_window; ++m) {
        const SpectralFunction base = wavelet_member_spectrum(wavelet, {m, 0}, dxi);
        // g = f conj(base) on the shared nodes, with the unit phase exp(-i 2^-m xi) per step of n.
        std::vector<Complex> g;
        std::vector<Complex> step;
        const long long f_off = f.lattice_offset();
        const long long b_off = base.lattice_offset();
        const double shift = std::ldexp(1.0, -m);
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (f[j] == Complex{}) continue;
            const long long jb = f_off + static_cast<long long>(j) - b_off;
            if (jb < 0 || jb >= static_cast<long long>(base.size())) continue;
            const Complex bv = base[static_cast<std::size_t>(jb)];
            if (bv == Complex{}) continue;
            g.push_back(f[j] * std::conj(bv) * (dxi / (2.0 * kPi)));
            step.push_back(std::polar(1.0, -shift * f.xi(j)));
        }
        CompletenessScale scale{m, 0, 0.0, g.empty()};
        if (!g.empty()) {
            std::vector<Complex> plus(g.size(), Complex{1.0, 0.0});
            std::vector<Complex> minus(g.size(), Complex{1.0, 0.0});
            auto coefficient = [&](const std::vector<Complex>& phase) {
                Complex c{};
                for (std::size_t i = 0; i < g.size(); ++i) c += g[i] * std::conj(phase[i]);
                return c;
            };
            scale.energy = std::norm(coefficient(plus));
            double block = 0.0;
            for (int n = 1; n <= n_cap; ++n) {
                for (std::size_t i = 0; i < g.size(); ++i) {
                    plus[i] *= std::conj(step[i]);
                    minus[i] *= step[i];
                }
                // <f, psi_{m,n}> carries conj(exp(i 2^-m n xi)); plus holds exp(i 2^-m n xi).
                block += std::norm(coefficient(plus)) + std::norm(coefficient(minus));
                scale.n_reach = n;
                if (n % 8 == 0) {
                    scale.energy += block;
                    const bool small = block < block_floor;
                    block = 0.0;
                    if (small) {
                        scale.converged = true;
                        break;
                    }
                }
            }
            scale.energy += block;
        }
        all_converged = all_converged && scale.converged;
        total += scale.energy;
        report.scales.push_back(scale);
    }
    report.ratio = total / report.norm_sq;
    if (!all_converged || !report.inside_covered_range) {
        report.status = CheckStatus::inconclusive;
    } else {
        report.status = std::abs(report.ratio - 1.0) <= tol ? CheckStatus::pass : CheckStatus::fail;
    }
    return report;
}

SpectralFunction gaussian_test_spectrum(double dxi, double centre, double width, double cut) {
    if (!(width > 0.0) || !(cut > 0.0) || !(centre - cut * width > 0.0)) {
        throw InputError("Gaussian test spectrum must stay away from xi = 0");
    }
    const double edge = centre + cut * width;
    const UniformGrid grid = centered_grid(dxi, edge);
    std::vector<Complex> values(grid.size);
    for (std::size_t j = 0; j < grid.size; ++j) {
        const double d = (std::abs(grid.at(j)) - centre) / width;
        if (std::abs(d) <= cut) values[j] = std::exp(-0.5 * d * d);
    }
    return {grid, std::move(values), Interval{-edge, edge}, true};
}

} // namespace gevwave
