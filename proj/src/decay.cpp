#include "gevwave/errors.hpp"
#include "gevwave/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace gevwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InputError("regression abscissae are constant");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ssr += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    fit.slope_stderr = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : kNaN;
    return fit;
}

RatioTrend ratio_trend(std::span<const double> x, std::span<const double> ratio) {
    std::vector<double> lx(x.size());
    std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
    return {fit_line(lx, ratio).slope, ratio.front(), ratio.back()};
}

// First x beyond which decay_rate stays below the comparator rate for every later point.
double crossover(std::span<const double> x, std::span<const double> rate, double sigma_prime) {
    double result = kNaN;
    for (std::size_t i = x.size(); i-- > 0;) {
        if (rate[i] < comparator::subexponential(x[i], sigma_prime)) {
            result = x[i];
        } else {
            break;
        }
    }
    return result;
}

// Tail supremum of |f| as a function of the lattice distance from the origin.
struct TailHull {
    double origin_index = 0.0;
    double spacing = 0.0;
    std::vector<double> hull; // hull[d] = max |f| over lattice nodes at distance >= d steps

    explicit TailHull(const GridFunction& samples) : spacing(samples.dx()) {
        origin_index = -samples.x0() / samples.dx();
        const double r = std::round(origin_index);
        if (std::abs(origin_index - r) > 1e-9) throw InputError("lattice does not contain x = 0");
        const auto centre = static_cast<long long>(r);
        const auto n = static_cast<long long>(samples.size());
        const long long reach = std::max(centre, n - 1 - centre);
        hull.assign(static_cast<std::size_t>(reach + 1), 0.0);
        for (long long j = 0; j < n; ++j) {
            const auto d = static_cast<std::size_t>(std::abs(j - centre));
            hull[d] = std::max(hull[d], std::abs(samples[static_cast<std::size_t>(j)]));
        }
        for (std::size_t d = hull.size() - 1; d-- > 0;) hull[d] = std::max(hull[d], hull[d + 1]);
    }

    [[nodiscard]] double at_distance(double x) const {
        const double steps = std::ceil(std::max(0.0, x) / spacing - 1e-9);
        const auto d = static_cast<std::size_t>(steps);
        return d < hull.size() ? hull[d] : 0.0;
    }
};

} // namespace

Envelope decay_envelope(const GridFunction& samples, std::span<const double> x_grid, double rel_floor,
                        double period) {
    const TailHull tail(samples);
    const double safe = 0.25 * static_cast<double>(samples.size()) * samples.dx();
    Envelope env;
    env.period = period;
    env.sup = samples.sup_abs();
    env.floor = rel_floor * env.sup;
    for (double x : x_grid) {
        if (!(x > 0.0) || x > safe) {
            throw InputError(fmt::format("envelope abscissa {} outside the aliasing-safe range (0, {}]", x, safe));
        }
        const double v = tail.at_distance(x - 0.5 * period);
        env.points.push_back({x, v, !(v > env.floor)});
    }
    return env;
}

DecayFitReport fit_decay(const Envelope& envelope, double sigma, bool comparators) {
    std::vector<double> x, t, y;
    std::vector<const EnvelopePoint*> used;
    std::size_t dropped = 0;
    for (const auto& p : envelope.points) {
        if (p.dropped) {
            ++dropped;
            continue;
        }
        x.push_back(p.x);
        t.push_back(assoc_t_asym(p.x, sigma));
        y.push_back(-std::log(p.env));
        used.push_back(&p);
    }
    const auto& all = envelope.points;
    if (all.size() < 30) {
        throw InputError(fmt::format("decay fit needs at least 30 probe points (have {})", all.size()));
    }
    if (all.back().x < 100.0 * all.front().x) {
        throw InputError(
            fmt::format("decay probes span [{}, {}], less than two decades", all.front().x, all.back().x));
    }
    if (x.size() < 30) {
        throw ResolutionError(fmt::format(
            "decay fit needs at least 30 envelope points above the noise floor (have {})", x.size()));
    }
    if (x.back() < 100.0 * x.front()) {
        throw ResolutionError(fmt::format(
            "envelope points above the noise floor span [{}, {}], less than two decades", x.front(), x.back()));
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw InputError("decay regressor is not strictly increasing on the fit range");
    }

    DecayFitReport report;
    report.sigma = sigma;
    report.comparators = comparators;
    report.used_points = x.size();
    report.dropped_points = dropped;
    report.x_range = {x.front(), x.back()};
    const LineFit fit = fit_line(t, y);
    report.h_fit = fit.slope;
    report.h_stderr = fit.slope_stderr;
    report.intercept = fit.intercept;
    report.r_squared = fit.r_squared;

    std::vector<double> top_x, top_ratio, log_ratio;
    for (std::size_t i = 0; i < x.size(); ++i) {
        log_ratio.push_back(y[i] / std::log(x[i]));
        if (x[i] >= x.back() / 10.0) {
            top_x.push_back(x[i]);
            top_ratio.push_back(y[i] / std::sqrt(x[i]));
        }
    }
    if (top_x.size() < 2) throw InputError("top decade holds fewer than two usable points");
    report.sqrt_ratio = ratio_trend(top_x, top_ratio);
    report.log_ratio = ratio_trend(x, log_ratio);
    report.crossover_sqrt = crossover(x, y, 2.0);
    report.crossover_cbrt = crossover(x, y, 3.0);

    for (std::size_t i = 0; i < x.size(); ++i) {
        ComparatorRow row{x[i], used[i]->env, t[i], std::exp(-(fit.slope * t[i] + fit.intercept)),
                          kNaN, kNaN, kNaN, kNaN};
        if (comparators) {
            row.gevrey2 = std::exp(-comparator::subexponential(x[i], 2.0));
            row.gevrey3 = std::exp(-comparator::subexponential(x[i], 3.0));
            row.log_tempered = std::exp(-comparator::log_tempered(x[i], sigma));
            row.exponential = std::exp(-comparator::exponential(x[i]));
        }
        report.table.push_back(row);
    }
    return report;
}

void require_decay_fit(const DecayFitReport& report, double r2_min, const std::string& path) {
    if (!(report.h_fit > 0.0)) {
        throw VerificationError(path + "/h_fit", fmt::format("fitted decay slope {:.6g} is not positive", report.h_fit));
    }
    if (!(report.r_squared >= r2_min)) {
        throw VerificationError(path + "/r_squared",
                                fmt::format("decay fit r^2 = {:.6g} below {:.3g}", report.r_squared, r2_min));
    }
}

DerivativeDecayReport derivative_decay_check(const SpectralFunction& spectrum, int order,
                                             std::span<const double> x_probe, const LatticeSpec& lattice,
                                             double sigma, std::optional<double> h_target, double rel_floor) {
    if (order < 0 || order > 12) throw PreconditionError(fmt::format("derivative order {} outside [0, 12]", order));
    const LatticeSynthesis syn = synthesize_psi_lattice(psi_derivative_spectrum(spectrum, order), lattice);
    const Envelope env = decay_envelope(syn.values, x_probe, rel_floor);
    DerivativeDecayReport report;
    report.order = order;
    report.sup = env.sup;
    report.imag_residue = syn.imag_residue;
    report.fit = fit_decay(env, sigma, false);
    if (h_target) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& row : report.fit.table) best = std::max(best, std::log(row.env) + *h_target * row.t_sigma);
        report.ln_c_at_target = best;
    }
    return report;
}

InterceptGrowth intercept_growth(std::span<const DerivativeDecayReport> reports, double s) {
    if (reports.empty()) throw InputError("intercept growth needs at least one derivative report");
    InterceptGrowth out;
    out.s = s;
    out.h_common = std::numeric_limits<double>::infinity();
    for (const auto& r : reports) out.h_common = std::min(out.h_common, r.fit.h_fit);
    out.ln_k = -std::numeric_limits<double>::infinity();
    for (const auto& r : reports) {
        double ln_c = -std::numeric_limits<double>::infinity();
        for (const auto& row : r.fit.table) ln_c = std::max(ln_c, std::log(row.env) + out.h_common * row.t_sigma);
        out.orders.push_back(r.order);
        out.ln_c.push_back(ln_c);
        out.ln_k = std::max(out.ln_k, (ln_c - s * std::lgamma(r.order + 1.0)) / (r.order + 1.0));
    }
    out.feasible = out.h_common > 0.0 && std::isfinite(out.ln_k);
    return out;
}

namespace {

// Smallest objective over the vertices of {v : rows v >= rhs} in up to three dimensions.
struct VertexResult {
    std::array<double, 3> v{};
    bool found = false;
};

bool solve(std::array<std::array<double, 4>, 3> m, std::size_t dim, std::array<double, 3>& out) {
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < dim; ++r) {
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        }
        if (std::abs(m[piv][c]) < 1e-12) return false;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= dim; ++k) m[r][k] -= f * m[c][k];
        }
    }
    for (std::size_t c = 0; c < dim; ++c) out[c] = m[c][dim] / m[c][c];
    return true;
}

VertexResult best_vertex(const std::vector<std::array<double, 3>>& rows, const std::vector<double>& rhs,
                         const std::array<double, 3>& objective, std::size_t dim) {
    VertexResult best;
    double best_obj = std::numeric_limits<double>::infinity();
    const std::size_t n = rows.size();
    std::vector<std::size_t> pick(dim);
    auto consider = [&] {
        std::array<std::array<double, 4>, 3> m{};
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) m[r][c] = rows[pick[r]][c];
            m[r][dim] = rhs[pick[r]];
        }
        std::array<double, 3> v{};
        if (!solve(m, dim, v)) return;
        for (std::size_t i = 0; i < n; ++i) {
            double lhs = 0.0;
            for (std::size_t c = 0; c < dim; ++c) lhs += rows[i][c] * v[c];
            if (lhs < rhs[i] - 1e-9 * std::max(1.0, std::abs(rhs[i]))) return;
        }
        double obj = 0.0;
        for (std::size_t c = 0; c < dim; ++c) obj += objective[c] * v[c];
        if (obj < best_obj - 1e-12) {
            best_obj = obj;
            best.v = v;
            best.found = true;
        }
    };
    // Enumerate increasing index tuples of length dim.
    for (std::size_t i = 0; i < n; ++i) {
        pick[0] = i;
        if (dim == 1) {
            consider();
            continue;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            pick[1] = j;
            if (dim == 2) {
                consider();
                continue;
            }
            for (std::size_t k = j + 1; k < n; ++k) {
                pick[2] = k;
                consider();
            }
        }
    }
    return best;
}

} // namespace

MixedAuditReport mixed_bound_audit(const SpectralFunction& spectrum, const LatticeSpec& lattice, int k_max,
                                   int q_max, double s, const SequenceParams& params, double rel_floor) {
    if (k_max < 0 || k_max > 10 || q_max < 0 || q_max > 10) {
        throw PreconditionError(fmt::format("mixed audit needs 0 <= k_max, q_max <= 10 (got {}, {})", k_max, q_max));
    }
    if (!(s > 0.0 && s <= 1.0)) throw DomainError(fmt::format("mixed audit needs s in (0, 1] (got {})", s));
    MixedAuditReport report;
    report.k_max = k_max;
    report.q_max = q_max;
    report.s = s;
    report.tau = params.tau();
    report.sigma = params.sigma();

    for (int q = 0; q <= q_max; ++q) {
        const LatticeSynthesis syn = synthesize_psi_lattice(psi_derivative_spectrum(spectrum, q), lattice);
        const GridFunction& f = syn.values;
        const TailHull tail(f);
        const double floor = rel_floor * f.sup_abs();
        std::size_t reach = 0;
        while (reach + 1 < tail.hull.size() && tail.hull[reach + 1] >= floor) ++reach;
        const double x_reach = static_cast<double>(reach) * tail.spacing;
        report.trusted_reach.push_back(x_reach);

        std::vector<double> sup(static_cast<std::size_t>(k_max) + 1, 0.0);
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double ax = std::abs(f.x(j));
            if (ax > x_reach + 1e-9) continue;
            const double v = std::abs(f[j]);
            double w = 1.0;
            for (int k = 0; k <= k_max; ++k) {
                sup[static_cast<std::size_t>(k)] = std::max(sup[static_cast<std::size_t>(k)], w * v);
                w *= ax;
            }
        }
        const double qd = q;
        const double weight = q < 2 ? 0.0 : params.tau() * std::pow(qd, params.sigma()) * std::log(qd);
        for (int k = 0; k <= k_max; ++k) {
            MixedCell cell{k, q, std::log(sup[static_cast<std::size_t>(k)]), 0.0, 0.0};
            cell.rhs = cell.ln_sup - s * std::lgamma(k + 1.0) - weight;
            if (std::isnan(cell.rhs) || cell.rhs == std::numeric_limits<double>::infinity()) {
                report.violations.emplace_back(k, q);
            }
            report.cells.push_back(cell);
        }
    }
    if (!report.violations.empty()) return report;

    // Variables: ln C, then ln A when k varies, then ln B when q varies.
    const bool use_a = k_max > 0;
    const bool use_b = q_max > 0;
    const std::size_t dim = 1 + (use_a ? 1 : 0) + (use_b ? 1 : 0);
    std::vector<std::array<double, 3>> rows;
    std::vector<double> rhs;
    for (const auto& c : report.cells) {
        if (c.rhs == -std::numeric_limits<double>::infinity()) continue;
        std::array<double, 3> row{1.0, 0.0, 0.0};
        std::size_t col = 1;
        if (use_a) row[col++] = c.k;
        if (use_b) row[col] = c.q;
        rows.push_back(row);
        rhs.push_back(c.rhs);
    }
    std::array<double, 3> objective{1.0, 0.0, 0.0};
    {
        std::size_t col = 1;
        if (use_a) objective[col++] = k_max;
        if (use_b) objective[col] = q_max;
    }
    const VertexResult best = best_vertex(rows, rhs, objective, dim);
    if (!best.found) {
        for (const auto& c : report.cells) report.violations.emplace_back(c.k, c.q);
        return report;
    }
    std::size_t col = 0;
    report.ln_c = best.v[col++];
    report.ln_a = use_a ? best.v[col++] : 0.0;
    report.ln_b = use_b ? best.v[col] : 0.0;
    report.feasible = true;
    for (auto& c : report.cells) {
        c.slack = report.ln_c + c.k * report.ln_a + c.q * report.ln_b - c.rhs;
        if (c.slack < -1e-9 * std::max(1.0, std::abs(c.rhs))) {
            report.feasible = false;
            report.violations.emplace_back(c.k, c.q);
        }
    }
    return report;
}

} // namespace gevwave
