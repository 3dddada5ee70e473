#include "gevwave/pipeline.hpp"

#include "gevwave/bell_wavelet.hpp"
#include "gevwave/errors.hpp"
#include "gevwave/gevrey_seq.hpp"
#include "gevwave/lambert.hpp"
#include "gevwave/mollifier.hpp"
#include "gevwave/verify.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <numbers>
#include <type_traits>

#include <boost/version.hpp>
#include <fftw3.h>
#include <fmt/format.h>
#include <openssl/opensslv.h>

namespace gevwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kToolVersion = "1.0.0";

// Single list of configuration keys shared by the echo, the JSON overlay and the CLI.
template <class Config, class Visitor>
void visit_fields(Config& c, Visitor&& v) {
    v("sigma", c.sigma);
    v("tau", c.tau);
    v("a", c.a);
    v("decay_a", c.decay_a);
    v("space_pow", c.space_pow);
    v("block_depth", c.block_depth);
    v("cutoff", c.cutoff);
    v("base", c.base);
    v("audit_n_max", c.audit_n_max);
    v("freq_pow", c.freq_pow);
    v("period_pow", c.period_pow);
    v("lattice_pow", c.lattice_pow);
    v("lambert_xmin", c.lambert_xmin);
    v("lambert_xmax", c.lambert_xmax);
    v("lambert_points", c.lambert_points);
    v("lambert_log", c.lambert_log);
    v("assoc_kmin", c.assoc_kmin);
    v("assoc_kmax", c.assoc_kmax);
    v("assoc_points", c.assoc_points);
    v("seq_p_max", c.seq_p_max);
    v("gram_m_min", c.gram_m_min);
    v("gram_m_max", c.gram_m_max);
    v("gram_n_min", c.gram_n_min);
    v("gram_n_max", c.gram_n_max);
    v("dyadic_window", c.dyadic_window);
    v("dyadic_points", c.dyadic_points);
    v("completeness_window", c.completeness_window);
    v("completeness_n_cap", c.completeness_n_cap);
    v("test_centre", c.test_centre);
    v("test_width", c.test_width);
    v("test_cut", c.test_cut);
    v("decay_xmin", c.decay_xmin);
    v("decay_xmax", c.decay_xmax);
    v("decay_points", c.decay_points);
    v("derivative_orders", c.derivative_orders);
    v("intercept_order_max", c.intercept_order_max);
    v("s", c.s);
    v("mixed_k_max", c.mixed_k_max);
    v("mixed_q_max", c.mixed_q_max);
    v("psi_xmax", c.psi_xmax);
    v("cross_points", c.cross_points);
    v("out_dir", c.out_dir);
    v("phi_file", c.phi_file);
    v("tolerances.lambert_residual", c.tol.lambert_residual);
    v("tolerances.mass", c.tol.mass);
    v("tolerances.evenness", c.tol.evenness);
    v("tolerances.derivative_slack", c.tol.derivative_slack);
    v("tolerances.theta_symmetry", c.tol.theta_symmetry);
    v("tolerances.norm", c.tol.norm);
    v("tolerances.imag", c.tol.imag);
    v("tolerances.cross", c.tol.cross);
    v("tolerances.gram", c.tol.gram);
    v("tolerances.dyadic", c.tol.dyadic);
    v("tolerances.completeness", c.tol.completeness);
    v("tolerances.completeness_change", c.tol.completeness_change);
    v("tolerances.r2_min", c.tol.r2_min);
    v("tolerances.fit_band", c.tol.fit_band);
    v("tolerances.noise_floor", c.tol.noise_floor);
}

template <class T>
inline constexpr bool kIsOptionalDouble = std::is_same_v<T, std::optional<double>>;

template <class T>
void assign(const std::string& key, const io::Json& value, T& field) {
    auto mismatch = [&](const char* expected) {
        return ConfigError(key, fmt::format("config field '{}' expects {}, got {}", key, expected, value.dump()));
    };
    if constexpr (std::is_same_v<T, double>) {
        if (!value.is_number()) throw mismatch("a number");
        field = value.get<double>();
    } else if constexpr (std::is_same_v<T, int>) {
        if (!value.is_number_integer()) throw mismatch("an integer");
        field = value.get<int>();
    } else if constexpr (std::is_same_v<T, unsigned>) {
        if (!value.is_number_integer() || value.get<long long>() < 0) throw mismatch("a nonnegative integer");
        field = value.get<unsigned>();
    } else if constexpr (std::is_same_v<T, bool>) {
        if (!value.is_boolean()) throw mismatch("a boolean");
        field = value.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!value.is_string()) throw mismatch("a string");
        field = value.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::filesystem::path>) {
        if (!value.is_string()) throw mismatch("a path string");
        field = value.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
        if (!value.is_array()) throw mismatch("an array of integers");
        std::vector<int> out;
        for (const auto& e : value) {
            if (!e.is_number_integer()) throw mismatch("an array of integers");
            out.push_back(e.get<int>());
        }
        field = std::move(out);
    } else if constexpr (kIsOptionalDouble<T>) {
        if (value.is_null()) {
            field.reset();
        } else {
            if (!value.is_number()) throw mismatch("a number or null");
            field = value.get<double>();
        }
    }
}

template <class T>
io::Json echo(const T& field) {
    if constexpr (std::is_same_v<T, std::filesystem::path>) {
        return field.generic_string();
    } else if constexpr (kIsOptionalDouble<T>) {
        return field ? io::Json(*field) : io::Json(nullptr);
    } else {
        return field;
    }
}

template <class Number>
Number parse_number(const std::string& key, std::string_view text) {
    Number value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(key, fmt::format("config field '{}' cannot parse '{}' as a number", key, text));
    }
    return value;
}

// Command-line text to the JSON value `assign` expects for a field of type T.
template <class T>
io::Json parse_text(const std::string& key, const std::string& text) {
    if constexpr (std::is_same_v<T, double>) {
        return parse_number<double>(key, text);
    } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, unsigned>) {
        return parse_number<long long>(key, text);
    } else if constexpr (std::is_same_v<T, bool>) {
        if (text == "true" || text == "1" || text == "yes") return true;
        if (text == "false" || text == "0" || text == "no") return false;
        throw ConfigError(key, fmt::format("config field '{}' expects true or false, got '{}'", key, text));
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
        io::Json out = io::Json::array();
        std::string_view rest = text;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            out.push_back(parse_number<int>(key, rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return out;
    } else if constexpr (kIsOptionalDouble<T>) {
        if (text == "auto") return nullptr;
        return parse_number<double>(key, text);
    } else {
        return text;
    }
}

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw ConfigError(field, fmt::format("invalid config field '{}': {}", field, what));
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string half_width_message(double got) {
    return fmt::format("must lie in the admissible interval (0, pi/3) = (0, {:.17g}); got {}", kMaxBellHalfWidth, got);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

io::Json tool_versions() {
    return {
        {"gevwave", kToolVersion},
        {"compiler", __VERSION__},
        {"fftw", std::string(fftw_version)},
        {"boost", BOOST_LIB_VERSION},
        {"openssl", OPENSSL_VERSION_TEXT},
        {"fmt", FMT_VERSION},
        {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                      NLOHMANN_JSON_VERSION_PATCH)},
    };
}

io::Json interval_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}}; }

io::Json fit_json(const DecayFitReport& f) {
    return {
        {"sigma", f.sigma},
        {"h_fit", f.h_fit},
        {"h_stderr", f.h_stderr},
        {"intercept", f.intercept},
        {"r_squared", f.r_squared},
        {"x_range", interval_json(f.x_range)},
        {"used_points", f.used_points},
        {"dropped_points", f.dropped_points},
        {"sqrt_ratio_trend", {{"slope", f.sqrt_ratio.slope}, {"first", f.sqrt_ratio.first}, {"last", f.sqrt_ratio.last}}},
        {"log_ratio_trend", {{"slope", f.log_ratio.slope}, {"first", f.log_ratio.first}, {"last", f.log_ratio.last}}},
        {"crossover_sqrt", f.crossover_sqrt},
        {"crossover_cbrt", f.crossover_cbrt},
    };
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return g;
}

class Runner {
public:
    Runner(const RunConfig& cfg, io::Json invocation)
        : cfg_(cfg), invocation_(std::move(invocation)), lattice_{cfg.period_pow, cfg.lattice_pow}, params_(cfg.tau, cfg.sigma) {}

    RunResult run(Command command) {
        const auto t0 = Clock::now();
        const std::string started = utc_timestamp();
        std::error_code ec;
        std::filesystem::create_directories(cfg_.out_dir, ec);
        if (ec || !std::filesystem::is_directory(cfg_.out_dir)) {
            throw ConfigError("out_dir", fmt::format("output directory {} is not writable: {}",
                                                     cfg_.out_dir.string(), ec.message()));
        }

        std::vector<Command> stages;
        if (command == Command::all) {
            stages = {Command::lambert_table, Command::assoc_func,  Command::build_mollifier, Command::build_wavelet,
                      Command::verify_onw,    Command::decay_fit,   Command::mixed_audit};
        } else {
            stages = {command};
        }

        io::Json error = nullptr;
        int error_code = 0;
        for (Command stage : stages) {
            const std::string name = to_string(stage);
            const auto ts = Clock::now();
            try {
                sections_[name] = run_stage(stage);
            } catch (const VerificationError& e) {
                check(e.path(), false, 0.0, 0.0, "status", e.what());
            } catch (const Error& e) {
                error = {{"stage", name}, {"kind", kind_name(e.kind())}, {"message", e.what()}};
                error_code = exit_code_for(e.kind());
            } catch (const std::exception& e) {
                error = {{"stage", name}, {"kind", "internal"}, {"message", e.what()}};
                error_code = 3;
            }
            timings_[name] = seconds_since(ts);
            if (error_code != 0) break;
        }

        RunResult result;
        result.assertions = assertions_;
        for (const auto& a : assertions_) {
            if (!a.passed) result.failed.push_back(a.path);
        }
        result.exit_code = error_code != 0 ? error_code : (result.failed.empty() ? 0 : 1);
        const std::string status = error_code != 0 ? "error" : (result.failed.empty() ? "pass" : "fail");

        io::Json assertions = io::Json::array();
        for (const auto& a : assertions_) {
            assertions.push_back({{"path", a.path},
                                  {"passed", a.passed},
                                  {"value", a.value},
                                  {"relation", a.relation},
                                  {"limit", a.limit},
                                  {"note", a.note}});
        }
        result.report = {
            {"tool_versions", tool_versions()},
            {"command", to_string(command)},
            {"config", cfg_.to_json()},
            {"stages", sections_},
            {"assertions", std::move(assertions)},
            {"failed_assertions", result.failed},
            {"status", status},
            {"error", error},
        };
        write_json("report.json", result.report);

        io::Json artifacts = io::Json::array();
        std::sort(artifacts_.begin(), artifacts_.end());
        for (const auto& name : artifacts_) {
            const auto path = cfg_.out_dir / name;
            artifacts.push_back({{"file", name},
                                 {"bytes", std::filesystem::file_size(path)},
                                 {"sha256", io::sha256_file(path)}});
        }
        timings_["total"] = seconds_since(t0);
        result.manifest = {
            {"tool", "gevwave"},
            {"version", kToolVersion},
            {"command", to_string(command)},
            {"started_utc", started},
            {"invocation", invocation_},
            {"config", cfg_.to_json()},
            {"artifacts", std::move(artifacts)},
            {"timings_s", timings_},
            {"status", status},
            {"exit_code", result.exit_code},
            {"failed_assertions", result.failed},
            {"error", error},
        };
        io::write_json(cfg_.out_dir / "manifest.json", result.manifest);
        return result;
    }

private:
    using Clock = std::chrono::steady_clock;

    static double seconds_since(Clock::time_point t) {
        return std::chrono::duration<double>(Clock::now() - t).count();
    }

    static const char* kind_name(ErrorKind kind) {
        switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::input: return "input";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::resolution: return "resolution";
        case ErrorKind::verification: return "verification";
        case ErrorKind::config: return "config";
        }
        return "unknown";
    }

    io::Json run_stage(Command stage) {
        switch (stage) {
        case Command::lambert_table: return lambert_stage();
        case Command::assoc_func: return assoc_stage();
        case Command::build_mollifier: return mollifier_stage();
        case Command::build_wavelet: return wavelet_stage();
        case Command::verify_onw: return onw_stage();
        case Command::decay_fit: return decay_stage();
        case Command::mixed_audit: return mixed_stage();
        case Command::all: break;
        }
        throw InputError("'all' is not a single stage");
    }

    void check(std::string path, bool passed, double value, double limit, std::string relation,
               std::string note = {}) {
        assertions_.push_back({std::move(path), passed, value, limit, std::move(relation), std::move(note)});
    }
    void check_le(const std::string& path, double value, double limit) {
        check(path, value <= limit, value, limit, "<=");
    }
    void check_ge(const std::string& path, double value, double limit) {
        check(path, value >= limit, value, limit, ">=");
    }
    void check_gt(const std::string& path, double value, double limit) {
        check(path, value > limit, value, limit, ">");
    }

    io::CsvWriter csv(const std::string& name, std::initializer_list<std::string_view> header) {
        artifacts_.push_back(name);
        return io::CsvWriter(cfg_.out_dir / name, header);
    }
    void write_json(const std::string& name, const io::Json& doc) {
        if (name != "report.json") artifacts_.push_back(name);
        io::write_json(cfg_.out_dir / name, doc);
    }

    const MollifierBuild& mollifier() {
        if (!build_) {
            MollifierSpec spec;
            spec.sigma = cfg_.sigma;
            spec.m_max = cfg_.block_depth;
            spec.grid = SpaceGrid{1.5, cfg_.space_pow};
            spec.cutoff = cfg_.cutoff;
            spec.base = parse_base_kernel(cfg_.base);
            spec.max_mass_drift = 1e-8;
            build_ = build_mollifier(spec);
        }
        return *build_;
    }
    const Wavelet& wavelet() {
        if (!wavelet_) wavelet_.emplace(Bell(cfg_.a, mollifier()));
        return *wavelet_;
    }
    const Wavelet& decay_wavelet() {
        if (!decay_wavelet_) decay_wavelet_.emplace(Bell(cfg_.decay_a, mollifier()));
        return *decay_wavelet_;
    }
    double freq_dxi() const { return 2.0 * kPi / std::ldexp(1.0, static_cast<int>(cfg_.freq_pow)); }

    // ---------------------------------------------------------------------------------
    io::Json lambert_stage() {
        const auto points = static_cast<std::size_t>(cfg_.lambert_points);
        const std::vector<double> grid = cfg_.lambert_log ? log_grid(cfg_.lambert_xmin, cfg_.lambert_xmax, points)
                                                          : linear_grid(cfg_.lambert_xmin, cfg_.lambert_xmax, points);
        const double e = std::numbers::e;
        auto out = csv("lambert.csv", {"x", "w", "residual", "lower_bound", "upper_bound"});
        double max_residual = 0.0;
        double min_step = std::numeric_limits<double>::infinity();
        double prev = -1.0;
        std::vector<double> bound_x;
        for (double x : grid) {
            const double w = lambert_w0(x);
            const double residual = std::abs(w * std::exp(w) - x) / std::max(1.0, x);
            max_residual = std::max(max_residual, residual);
            if (prev >= 0.0) min_step = std::min(min_step, w - prev);
            prev = w;
            double lower = std::numeric_limits<double>::quiet_NaN();
            double upper = lower;
            if (x >= e) {
                const double lnx = std::log(x);
                lower = lnx - std::log(lnx);
                upper = lnx - 0.5 * std::log(lnx);
                if (x > e) bound_x.push_back(x);
            }
            out.row({x, w, residual, lower, upper});
        }
        out.close();

        check_le("lambert-table/residual/max", max_residual, cfg_.tol.lambert_residual);
        check_ge("lambert-table/monotone/min_step", min_step, 0.0);
        io::Json bounds = nullptr;
        if (!bound_x.empty()) {
            const WBoundReport rep = w_bounds_check(bound_x);
            check_gt("lambert-table/bounds/min_lower_slack", rep.min_lower_slack, 0.0);
            check_gt("lambert-table/bounds/min_upper_slack", rep.min_upper_slack, 0.0);
            bounds = {{"points", rep.points.size()},
                      {"min_lower_slack", rep.min_lower_slack},
                      {"min_upper_slack", rep.min_upper_slack}};
        }
        const WBoundReport at_e = w_bounds_check(std::vector<double>{e});
        check_le("lambert-table/bounds/equality_at_e",
                 std::max(std::abs(at_e.min_lower_slack), std::abs(at_e.min_upper_slack)), 1e-15);
        const double w_top = lambert_w0(grid.back());
        return {
            {"points", grid.size()},
            {"log_spacing", cfg_.lambert_log},
            {"range", {grid.front(), grid.back()}},
            {"max_residual", max_residual},
            {"min_step", min_step},
            {"bounds_above_e", bounds},
            {"w_over_ln_x_at_max", grid.back() > 1.0 ? w_top / std::log(grid.back()) : std::nan("")},
        };
    }

    io::Json assoc_stage() {
        const std::vector<double> grid =
            log_grid(cfg_.assoc_kmin, cfg_.assoc_kmax, static_cast<std::size_t>(cfg_.assoc_points));
        const double scale = std::pow(cfg_.tau, -1.0 / (cfg_.sigma - 1.0));
        auto out = csv("assoc.csv", {"k", "t_exact", "argmax_p", "t_asym", "ratio"});
        double worst_enum = 0.0;
        double min_step = std::numeric_limits<double>::infinity();
        double prev = -1.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (double k : grid) {
            const AssocFnReport r = assoc_t_exact(k, params_);
            const AssocFnReport full = assoc_t_enumerate(k, params_, 10 * r.argmax_p + 50);
            worst_enum = std::max(worst_enum, std::abs(full.t_exact - r.t_exact) / std::max(1.0, r.t_exact));
            if (prev >= 0.0) min_step = std::min(min_step, r.t_exact - prev);
            prev = r.t_exact;
            if (std::isfinite(r.ratio)) {
                lo = std::min(lo, r.ratio);
                hi = std::max(hi, r.ratio);
            }
            out.row({k, r.t_exact, static_cast<double>(r.argmax_p), r.t_asym, r.ratio});
        }
        out.close();

        check_le("assoc-func/enumeration/max_rel_diff", worst_enum, 1e-12);
        check_ge("assoc-func/monotone/min_step", min_step, 0.0);
        const double band = hi / lo;
        check_le("assoc-func/ratio_band", band, cfg_.tol.fit_band);

        io::Json audit = nullptr;
        try {
            const SeqAuditReport rep = seq_property_audit(params_, static_cast<std::size_t>(cfg_.seq_p_max));
            audit = {{"p_max", rep.p_max},
                     {"min_convexity_margin", rep.min_convexity_margin},
                     {"min_ratio_slack", rep.min_ratio_slack},
                     {"min_ln_c", rep.min_ln_c},
                     {"ln_c_argmax", {rep.ln_c_argmax.first, rep.ln_c_argmax.second}},
                     {"ratio_series_partial", rep.ratio_series_partial},
                     {"quasianalytic", rep.quasianalytic}};
            check("assoc-func/sequence_audit", true, 0.0, 0.0, "status");
        } catch (const VerificationError& e) {
            check(e.path(), false, 0.0, 0.0, "status", e.what());
        }
        return {
            {"tau", cfg_.tau},
            {"sigma", cfg_.sigma},
            {"asymptotic_scale", scale},
            {"points", grid.size()},
            {"ratio_min", lo},
            {"ratio_max", hi},
            {"ratio_band", band},
            {"sequence_audit", audit},
        };
    }

    io::Json mollifier_stage() {
        const MollifierBuild& b = mollifier();
        const GridFunction& phi = b.phi;
        const std::filesystem::path phi_name = cfg_.phi_file;
        if (phi_name.has_parent_path()) throw ConfigError("phi_file", "phi_file must be a bare file name");
        {
            auto out = csv(cfg_.phi_file, {"x", "phi"});
            for (std::size_t j = 0; j < phi.size(); ++j) out.row({phi.x(j), phi[j]});
            out.close();
        }
        double reach = 0.0;
        for (std::size_t j = 0; j < phi.size(); ++j) {
            if (phi[j] != 0.0) reach = std::max(reach, std::abs(phi.x(j)));
        }
        const double mass = phi.integral();
        check_le("build-mollifier/support/max_abs_x", std::max(reach, std::max(-phi.support().lo, phi.support().hi)), 1.0);
        check_le("build-mollifier/mass/abs_error", std::abs(mass - 1.0), cfg_.tol.mass);
        check_ge("build-mollifier/nonnegative/min", phi.min(), 0.0);
        check_le("build-mollifier/evenness/max_error", phi.evenness_error(), cfg_.tol.evenness);

        // The audit needs more factors than its order beyond the first one.
        const int available = static_cast<int>(b.sequence.count()) - 2;
        if (available < 1) throw ResolutionError("too few retained scales for a derivative audit");
        const int audit_order = std::min(cfg_.audit_n_max, available);
        const DerivativeAudit audit = derivative_bound_audit(b, audit_order, cfg_.tol.derivative_slack);
        io::Json rows = io::Json::array();
        for (const auto& r : audit.rows) {
            check(fmt::format("build-mollifier/derivative_bound/n={}", r.order), r.within(audit.rel_slack),
                  r.measured, r.bound * (1.0 + audit.rel_slack), "<=");
            rows.push_back({{"n", r.order}, {"measured", r.measured}, {"bound", r.bound},
                            {"ratio", r.measured / r.bound}});
        }
        io::Json ranges = io::Json::array();
        for (const auto& r : audit.growth.by_range) {
            ranges.push_back({{"n_lo", r.n_lo}, {"n_hi", r.n_hi}, {"ln_c", r.ln_c}, {"tau_eff", r.tau_eff}});
        }
        const ScaleSequence& seq = b.sequence;
        const io::Json provenance = {
            {"sigma", b.sigma},
            {"base", to_string(b.base)},
            {"grid", {{"half_length", 1.5}, {"pow", cfg_.space_pow}, {"dx", phi.dx()}, {"size", phi.size()}}},
            {"cutoff", b.cutoff},
            {"block_depth", cfg_.block_depth},
            {"thresholds", b.thresholds},
            {"first_index", seq.first_index},
            {"trunc_index", seq.trunc_index},
            {"scales", seq.scales},
            {"blocks", seq.blocks},
            {"scale_total", seq.total()},
            {"discarded_tail", seq.discarded_tail},
            {"degenerate", seq.degenerate},
            {"base_norm_c", b.base_norm_c},
            {"base_sup", b.base_sup},
            {"mass_drift", b.mass_drift},
            {"min_before_clamp", b.min_before_clamp},
            {"evenness_error", b.evenness_error},
            {"mass", mass},
            {"sup", phi.sup_abs()},
            {"support", interval_json(phi.support())},
            {"audit_n_max_requested", cfg_.audit_n_max},
            {"audit_n_max", audit_order},
            {"derivative_bounds", std::move(rows)},
            {"band_limit", audit.band_limit},
            {"growth_fit", {{"ln_c", audit.growth.ln_c},
                            {"tau_eff", audit.growth.tau_eff},
                            {"ln_c_upper", audit.growth.ln_c_upper},
                            {"by_range", std::move(ranges)}}},
        };
        write_json("provenance.json", provenance);
        return {{"phi_file", cfg_.phi_file}, {"mass", mass}, {"trunc_index", seq.trunc_index},
                {"scales", seq.count()}, {"audit_passed", audit.passed()}};
    }

    double theta_symmetry(const ThetaFunction& th) const {
        const GridFunction& s = th.samples();
        double worst = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            for (double x : {s.x(j), s.x(j) + 0.37 * s.dx()}) {
                if (std::abs(x) > th.transition().hi + s.dx()) continue;
                worst = std::max(worst, std::abs(th(x) + th(-x) - 0.5 * kPi));
            }
        }
        return worst;
    }

    io::Json wavelet_stage() {
        const Wavelet& w = wavelet();
        const Bell& b = w.bell();
        const double a = cfg_.a;

        const UniformGrid fgrid = frequency_grid(a, cfg_.freq_pow);
        const SpectralFunction bell_samples = bell(b, fgrid);
        const SpectralFunction spectrum = psi_hat(bell_samples);
        double flat_dev = 0.0;
        double outside_max = 0.0;
        double energy = 0.0;
        {
            auto out = csv("psi_hat.csv", {"xi", "re", "im"});
            for (std::size_t j = 0; j < fgrid.size; ++j) {
                const double xi = fgrid.at(j);
                const double z = std::abs(xi);
                const double bv = bell_samples[j].real();
                if (z >= kPi + a && z <= 2.0 * (kPi - a)) flat_dev = std::max(flat_dev, std::abs(bv - 1.0));
                if (z <= kPi - a || z >= 2.0 * (kPi + a)) outside_max = std::max(outside_max, std::abs(bv));
                energy += std::norm(spectrum[j]);
                out.row({xi, spectrum[j].real(), spectrum[j].imag()});
            }
            out.close();
        }
        const double spectral_norm = std::sqrt(energy * fgrid.spacing / (2.0 * kPi));
        check("build-wavelet/bell/flat_top", flat_dev == 0.0, flat_dev, 0.0, "==");
        check("build-wavelet/bell/zero_outside", outside_max == 0.0, outside_max, 0.0, "==");
        const double sym = std::max(theta_symmetry(b.rising()), theta_symmetry(b.falling()));
        check_le("build-wavelet/theta/symmetry", sym, cfg_.tol.theta_symmetry);

        const SpectralFunction lattice_spec = w.sample(frequency_grid(a, cfg_.period_pow));
        const LatticeSynthesis syn = synthesize_psi_lattice(lattice_spec, lattice_);
        const GridFunction& psi = syn.values;
        check_le("build-wavelet/norm/abs_error", std::abs(syn.l2_norm - 1.0), cfg_.tol.norm);
        check_le("build-wavelet/imag_residue", syn.imag_residue, cfg_.tol.imag);

        std::vector<std::size_t> candidates;
        {
            auto out = csv("psi.csv", {"x", "psi"});
            for (std::size_t j = 0; j < psi.size(); ++j) {
                const double x = psi.x(j);
                if (std::abs(x) > cfg_.psi_xmax) continue;
                out.row({x, psi[j]});
                if (std::abs(x) <= 8.0 && std::abs(psi[j]) > 1e-3) candidates.push_back(j);
            }
            out.close();
        }
        if (candidates.size() < static_cast<std::size_t>(cfg_.cross_points)) {
            throw ResolutionError("too few lattice points with |psi| > 1e-3 for the quadrature cross-check");
        }
        io::Json cross = io::Json::array();
        double worst = 0.0;
        const std::size_t count = static_cast<std::size_t>(cfg_.cross_points);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t pick = count == 1 ? 0 : i * (candidates.size() - 1) / (count - 1);
            const std::size_t j = candidates[pick];
            const double direct = eval_psi_point(w, psi.x(j));
            const double rel = std::abs(psi[j] - direct) / std::abs(direct);
            worst = std::max(worst, rel);
            cross.push_back({{"x", psi.x(j)}, {"lattice", psi[j]}, {"quadrature", direct}, {"rel_diff", rel}});
        }
        check_le("build-wavelet/cross_check/max_rel_diff", worst, cfg_.tol.cross);

        const io::Json manifest = {
            {"sigma", cfg_.sigma},
            {"a", a},
            {"support", {{"inner_edge", b.inner_edge()}, {"outer_edge", b.outer_edge()}}},
            {"frequency_grid", {{"xi0", fgrid.origin}, {"dxi", fgrid.spacing}, {"size", fgrid.size}}},
            {"lattice", {{"period", lattice_.period()}, {"samples", lattice_.samples()}, {"spacing", lattice_.spacing()}}},
            {"psi_csv_range", {-cfg_.psi_xmax, cfg_.psi_xmax}},
            {"norms", {{"lattice_l2", syn.l2_norm}, {"spectral_l2", spectral_norm}}},
            {"imag_residue", syn.imag_residue},
            {"sup_abs_psi", psi.sup_abs()},
            {"bell_flat_top_max_dev", flat_dev},
            {"bell_outside_max", outside_max},
            {"theta_symmetry_max_error", sym},
            {"cross_check", std::move(cross)},
        };
        write_json("wavelet.json", manifest);
        return {{"a", a}, {"lattice_l2", syn.l2_norm}, {"imag_residue", syn.imag_residue},
                {"cross_check_max_rel_diff", worst}};
    }

    io::Json onw_stage() {
        const Wavelet& w = wavelet();
        const double dxi = freq_dxi();
        const GramReport gram = gram_matrix(w, cfg_.gram_m_min, cfg_.gram_m_max, cfg_.gram_n_min, cfg_.gram_n_max, dxi);
        {
            auto out = csv("gram.csv", {"m1", "n1", "m2", "n2", "re", "im"});
            for (const auto& e : gram.entries) {
                out.row({static_cast<double>(e.row.m), static_cast<double>(e.row.n), static_cast<double>(e.col.m),
                         static_cast<double>(e.col.n), e.value.real(), e.value.imag()});
            }
            out.close();
        }
        check_le("verify-onw/gram/max_offdiag", gram.max_offdiag, cfg_.tol.gram);
        check_le("verify-onw/gram/max_diag_dev", gram.max_diag_dev, cfg_.tol.gram);

        const std::vector<double> dgrid =
            default_dyadic_grid(cfg_.a, cfg_.dyadic_window, static_cast<std::size_t>(cfg_.dyadic_points));
        const DyadicReport dyadic = dyadic_sum_check(w, dgrid, cfg_.dyadic_window);
        {
            auto out = csv("dyadic.csv", {"xi", "s"});
            for (const auto& r : dyadic.rows) out.row({r.xi, r.sum});
            out.close();
        }
        check_le("verify-onw/dyadic/max_deviation", dyadic.max_deviation, cfg_.tol.dyadic);
        check("verify-onw/dyadic/covered", dyadic.covered == dyadic.rows.size(),
              static_cast<double>(dyadic.covered), static_cast<double>(dyadic.rows.size()), "==");

        const SpectralFunction f = gaussian_test_spectrum(dxi, cfg_.test_centre, cfg_.test_width, cfg_.test_cut);
        const CompletenessReport comp = completeness_check(w, f, cfg_.completeness_window, cfg_.completeness_n_cap,
                                                           cfg_.tol.completeness, cfg_.tol.completeness_change);
        check("verify-onw/completeness/status", comp.status == CheckStatus::pass, std::abs(comp.ratio - 1.0),
              cfg_.tol.completeness, "status", to_string(comp.status));
        io::Json scales = io::Json::array();
        for (const auto& s : comp.scales) {
            scales.push_back({{"m", s.m}, {"n_reach", s.n_reach}, {"energy", s.energy}, {"converged", s.converged}});
        }
        return {
            {"gram", {{"members", gram.members()},
                      {"pairs", gram.entries.size()},
                      {"max_offdiag", gram.max_offdiag},
                      {"worst_offdiag", {gram.worst_offdiag.row.m, gram.worst_offdiag.row.n,
                                         gram.worst_offdiag.col.m, gram.worst_offdiag.col.n}},
                      {"max_diag_dev", gram.max_diag_dev},
                      {"dxi", dxi}}},
            {"dyadic", {{"m_window", dyadic.m_window},
                        {"points", dyadic.rows.size()},
                        {"covered", dyadic.covered},
                        {"max_deviation", dyadic.max_deviation},
                        {"worst_xi", dyadic.worst_xi}}},
            {"completeness", {{"test_function", {{"centre", cfg_.test_centre},
                                                 {"width", cfg_.test_width},
                                                 {"cut", cfg_.test_cut}}},
                              {"m_window", comp.m_window},
                              {"n_cap", comp.n_cap},
                              {"norm_sq", comp.norm_sq},
                              {"ratio", comp.ratio},
                              {"inside_covered_range", comp.inside_covered_range},
                              {"status", to_string(comp.status)},
                              {"scales", std::move(scales)}}},
        };
    }

    io::Json decay_stage() {
        const Wavelet& w = decay_wavelet();
        const SpectralFunction spectrum = w.sample(frequency_grid(cfg_.decay_a, cfg_.period_pow));
        const std::vector<double> probes =
            log_grid(cfg_.decay_xmin, cfg_.decay_xmax, static_cast<std::size_t>(cfg_.decay_points));

        std::map<int, DerivativeDecayReport> by_order;
        auto report_for = [&](int n) -> const DerivativeDecayReport& {
            auto it = by_order.find(n);
            if (it == by_order.end()) {
                it = by_order.emplace(n, derivative_decay_check(spectrum, n, probes, lattice_, cfg_.sigma,
                                                                std::nullopt, cfg_.tol.noise_floor)).first;
            }
            return it->second;
        };

        // psi itself, with the comparator table.
        const LatticeSynthesis syn = synthesize_psi_lattice(spectrum, lattice_);
        const Envelope env = decay_envelope(syn.values, probes, cfg_.tol.noise_floor);
        const DecayFitReport fit = fit_decay(env, cfg_.sigma, true);
        {
            auto out = csv("envelope.csv",
                           {"x", "env", "T_sigma", "lambert_bound", "gevrey2", "gevrey3", "moritoh", "exp"});
            for (const auto& r : fit.table) {
                out.row({r.x, r.env, r.t_sigma, r.lambert_bound, r.gevrey2, r.gevrey3, r.log_tempered, r.exponential});
            }
            out.close();
        }
        check_gt("decay-fit/psi/h_fit", fit.h_fit, 0.0);
        check_ge("decay-fit/psi/r_squared", fit.r_squared, cfg_.tol.r2_min);
        check("decay-fit/psi/sqrt_ratio_decreasing", fit.slower_than_subexponential(), fit.sqrt_ratio.slope, 0.0,
              "<", "least-squares slope over the top decade; last value below first");
        check("decay-fit/psi/log_ratio_increasing", fit.faster_than_polynomial(), fit.log_ratio.slope, 0.0, ">",
              "least-squares slope over the full range; last value above first");

        io::Json orders = io::Json::array();
        {
            auto out = csv("derivative_decay.csv",
                           {"n", "h_fit", "h_stderr", "intercept", "r_squared", "sup", "imag_residue"});
            for (int n : cfg_.derivative_orders) {
                const DerivativeDecayReport& r = report_for(n);
                check_gt(fmt::format("decay-fit/derivative/n={}/h_fit", n), r.fit.h_fit, 0.0);
                check_ge(fmt::format("decay-fit/derivative/n={}/r_squared", n), r.fit.r_squared, cfg_.tol.r2_min);
                out.row({static_cast<double>(n), r.fit.h_fit, r.fit.h_stderr, r.fit.intercept, r.fit.r_squared, r.sup,
                         r.imag_residue});
                io::Json entry = fit_json(r.fit);
                entry["order"] = n;
                entry["sup"] = r.sup;
                entry["imag_residue"] = r.imag_residue;
                orders.push_back(std::move(entry));
            }
            out.close();
        }

        std::vector<DerivativeDecayReport> all;
        for (int n = 0; n <= cfg_.intercept_order_max; ++n) all.push_back(report_for(n));
        const InterceptGrowth growth = intercept_growth(all, cfg_.s);
        check("decay-fit/intercepts/growth_feasible", growth.feasible, growth.ln_k, 0.0, "status",
              "ln C_n <= (n+1) ln K + s ln n! at the common slope");
        const MixedAuditReport k0 = mixed_bound_audit(spectrum, lattice_, 0, cfg_.intercept_order_max, cfg_.s,
                                                      params_, cfg_.tol.noise_floor);
        check("decay-fit/intercepts/mixed_k0_feasible", k0.feasible, k0.ln_c, 0.0, "status");

        return {
            {"a", cfg_.decay_a},
            {"probes", {{"xmin", cfg_.decay_xmin}, {"xmax", cfg_.decay_xmax}, {"points", probes.size()}}},
            {"envelope", {{"floor", env.floor}, {"period", env.period}, {"sup", env.sup}}},
            {"psi", fit_json(fit)},
            {"derivatives", std::move(orders)},
            {"intercept_growth", {{"s", growth.s},
                                  {"h_common", growth.h_common},
                                  {"orders", growth.orders},
                                  {"ln_c", growth.ln_c},
                                  {"ln_k", growth.ln_k},
                                  {"feasible", growth.feasible}}},
            {"mixed_k0", {{"feasible", k0.feasible},
                          {"ln_c", k0.ln_c},
                          {"ln_b", k0.ln_b},
                          {"trusted_reach", k0.trusted_reach}}},
        };
    }

    io::Json mixed_stage() {
        const Wavelet& w = wavelet();
        const SpectralFunction spectrum = w.sample(frequency_grid(cfg_.a, cfg_.period_pow));
        const MixedAuditReport rep = mixed_bound_audit(spectrum, lattice_, cfg_.mixed_k_max, cfg_.mixed_q_max, cfg_.s,
                                                       params_, cfg_.tol.noise_floor);
        {
            auto out = csv("mixed.csv", {"k", "q", "ln_sup", "rhs", "slack"});
            for (const auto& c : rep.cells) {
                out.row({static_cast<double>(c.k), static_cast<double>(c.q), c.ln_sup, c.rhs, c.slack});
            }
            out.close();
        }
        check("mixed-audit/feasible", rep.feasible, static_cast<double>(rep.violations.size()), 0.0, "status");
        io::Json violations = io::Json::array();
        for (const auto& [k, q] : rep.violations) violations.push_back({k, q});
        return {
            {"a", cfg_.a},
            {"k_max", rep.k_max},
            {"q_max", rep.q_max},
            {"s", rep.s},
            {"tau", rep.tau},
            {"sigma", rep.sigma},
            {"ln_c", rep.ln_c},
            {"ln_a", rep.ln_a},
            {"ln_b", rep.ln_b},
            {"feasible", rep.feasible},
            {"trusted_reach", rep.trusted_reach},
            {"violations", std::move(violations)},
        };
    }

    const RunConfig& cfg_;
    io::Json invocation_;
    LatticeSpec lattice_;
    SequenceParams params_;
    std::optional<MollifierBuild> build_;
    std::optional<Wavelet> wavelet_;
    std::optional<Wavelet> decay_wavelet_;
    std::vector<Assertion> assertions_;
    std::vector<std::string> artifacts_;
    io::Json sections_ = io::Json::object();
    io::Json timings_ = io::Json::object();
};

} // namespace

void RunConfig::validate() const {
    require(std::isfinite(sigma) && sigma > 1.0, "sigma", fmt::format("must be a finite real > 1; got {}", sigma));
    require(finite_positive(tau), "tau", fmt::format("must be a finite real > 0; got {}", tau));
    require(a > 0.0 && a < kMaxBellHalfWidth, "a", half_width_message(a));
    require(decay_a > 0.0 && decay_a < kMaxBellHalfWidth, "decay_a", half_width_message(decay_a));

    require(space_pow >= 10 && space_pow <= 22, "space_pow", fmt::format("must lie in [10, 22]; got {}", space_pow));
    require(block_depth >= 1 && block_depth <= 12, "block_depth",
            fmt::format("must lie in [1, 12]; got {}", block_depth));
    require(!cutoff || finite_positive(*cutoff), "cutoff", "must be a finite positive length");
    require(base == "box" || base == "smooth_bump", "base",
            fmt::format("must be 'box' or 'smooth_bump'; got '{}'", base));
    require(audit_n_max >= 1 && audit_n_max <= 12, "audit_n_max",
            fmt::format("must lie in [1, 12]; got {}", audit_n_max));

    require(freq_pow >= 8 && freq_pow <= 20, "freq_pow", fmt::format("must lie in [8, 20]; got {}", freq_pow));
    require(period_pow >= 8 && period_pow <= 20, "period_pow", fmt::format("must lie in [8, 20]; got {}", period_pow));
    require(lattice_pow > period_pow && lattice_pow <= 24, "lattice_pow",
            fmt::format("must lie in (period_pow, 24]; got {}", lattice_pow));

    require(std::isfinite(lambert_xmin) && lambert_xmin >= 0.0, "lambert_xmin", "must be a finite real >= 0");
    require(!lambert_log || lambert_xmin > 0.0, "lambert_xmin", "must be > 0 for a log grid");
    require(std::isfinite(lambert_xmax) && lambert_xmax > lambert_xmin, "lambert_xmax",
            "must be finite and exceed lambert_xmin");
    require(lambert_points >= 2 && lambert_points <= 1000000, "lambert_points", "must lie in [2, 1e6]");

    require(std::isfinite(assoc_kmin) && assoc_kmin > 1.0, "assoc_kmin", "must be a finite real > 1");
    require(std::isfinite(assoc_kmax) && assoc_kmax > assoc_kmin, "assoc_kmax", "must be finite and exceed assoc_kmin");
    require(assoc_points >= 2 && assoc_points <= 100000, "assoc_points", "must lie in [2, 1e5]");
    require(seq_p_max >= 2 && seq_p_max <= 10000, "seq_p_max", "must lie in [2, 10000]");

    require(gram_m_min <= gram_m_max && std::abs(gram_m_min) <= 30 && std::abs(gram_m_max) <= 30, "gram_m_max",
            "scale range must be nonempty within [-30, 30]");
    require(gram_n_min <= gram_n_max, "gram_n_max", "translation range must be nonempty");
    require(dyadic_window >= 1 && dyadic_window <= 30, "dyadic_window", "must lie in [1, 30]");
    require(dyadic_points >= 2, "dyadic_points", "must be at least 2");
    require(completeness_window >= 0 && completeness_window <= 30, "completeness_window", "must lie in [0, 30]");
    require(completeness_n_cap >= 8, "completeness_n_cap", "must be at least 8");
    require(finite_positive(test_width), "test_width", "must be a finite positive real");
    require(finite_positive(test_cut), "test_cut", "must be a finite positive real");
    require(std::isfinite(test_centre) && test_centre - test_cut * test_width > 0.0, "test_centre",
            "test spectrum must stay away from xi = 0 (centre > cut * width)");

    require(finite_positive(decay_xmin), "decay_xmin", "must be a finite positive real");
    require(std::isfinite(decay_xmax) && decay_xmax > decay_xmin, "decay_xmax", "must be finite and exceed decay_xmin");
    require(decay_points >= 30, "decay_points", "must be at least 30");
    for (int n : derivative_orders) {
        require(n >= 0 && n <= 12, "derivative_orders", fmt::format("orders must lie in [0, 12]; got {}", n));
    }
    require(intercept_order_max >= 0 && intercept_order_max <= 10, "intercept_order_max", "must lie in [0, 10]");
    require(s > 0.0 && s <= 1.0, "s", fmt::format("must lie in (0, 1]; got {}", s));
    require(mixed_k_max >= 0 && mixed_k_max <= 10, "mixed_k_max", "must lie in [0, 10]");
    require(mixed_q_max >= 0 && mixed_q_max <= 10, "mixed_q_max", "must lie in [0, 10]");
    require(finite_positive(psi_xmax) && psi_xmax <= 0.5 * std::ldexp(1.0, static_cast<int>(period_pow)), "psi_xmax",
            "must lie in (0, L/2]");
    require(cross_points >= 1 && cross_points <= 1000, "cross_points", "must lie in [1, 1000]");

    const std::pair<const char*, double> tols[] = {
        {"tolerances.lambert_residual", tol.lambert_residual}, {"tolerances.mass", tol.mass},
        {"tolerances.evenness", tol.evenness}, {"tolerances.derivative_slack", tol.derivative_slack},
        {"tolerances.theta_symmetry", tol.theta_symmetry}, {"tolerances.norm", tol.norm},
        {"tolerances.imag", tol.imag}, {"tolerances.cross", tol.cross}, {"tolerances.gram", tol.gram},
        {"tolerances.dyadic", tol.dyadic}, {"tolerances.completeness", tol.completeness},
        {"tolerances.completeness_change", tol.completeness_change}, {"tolerances.r2_min", tol.r2_min},
        {"tolerances.fit_band", tol.fit_band}, {"tolerances.noise_floor", tol.noise_floor},
    };
    for (const auto& [name, value] : tols) require(finite_positive(value), name, "must be a finite positive real");
    require(tol.r2_min <= 1.0, "tolerances.r2_min", "must not exceed 1");
    require(tol.fit_band >= 1.0, "tolerances.fit_band", "must be at least 1");

    require(!out_dir.empty(), "out_dir", "must not be empty");
    require(!phi_file.empty() && !std::filesystem::path(phi_file).has_parent_path(), "phi_file",
            "must be a bare file name");
}

double RunConfig::effective_cutoff() const {
    return cutoff ? *cutoff : 4.0 * SpaceGrid{1.5, space_pow}.dx();
}

io::Json RunConfig::to_json() const {
    io::Json doc = io::Json::object();
    io::Json tolerances = io::Json::object();
    visit_fields(*this, [&](std::string_view key, const auto& field) {
        if (key.starts_with("tolerances.")) {
            tolerances[std::string(key.substr(11))] = echo(field);
        } else if (key == "cutoff") {
            doc["cutoff"] = effective_cutoff();
        } else {
            doc[std::string(key)] = echo(field);
        }
    });
    doc["tolerances"] = std::move(tolerances);
    return doc;
}

void RunConfig::merge(const io::Json& doc) {
    if (!doc.is_object()) throw ConfigError("config", "config document must be a JSON object");
    std::map<std::string, const io::Json*> flat;
    for (const auto& [key, value] : doc.items()) {
        if (key == "tolerances") {
            if (!value.is_object()) throw ConfigError("tolerances", "'tolerances' must be an object");
            for (const auto& [sub, v] : value.items()) flat["tolerances." + sub] = &v;
        } else {
            flat[key] = &value;
        }
    }
    visit_fields(*this, [&](std::string_view key, auto& field) {
        const auto it = flat.find(std::string(key));
        if (it == flat.end()) return;
        assign(it->first, *it->second, field);
        flat.erase(it);
    });
    if (!flat.empty()) {
        const std::string& key = flat.begin()->first;
        throw ConfigError(key, fmt::format("unknown config field '{}'", key));
    }
}

std::string to_string(Command command) {
    switch (command) {
    case Command::lambert_table: return "lambert-table";
    case Command::assoc_func: return "assoc-func";
    case Command::build_mollifier: return "build-mollifier";
    case Command::build_wavelet: return "build-wavelet";
    case Command::verify_onw: return "verify-onw";
    case Command::decay_fit: return "decay-fit";
    case Command::mixed_audit: return "mixed-audit";
    case Command::all: return "all";
    }
    return "all";
}

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::lambert_table, Command::assoc_func, Command::build_mollifier, Command::build_wavelet,
                      Command::verify_onw, Command::decay_fit, Command::mixed_audit, Command::all}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    RunConfig probe;
    visit_fields(probe, [&](std::string_view key, const auto&) { keys.emplace_back(key); });
    return keys;
}

void set_config_field(RunConfig& cfg, const std::string& key, const std::string& text) {
    bool found = false;
    visit_fields(cfg, [&](std::string_view name, auto& field) {
        if (name != key) return;
        found = true;
        assign(key, parse_text<std::decay_t<decltype(field)>>(key, text), field);
    });
    if (!found) throw ConfigError(key, fmt::format("unknown config field '{}'", key));
}

RunResult run_pipeline(const RunConfig& cfg, Command command, const io::Json& invocation) {
    cfg.validate();
    return Runner(cfg, invocation).run(command);
}

} // namespace gevwave
