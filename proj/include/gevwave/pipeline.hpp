#pragma once

#include "gevwave/io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gevwave {

struct Tolerances {
    double lambert_residual = 1e-12;
    double mass = 1e-8;
    double evenness = 1e-10;
    double derivative_slack = 1e-3;
    double theta_symmetry = 1e-9;
    double norm = 1e-8;
    double imag = 1e-12;
    double cross = 1e-8;
    double gram = 1e-7;
    double dyadic = 1e-9;
    double completeness = 1e-3;
    double completeness_change = 1e-5;
    double r2_min = 0.9;
    double fit_band = 10.0;
    double noise_floor = 1e-15;
};

struct RunConfig {
    double sigma = 2.0;
    double tau = 1.0;
    double a = 0.52359877559829882; // pi / 6
    double decay_a = 0.01;

    unsigned space_pow = 17;
    int block_depth = 8;
    std::optional<double> cutoff; // 4 dx when unset
    std::string base = "box";
    int audit_n_max = 8;

    unsigned freq_pow = 16;
    unsigned period_pow = 17;
    unsigned lattice_pow = 21;

    double lambert_xmin = 1e-6;
    double lambert_xmax = 1e8;
    int lambert_points = 1000;
    bool lambert_log = true;

    double assoc_kmin = 1e3;
    double assoc_kmax = 1e12;
    int assoc_points = 40;
    int seq_p_max = 64;

    int gram_m_min = -2;
    int gram_m_max = 2;
    int gram_n_min = -8;
    int gram_n_max = 8;
    int dyadic_window = 6;
    int dyadic_points = 1001;
    int completeness_window = 4;
    int completeness_n_cap = 4096;
    double test_centre = 4.0;
    double test_width = 0.5;
    double test_cut = 7.0;

    double decay_xmin = 100.0;
    double decay_xmax = 3e4;
    int decay_points = 60;
    std::vector<int> derivative_orders{1, 2, 4, 8};
    int intercept_order_max = 8;
    double s = 1.0;

    int mixed_k_max = 8;
    int mixed_q_max = 8;

    double psi_xmax = 256.0;
    int cross_points = 20;

    Tolerances tol;
    std::filesystem::path out_dir = "gevwave_out";
    std::string phi_file = "phi.csv";

    // Throws ConfigError naming the first invalid field.
    void validate() const;
    [[nodiscard]] double effective_cutoff() const;
    // Every field, with the cutoff resolved.
    [[nodiscard]] io::Json to_json() const;
    // Overlays the keys present in `doc`; unknown keys and type mismatches throw ConfigError.
    void merge(const io::Json& doc);
};

enum class Command {
    lambert_table,
    assoc_func,
    build_mollifier,
    build_wavelet,
    verify_onw,
    decay_fit,
    mixed_audit,
    all,
};

[[nodiscard]] std::string to_string(Command command);
[[nodiscard]] std::optional<Command> parse_command(const std::string& name);

inline constexpr const char* kOutDirEnv = "GEVWAVE_OUT_DIR";

struct Assertion {
    std::string path;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
    std::string relation; // "<=", ">=", ">", "<", "==" or "status"
    std::string note;
};

struct RunResult {
    int exit_code = 0;
    std::vector<Assertion> assertions;
    std::vector<std::string> failed;
    io::Json report;
    io::Json manifest;
};

// Config keys in echo order; tolerances appear as "tolerances.<name>".
[[nodiscard]] std::vector<std::string> config_keys();

// Sets one key from command-line text; throws ConfigError naming the key.
void set_config_field(RunConfig& cfg, const std::string& key, const std::string& text);

// Runs the requested stages, writing artifacts, report.json and manifest.json into
// cfg.out_dir. Library errors map to exit codes; failed assertions give exit code 1.
// `invocation` is recorded verbatim in the manifest.
[[nodiscard]] RunResult run_pipeline(const RunConfig& cfg, Command command,
                                     const io::Json& invocation = nullptr);

} // namespace gevwave
