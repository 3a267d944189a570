#include "adqs_tools/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "adqs/analysis.hpp"
#include "adqs/bounds.hpp"
#include "adqs/dynamics.hpp"
#include "adqs/errors.hpp"
#include "adqs/io.hpp"
#include "adqs/model.hpp"
#include "adqs/validation.hpp"

namespace adqs::cli {

namespace {

struct Config {
    std::int64_t n = 16;
    std::int64_t n_min = 64;
    std::int64_t n_max = 1024;
    double omega = 1.0;
    double coeff_a = 0.0;
    double coeff_b = 0.0;
    double sigma = 1.0;
    std::string schedule = "global";
    double run_time = 0.0;
    double p_target = 0.5;
    double p_tol = 1e-3;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    std::int64_t max_steps = SimOptions{}.max_steps;
    int samples = 1001;
    int jobs = 1;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> only;
    std::string openness = "auto";
    bool observe = false;
    double window = 0.5;
    std::string in;
    std::uint64_t seed = ValidationOptions{}.seed;
    bool flip_decoherence = false;
};

class ArgumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_model_options(CLI::App* app, Config& cfg) {
    app->add_option("--n", cfg.n, "List length N")->capture_default_str();
    app->add_option("--omega", cfg.omega, "Openness: A = cos(omega pi/2), B = sin(omega pi/2)")
        ->capture_default_str();
    app->add_option("--A", cfg.coeff_a, "Override the Hamiltonian weight A");
    app->add_option("--B", cfg.coeff_b, "Override the decoherence weight B");
    app->add_option("--sigma", cfg.sigma, "Decoherence exponent: Gamma = gap^sigma")->capture_default_str();
    app->add_option("--schedule", cfg.schedule, "Schedule")
        ->check(CLI::IsMember({"global", "local"}))
        ->capture_default_str();
}

void add_sim_options(CLI::App* app, Config& cfg) {
    app->add_option("--rel-tol", cfg.rel_tol, "Integrator relative tolerance")->capture_default_str();
    app->add_option("--abs-tol", cfg.abs_tol, "Integrator absolute tolerance")->capture_default_str();
    app->add_option("--max-steps", cfg.max_steps, "Integrator step budget per evolution")->capture_default_str();
}

void add_search_options(CLI::App* app, Config& cfg) {
    app->add_option("--p-target", cfg.p_target, "Target success probability")->capture_default_str();
    app->add_option("--p-tol", cfg.p_tol, "Accepted |p - p_target|")->capture_default_str();
}

void add_output_options(CLI::App* app, Config& cfg, bool with_format) {
    app->add_option("--out", cfg.out, "Output file (default: standard output)");
    if (with_format) {
        app->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }
}

ModelParams model_from(const CLI::App& app, const Config& cfg) {
    ModelParams params = ModelParams::from_omega(cfg.n, cfg.omega, cfg.sigma, parse_schedule(cfg.schedule));
    if (app.count("--A") > 0) params.coeff_a = cfg.coeff_a;
    if (app.count("--B") > 0) params.coeff_b = cfg.coeff_b;
    params.validate();
    return params;
}

SimOptions sim_from(const Config& cfg) {
    SimOptions opts;
    opts.rel_tol = cfg.rel_tol;
    opts.abs_tol = cfg.abs_tol;
    opts.max_steps = cfg.max_steps;
    opts.sample_count = cfg.samples;
    opts.validate();
    return opts;
}

RuntimeSearchOptions search_from(const Config& cfg) {
    RuntimeSearchOptions opts;
    opts.p_tol = cfg.p_tol;
    opts.sim = sim_from(cfg);
    opts.validate();
    return opts;
}

int exponent_of_power_of_two(std::int64_t n, const char* flag) {
    if (n < 2 || (n & (n - 1)) != 0) throw ArgumentError(fmt::format("{} must be a power of two >= 2, got {}", flag, n));
    int e = 0;
    while ((std::int64_t{1} << e) < n) ++e;
    return e;
}

// Writes to --out when given, else to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ArgumentError(fmt::format("cannot open output file '{}'", path));
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

int cmd_simulate(const CLI::App& app, const Config& cfg, std::ostream& out) {
    if (app.count("--T") == 0) throw ArgumentError("simulate needs --T");
    const ModelParams params = model_from(app, cfg);
    const Trajectory traj = evolve(params, cfg.run_time, BlochVector::UnitZ(), sim_from(cfg));
    spdlog::info("simulated N={} T={} final p={}", params.n_items, cfg.run_time, traj.final_sample().p);
    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        write_trajectory_json(*sink, traj);
    } else {
        write_trajectory_csv(*sink, traj);
    }
    return kOk;
}

int write_table(const SweepTable& table, const Config& cfg, std::ostream& out) {
    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        write_sweep_json(*sink, table);
    } else {
        write_sweep_csv(*sink, table);
    }
    return table.all_ok() ? kOk : kPartialSweep;
}

int cmd_sweep(const CLI::App& app, const Config& cfg, std::ostream& out) {
    const int lo = exponent_of_power_of_two(cfg.n_min, "--n-min");
    const int hi = exponent_of_power_of_two(cfg.n_max, "--n-max");
    if (lo > hi) throw ArgumentError("--n-min must not exceed --n-max");
    if (cfg.jobs < 1) throw ArgumentError("--jobs must be >= 1");
    ModelParams base = model_from(app, cfg);
    const SweepTable table = sweep(powers_of_two(lo, hi), cfg.p_target, base, search_from(cfg), cfg.jobs);
    for (const auto& row : table.rows) {
        if (row.ok()) {
            spdlog::info("N={} T={}", row.n_items, row.run_time);
        } else {
            spdlog::error("N={} failed: {}", row.n_items, row.error);
        }
    }
    return write_table(table, cfg, out);
}

int cmd_find_runtime(const CLI::App& app, const Config& cfg, std::ostream& out) {
    const ModelParams params = model_from(app, cfg);
    const RuntimeResult result = find_runtime(params, cfg.p_target, search_from(cfg));
    spdlog::info("N={} T={} p={} after {} evaluations", result.n_items, result.run_time, result.p_achieved,
                 result.evaluations);
    if (cfg.format == "json") {
        Sink sink(cfg.out, out);
        *sink << to_json(result) << '\n';
        return kOk;
    }
    SweepTable table;
    table.rows.push_back(
        {params.n_items, result.run_time, cfg.p_target, params.omega(), params.sigma, params.schedule, {}});
    return write_table(table, cfg, out);
}

Openness openness_for(const Config& cfg, const ModelParams& params) {
    if (cfg.openness == "semi-open") {
        if (!(params.coeff_a > 0.0)) throw ArgumentError("semi-open bounds need A > 0 (omega < 1)");
        return Openness::SemiOpen;
    }
    if (cfg.openness == "wide-open") {
        if (params.coeff_a != 0.0) throw ArgumentError("wide-open bounds need A = 0 (omega = 1)");
        return Openness::WideOpen;
    }
    return params.coeff_a > 0.0 ? Openness::SemiOpen : Openness::WideOpen;
}

int cmd_bounds(const CLI::App& app, const Config& cfg, std::ostream& out) {
    const ModelParams params = model_from(app, cfg);
    const Openness openness = openness_for(cfg, params);
    Sink sink(cfg.out, out);

    if (app.count("--T") > 0) {
        const BoundReport report = check_deviation_bound(params, cfg.run_time, BlochVector::UnitZ(), sim_from(cfg));
        *sink << to_json(report) << '\n';
        return kOk;
    }

    const double k = openness == Openness::SemiOpen ? condition_integral(params.n_items, params.sigma) : 0.0;
    const RuntimeSandwich sandwich = runtime_bounds_for_p(params.n_items, cfg.p_target, params.sigma,
                                                          params.schedule, openness, params.coeff_a,
                                                          params.coeff_b, k);
    *sink << to_json(sandwich, params.n_items, cfg.p_target) << '\n';
    if (cfg.observe) {
        const RuntimeResult result = find_runtime(params, cfg.p_target, search_from(cfg));
        *sink << to_json(BoundReport::upper(BoundName::RuntimeUpper, sandwich.t_high, result.run_time)) << '\n';
        if (sandwich.t_low) {
            *sink << to_json(BoundReport::lower(BoundName::RuntimeLower, *sandwich.t_low, result.run_time)) << '\n';
        }
    }
    return kOk;
}

int cmd_validate(const Config& cfg, std::ostream& out) {
    ValidationOptions opts;
    opts.only = cfg.only;
    opts.seed = cfg.seed;
    opts.flip_decoherence_sign = cfg.flip_decoherence;
    const auto results = run_validation(opts);
    Sink sink(cfg.out, out);
    bool all = true;
    for (const auto& r : results) {
        *sink << fmt::format("{:<14} {:<4}  {}\n", r.name, r.passed ? "PASS" : "FAIL", r.detail);
        all = all && r.passed;
    }
    return all ? kOk : kValidationFailed;
}

int cmd_fit(const Config& cfg, std::ostream& out) {
    std::ifstream file(cfg.in);
    if (!file) throw ArgumentError(fmt::format("cannot read sweep file '{}'", cfg.in));
    const SlopeFit fit = fit_slope(read_sweep_csv(file), cfg.window);
    Sink sink(cfg.out, out);
    *sink << to_json(fit) << '\n';
    return kOk;
}

spdlog::level::level_enum log_level() {
    const char* env = std::getenv("ADIA_LOG");
    if (env == nullptr || *env == '\0') return spdlog::level::warn;
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; accept "warning" as well.
    if (level == spdlog::level::off && std::string_view(env) != "off") {
        return std::string_view(env) == "warning" ? spdlog::level::warn : spdlog::level::info;
    }
    return level;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("adqs", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(log_level());
    const auto previous = spdlog::default_logger();
    spdlog::set_default_logger(logger);
    struct Restore {
        std::shared_ptr<spdlog::logger> logger;
        ~Restore() { spdlog::set_default_logger(logger); }
    } restore{previous};

    Config cfg;
    CLI::App app{"Adiabatic quantum search under eigenbasis decoherence", "adqs"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Integrate one evolution and write its trajectory");
    add_model_options(simulate, cfg);
    add_sim_options(simulate, cfg);
    simulate->add_option("--T", cfg.run_time, "Run time in units of the inverse energy scale");
    simulate->add_option("--samples", cfg.samples, "Number of equally spaced s samples")->capture_default_str();
    add_output_options(simulate, cfg, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "Run time reaching p_target for N = n-min .. n-max");
    add_model_options(sweep_cmd, cfg);
    add_sim_options(sweep_cmd, cfg);
    add_search_options(sweep_cmd, cfg);
    sweep_cmd->add_option("--n-min", cfg.n_min, "Smallest N (power of two)")->capture_default_str();
    sweep_cmd->add_option("--n-max", cfg.n_max, "Largest N (power of two)")->capture_default_str();
    sweep_cmd->add_option("--jobs", cfg.jobs, "Rows computed in parallel")->capture_default_str();
    add_output_options(sweep_cmd, cfg, true);

    auto* find = app.add_subcommand("find-runtime", "First run time reaching p_target");
    add_model_options(find, cfg);
    add_sim_options(find, cfg);
    add_search_options(find, cfg);
    add_output_options(find, cfg, true);

    auto* bounds = app.add_subcommand("bounds", "Evaluate analytical bounds as JSON lines");
    add_model_options(bounds, cfg);
    add_sim_options(bounds, cfg);
    add_search_options(bounds, cfg);
    bounds->add_option("--T", cfg.run_time, "Check the deviation bound at this run time");
    bounds->add_option("--openness", cfg.openness, "Bound family")
        ->check(CLI::IsMember({"auto", "semi-open", "wide-open"}))
        ->capture_default_str();
    bounds->add_flag("--observe", cfg.observe, "Also locate the run time and report it against the sandwich");
    add_output_options(bounds, cfg, false);

    auto* validate = app.add_subcommand("validate", "Run the invariant suites");
    validate->add_option("--only", cfg.only, "Run only these suites")
        ->check(CLI::IsMember(validation_suites()));
    validate->add_option("--seed", cfg.seed, "Seed for the randomized suites")->capture_default_str();
    validate->add_flag("--inject-decoherence-flip", cfg.flip_decoherence)->group("");
    add_output_options(validate, cfg, false);

    auto* fit = app.add_subcommand("fit", "Fit the log-log slope of a sweep CSV");
    fit->add_option("--in", cfg.in, "Sweep CSV")->required();
    fit->add_option("--window", cfg.window, "Fraction of largest-N rows used")->capture_default_str();
    add_output_options(fit, cfg, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(*simulate, cfg, out);
        if (sweep_cmd->parsed()) return cmd_sweep(*sweep_cmd, cfg, out);
        if (find->parsed()) return cmd_find_runtime(*find, cfg, out);
        if (bounds->parsed()) return cmd_bounds(*bounds, cfg, out);
        if (validate->parsed()) return cmd_validate(cfg, out);
        if (fit->parsed()) return cmd_fit(cfg, out);
    } catch (const ArgumentError& e) {
        spdlog::error("{}", e.what());
        return kBadArguments;
    } catch (const DomainError& e) {
        spdlog::error("{}", e.what());
        return kBadArguments;
    } catch (const RangeError& e) {
        spdlog::error("{}", e.what());
        return kBadArguments;
    } catch (const std::invalid_argument& e) {
        spdlog::error("{}", e.what());
        return kBadArguments;
    } catch (const IntegrationFailure& e) {
        spdlog::error("integration failed at {}: {}", e.reached(), e.what());
        return kIntegrationFailed;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kIntegrationFailed;
    }
    return kBadArguments;
}

}  // namespace adqs::cli
