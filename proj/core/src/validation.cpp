#include "adqs/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "adqs/bounds.hpp"
#include "adqs/dynamics.hpp"
#include "adqs/errors.hpp"
#include "adqs/oracle.hpp"

namespace adqs {

namespace {

using Rng = std::mt19937_64;

struct Context {
    Rng rng;
    bool flip = false;
};

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t random_items(Rng& rng, int max_exponent) {
    return std::int64_t{1} << std::uniform_int_distribution<int>(1, max_exponent)(rng);
}

BlochVector random_ball(Rng& rng) {
    std::normal_distribution<double> normal;
    BlochVector v(normal(rng), normal(rng), normal(rng));
    v.normalize();
    return v * std::cbrt(uniform(rng, 0.0, 1.0));
}

Trajectory simulate(const Context& ctx, const ModelParams& params, double run_time, const BlochVector& v0,
                    const SimOptions& opts = {}) {
    BlochField field(params, run_time, opts.local_form);
    if (ctx.flip) field.flip_decoherence_sign();
    return evolve_field(field, v0, opts);
}

BlochVector ground_at(const Trajectory& traj, double s) {
    const std::int64_t n = traj.params.n_items;
    return ground_bloch(traj.params.schedule == Schedule::Local ? local_schedule(s, n) : s, n);
}

SuiteResult verdict(std::string name, int checked, int failures, const std::string& worst) {
    SuiteResult r{std::move(name), failures == 0, {}};
    r.detail = failures == 0 ? fmt::format("{} cases", checked)
                             : fmt::format("{} of {} cases failed; {}", failures, checked, worst);
    return r;
}

SuiteResult purity_suite(Context& ctx) {
    int failures = 0;
    std::string worst;
    constexpr int kDraws = 24;
    for (int d = 0; d < kDraws; ++d) {
        const auto n = random_items(ctx.rng, 10);
        const auto schedule = d % 2 == 0 ? Schedule::Global : Schedule::Local;
        const auto params = ModelParams::from_omega(n, uniform(ctx.rng, 0.2, 1.0), uniform(ctx.rng, 0.0, 2.0), schedule);
        const double run_time = uniform(ctx.rng, 0.0, 50.0);
        const auto traj = simulate(ctx, params, run_time, random_ball(ctx.rng));
        for (std::size_t k = 1; k < traj.samples.size(); ++k) {
            const double prev = traj.samples[k - 1].v.norm();
            const double cur = traj.samples[k].v.norm();
            if (cur > prev + 1e-9 || cur > 1.0 + 1e-9) {
                ++failures;
                worst = fmt::format("|v| rose from {} to {} at s = {} (N = {}, T = {})", prev, cur,
                                    traj.samples[k].s, n, run_time);
                break;
            }
        }
    }
    return verdict("purity", kDraws, failures, worst);
}

SuiteResult closed_norm_suite(Context& ctx) {
    int failures = 0;
    std::string worst;
    constexpr int kDraws = 12;
    for (int d = 0; d < kDraws; ++d) {
        const auto n = random_items(ctx.rng, 10);
        const auto schedule = d % 2 == 0 ? Schedule::Global : Schedule::Local;
        const auto params = ModelParams::from_omega(n, 0.0, 1.0, schedule);
        const double run_time = uniform(ctx.rng, 0.0, 200.0);
        const BlochVector v0 = random_ball(ctx.rng);
        const auto traj = simulate(ctx, params, run_time, v0);
        for (const auto& sample : traj.samples) {
            if (std::abs(sample.v.norm() - v0.norm()) > 1e-7) {
                ++failures;
                worst = fmt::format("|v| drifted to {} from {} (N = {}, T = {})", sample.v.norm(), v0.norm(), n,
                                    run_time);
                break;
            }
        }
    }
    return verdict("closed-norm", kDraws, failures, worst);
}

SuiteResult planarity_suite(Context& ctx) {
    int failures = 0;
    std::string worst;
    constexpr int kDraws = 12;
    for (int d = 0; d < kDraws; ++d) {
        const auto n = random_items(ctx.rng, 12);
        const auto schedule = d % 2 == 0 ? Schedule::Global : Schedule::Local;
        const auto params = ModelParams::from_omega(n, 1.0, uniform(ctx.rng, 0.0, 2.0), schedule);
        const double run_time = std::exp(uniform(ctx.rng, 0.0, std::log(1000.0)));
        const auto traj = simulate(ctx, params, run_time, BlochVector::UnitZ());
        for (const auto& sample : traj.samples) {
            if (std::abs(sample.v.y()) > 1e-12) {
                ++failures;
                worst = fmt::format("v_y = {} at s = {} (N = {}, T = {})", sample.v.y(), sample.s, n, run_time);
                break;
            }
        }
    }
    return verdict("planarity", kDraws, failures, worst);
}

SuiteResult cone_suite(Context& ctx) {
    int failures = 0;
    int premises = 0;
    std::string worst;
    constexpr int kDraws = 10000;
    for (int d = 0; d < kDraws; ++d) {
        const double base = uniform(ctx.rng, 0.0, 2.0 * std::numbers::pi);
        double t1 = uniform(ctx.rng, 0.0, std::numbers::pi);
        double t2 = uniform(ctx.rng, 0.0, std::numbers::pi);
        if (t1 > t2) std::swap(t1, t2);
        const double turn = ctx.rng() % 2 == 0 ? 1.0 : -1.0;
        const Eigen::Vector2d q0(std::cos(base), std::sin(base));
        const Eigen::Vector2d q1(std::cos(base + turn * t1), std::sin(base + turn * t1));
        const Eigen::Vector2d q2(std::cos(base + turn * t2), std::sin(base + turn * t2));
        const double radius = std::sqrt(uniform(ctx.rng, 0.0, 1.0));
        const double angle = uniform(ctx.rng, 0.0, 2.0 * std::numbers::pi);
        const Eigen::Vector2d v(radius * std::cos(angle), radius * std::sin(angle));
        if (v.dot(q1) < q0.dot(q1)) continue;
        ++premises;
        if (v.dot(q2) < q0.dot(q2) - 1e-12) {
            ++failures;
            worst = fmt::format("v.q'' = {} < q0.q'' = {}", v.dot(q2), q0.dot(q2));
        }
    }
    SuiteResult r = verdict("cone", kDraws, failures, worst);
    if (r.passed) r.detail = fmt::format("{} draws, {} with the premise satisfied", kDraws, premises);
    return r;
}

SuiteResult monotone_population_suite(Context& ctx) {
    int failures = 0;
    int checked = 0;
    std::string worst;
    for (const double sigma : {0.5, 1.0, 2.0}) {
        for (const double run_time : {0.0, 1.0, 10.0, 100.0}) {
            for (const std::int64_t n : {2, 16, 256}) {
                for (const auto schedule : {Schedule::Global, Schedule::Local}) {
                    if (schedule == Schedule::Local && sigma < 1.0) continue;
                    ++checked;
                    const auto params = ModelParams::from_omega(n, 1.0, sigma, schedule);
                    const auto traj = simulate(ctx, params, run_time, BlochVector::UnitZ());
                    for (const auto& sample : traj.samples) {
                        const double floor = ground_at(traj, sample.s).z();
                        if (sample.y < floor - 1e-9) {
                            ++failures;
                            worst = fmt::format("Y = {} < q.q0 = {} at s = {} (N = {}, T = {}, sigma = {})", sample.y,
                                                floor, sample.s, n, run_time, sigma);
                            break;
                        }
                    }
                }
            }
        }
    }
    return verdict("ground-overlap", checked, failures, worst);
}

SuiteResult oracle_suite(Context& ctx) {
    int failures = 0;
    int checked = 0;
    std::string worst;
    SimOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.sample_count = 65;
    for (const std::int64_t n : {2, 4, 8}) {
        for (const double omega : {0.0, 0.5, 1.0}) {
            for (const double run_time : {1.0, 10.0}) {
                for (const auto schedule : {Schedule::Global, Schedule::Local}) {
                    ++checked;
                    const auto params = ModelParams::from_omega(n, omega, 1.0, schedule);
                    const auto full = evolve_full(params, run_time, opts);
                    const auto reduced = simulate(ctx, params, run_time, BlochVector::UnitZ(), opts);
                    const double diff = std::abs(full.success_probability() - reduced.final_sample().p);
                    double leakage = 0.0;
                    double trace = 0.0;
                    double herm = 0.0;
                    double min_eig = 0.0;
                    for (const auto& s : full.samples) {
                        leakage = std::max(leakage, std::abs(s.leakage));
                        trace = std::max(trace, s.trace_error);
                        herm = std::max(herm, s.hermiticity_error);
                        min_eig = std::min(min_eig, s.min_eigenvalue);
                    }
                    if (diff > 1e-6 || leakage > 1e-10 || trace > 1e-9 || herm > 1e-9 || min_eig < -1e-9) {
                        ++failures;
                        worst = fmt::format("N = {}, omega = {}, T = {}: |dp| = {}, leakage = {}, trace = {}, "
                                            "hermiticity = {}, min eigenvalue = {}",
                                            n, omega, run_time, diff, leakage, trace, herm, min_eig);
                    }
                }
            }
        }
    }
    return verdict("oracle", checked, failures, worst);
}

SuiteResult bounds_suite(Context& ctx) {
    int failures = 0;
    std::string worst;
    constexpr int kDraws = 24;
    SimOptions opts;
    opts.sample_count = 64;
    for (int d = 0; d < kDraws; ++d) {
        const auto n = random_items(ctx.rng, 12);
        const double omega = d % 3 == 0 ? 1.0 : uniform(ctx.rng, 0.05, 1.0);
        const auto schedule = d % 2 == 0 ? Schedule::Global : Schedule::Local;
        const double sigma = schedule == Schedule::Local && omega == 1.0 ? uniform(ctx.rng, 1.0, 2.0)
                                                                          : uniform(ctx.rng, 0.0, 2.0);
        const auto params = ModelParams::from_omega(n, omega, sigma, schedule);
        const double run_time = std::exp(uniform(ctx.rng, 0.0, std::log(2000.0)));
        const BlochVector v0 = random_ball(ctx.rng);
        const auto [name, value] = applicable_deviation_bound(params, run_time, coherence_magnitude(v0));
        const auto report = BoundReport::upper(name, value, observed_deviation(simulate(ctx, params, run_time, v0, opts)));
        if (!report.holds) {
            ++failures;
            worst = fmt::format("{} = {} < observed {} (N = {}, omega = {}, sigma = {}, T = {})", to_string(name),
                                value, report.observed, n, omega, sigma, run_time);
        }
    }
    return verdict("bounds", kDraws, failures, worst);
}

struct Suite {
    const char* name;
    SuiteResult (*run)(Context&);
};

constexpr Suite kSuites[] = {
    {"purity", purity_suite},
    {"closed-norm", closed_norm_suite},
    {"planarity", planarity_suite},
    {"cone", cone_suite},
    {"ground-overlap", monotone_population_suite},
    {"oracle", oracle_suite},
    {"bounds", bounds_suite},
};

}  // namespace

std::vector<std::string> validation_suites() {
    std::vector<std::string> names;
    for (const auto& suite : kSuites) names.emplace_back(suite.name);
    return names;
}

std::vector<SuiteResult> run_validation(const ValidationOptions& opts) {
    const auto known = validation_suites();
    for (const auto& name : opts.only) {
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw DomainError(fmt::format("unknown validation suite '{}'", name));
        }
    }
    std::vector<SuiteResult> results;
    std::uint64_t index = 0;
    for (const auto& suite : kSuites) {
        ++index;
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), suite.name) == opts.only.end()) continue;
        // Each suite draws from its own stream so filtering does not change the draws.
        Context ctx{Rng(opts.seed + 0x9E3779B97F4A7C15ULL * index), opts.flip_decoherence_sign};
        try {
            results.push_back(suite.run(ctx));
        } catch (const std::exception& e) {
            results.push_back({suite.name, false, fmt::format("error: {}", e.what())});
        }
    }
    return results;
}

}  // namespace adqs
