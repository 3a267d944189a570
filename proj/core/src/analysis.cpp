#include "adqs/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "adqs/errors.hpp"

namespace adqs {

void RuntimeSearchOptions::validate() const {
    if (!(p_tol > 0.0)) throw DomainError(fmt::format("p_tol must be > 0, got {}", p_tol));
    if (!(start_run_time > 0.0)) throw DomainError("start run time must be > 0");
    if (!(ceiling_run_time >= start_run_time)) throw DomainError("run-time ceiling below the start run time");
    if (bracket_scan < 0) throw DomainError("bracket_scan must be >= 0");
    sim.validate();
}

RuntimeResult find_runtime(const ModelParams& params, double p_target, const RuntimeSearchOptions& opts) {
    params.validate();
    opts.validate();
    if (!(p_target > 0.0 && p_target < 1.0)) {
        throw DomainError(fmt::format("target probability must lie in (0, 1), got {}", p_target));
    }

    RuntimeResult out;
    out.n_items = params.n_items;
    auto probability = [&](double run_time) {
        ++out.evaluations;
        return final_success_probability(params, run_time, opts.sim);
    };

    // Doubling: p(lo) < target <= p(hi).
    double lo = 0.0;
    double hi = opts.start_run_time;
    double p_hi = probability(hi);
    while (p_hi < p_target) {
        if (hi >= opts.ceiling_run_time) {
            throw BracketFailure(fmt::format("p(T) stayed below {} up to T = {} (N = {}, last p = {})", p_target,
                                             hi, params.n_items, p_hi),
                                 hi, p_hi);
        }
        lo = hi;
        hi = std::min(2.0 * hi, opts.ceiling_run_time);
        p_hi = probability(hi);
    }

    if (opts.bracket_scan > 0) {
        const double width = (hi - lo) / (opts.bracket_scan + 1);
        for (int k = 1; k <= opts.bracket_scan; ++k) {
            const double probe = lo + k * width;
            const double p = probability(probe);
            if (p >= p_target) {
                hi = probe;
                p_hi = p;
                break;
            }
            lo = probe;
        }
    }

    out.bracket = {lo, hi};
    out.run_time = hi;
    out.p_achieved = p_hi;
    if (std::abs(p_hi - p_target) <= opts.p_tol) return out;

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double p = probability(mid);
        if (std::abs(p - p_target) <= opts.p_tol) {
            out.run_time = mid;
            out.p_achieved = p;
            out.bracket = {lo, hi};
            return out;
        }
        if (p >= p_target) {
            hi = mid;
            p_hi = p;
        } else {
            lo = mid;
        }
    }
    throw NumericalFailure(fmt::format("bisection stalled at T = {} with p = {} (target {} +- {})", hi, p_hi,
                                       p_target, opts.p_tol));
}

bool SweepTable::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
}

SweepTable sweep(const std::vector<std::int64_t>& n_list, double p_target, const ModelParams& base,
                 const RuntimeSearchOptions& opts, int jobs) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 2) throw DomainError(fmt::format("list length must be >= 2, got {}", n_list[i]));
        if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("sweep list lengths must be strictly increasing");
    }
    if (jobs < 1) throw DomainError(fmt::format("jobs must be >= 1, got {}", jobs));

    SweepTable table;
    table.rows.resize(n_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n_list.size(); i = next++) {
            SweepRow& row = table.rows[i];
            ModelParams params = base;
            params.n_items = n_list[i];
            row.n_items = n_list[i];
            row.p_target = p_target;
            row.omega = base.omega();
            row.sigma = base.sigma;
            row.schedule = base.schedule;
            try {
                row.run_time = find_runtime(params, p_target, opts).run_time;
            } catch (const std::exception& e) {
                row.run_time = std::numeric_limits<double>::quiet_NaN();
                row.error = e.what();
                if (row.error.empty()) row.error = "failed";
            }
        }
    };

    const auto threads = static_cast<std::size_t>(jobs) < n_list.size() ? static_cast<std::size_t>(jobs) : n_list.size();
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return table;
}

std::vector<std::int64_t> powers_of_two(int lo_exponent, int hi_exponent) {
    if (lo_exponent < 1 || hi_exponent > 62 || lo_exponent > hi_exponent) {
        throw DomainError(fmt::format("invalid power-of-two range 2^{}..2^{}", lo_exponent, hi_exponent));
    }
    std::vector<std::int64_t> out;
    for (int e = lo_exponent; e <= hi_exponent; ++e) out.push_back(std::int64_t{1} << e);
    return out;
}

SlopeFit fit_slope(const SweepTable& table, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw DomainError(fmt::format("window fraction must lie in (0, 1], got {}", window_fraction));
    }
    std::vector<const SweepRow*> rows;
    for (const auto& row : table.rows) {
        if (row.ok() && std::isfinite(row.run_time) && row.run_time > 0.0) rows.push_back(&row);
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow* a, const SweepRow* b) { return a->n_items < b->n_items; });

    const auto take = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(rows.size()) - 1e-12));
    if (take < 3) {
        throw InsufficientPoints(
            fmt::format("slope fit needs >= 3 rows in the window, got {} of {} usable rows", take, rows.size()));
    }
    const std::vector<const SweepRow*> window(rows.end() - static_cast<std::ptrdiff_t>(take), rows.end());

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto* row : window) {
        mean_x += std::log2(static_cast<double>(row->n_items));
        mean_y += std::log2(row->run_time);
    }
    const double count = static_cast<double>(window.size());
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto* row : window) {
        const double dx = std::log2(static_cast<double>(row->n_items)) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log2(row->run_time) - mean_y);
    }
    if (!(sxx > 0.0)) throw InsufficientPoints("slope fit needs at least two distinct list lengths");

    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.window = {window.front()->n_items, window.back()->n_items};
    fit.points = window.size();
    double ss = 0.0;
    for (const auto* row : window) {
        const double r = std::log2(row->run_time) - (fit.slope * std::log2(static_cast<double>(row->n_items)) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

}  // namespace adqs
