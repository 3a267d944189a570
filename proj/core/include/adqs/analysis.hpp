#pragma once

// Run-time search for a target success probability, N sweeps and log-log
// slope fits of the resulting (N, T) pairs.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adqs/dynamics.hpp"
#include "adqs/model.hpp"

namespace adqs {

struct RuntimeSearchOptions {
    double p_tol = 1e-3;
    double start_run_time = 1.0;
    double ceiling_run_time = 1073741824.0;  // 2^30
    /// Equally spaced probes inside the doubling bracket before bisecting.
    /// Zero trusts the bracket; positive values catch crossings that p(T)
    /// makes and undoes between two doublings (oscillating closed systems).
    int bracket_scan = 0;
    SimOptions sim;

    void validate() const;
};

struct RuntimeResult {
    std::int64_t n_items = 0;
    double run_time = 0.0;
    double p_achieved = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};  // low < run_time <= high
    int evaluations = 0;
};

/// Smallest bracketed T with |p(T) - p_target| <= p_tol, where p(T) is the
/// final success probability from the ground-state start. Doubles T from
/// start_run_time until p(T) >= p_target, then bisects the first crossing.
/// Throws BracketFailure past ceiling_run_time.
RuntimeResult find_runtime(const ModelParams& params, double p_target, const RuntimeSearchOptions& opts = {});

struct SweepRow {
    std::int64_t n_items = 0;
    double run_time = 0.0;  // NaN when the row failed
    double p_target = 0.0;
    double omega = 0.0;
    double sigma = 0.0;
    Schedule schedule = Schedule::Global;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

struct SweepTable {
    std::vector<SweepRow> rows;

    bool all_ok() const;
};

/// One find_runtime per list length, in n_list order. Rows run on up to
/// `jobs` threads; the result does not depend on `jobs`. A failing row is
/// recorded with its message instead of aborting the sweep.
SweepTable sweep(const std::vector<std::int64_t>& n_list, double p_target, const ModelParams& base,
                 const RuntimeSearchOptions& opts = {}, int jobs = 1);

/// Powers of two 2^lo .. 2^hi inclusive.
std::vector<std::int64_t> powers_of_two(int lo_exponent, int hi_exponent);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::pair<std::int64_t, std::int64_t> window{0, 0};  // smallest and largest N used
    double residual = 0.0;                                // RMS of the log2 T residuals
    std::size_t points = 0;
};

/// Least-squares line log2 T = slope log2 N + intercept over the successful
/// rows with the largest N, ceil(window_fraction * rows) of them. Throws
/// InsufficientPoints when fewer than 3 rows fall in the window.
SlopeFit fit_slope(const SweepTable& table, double window_fraction = 0.5);

}  // namespace adqs
