#pragma once

// Text serialization. Column order and JSON keys are a stable contract for
// downstream readers; reals are written with 17 significant digits.
//
//   trajectory CSV: s,vx,vy,vz,p,y
//   sweep CSV:      log2N,log2T,N,T,p,omega,sigma,schedule  (empty T = failed row)

#include <iosfwd>
#include <string>
#include <string_view>

#include "adqs/analysis.hpp"
#include "adqs/bounds.hpp"
#include "adqs/dynamics.hpp"

namespace adqs {

inline constexpr std::string_view kTrajectoryHeader = "s,vx,vy,vz,p,y";
inline constexpr std::string_view kSweepHeader = "log2N,log2T,N,T,p,omega,sigma,schedule";

/// Shortest-safe decimal form: 17 significant digits.
std::string format_real(double x);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_json(std::ostream& out, const Trajectory& trajectory);

void write_sweep_csv(std::ostream& out, const SweepTable& table);
void write_sweep_json(std::ostream& out, const SweepTable& table);

/// Parses a sweep CSV. Throws std::invalid_argument naming the offending
/// column or line when the input does not follow the schema.
SweepTable read_sweep_csv(std::istream& in);

/// Single-line JSON objects.
std::string to_json(const BoundReport& report);
std::string to_json(const RuntimeSandwich& sandwich, std::int64_t n, double p);
std::string to_json(const RuntimeResult& result);
std::string to_json(const SlopeFit& fit);

}  // namespace adqs
