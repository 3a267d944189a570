#pragma once

// Self-checks of the dynamics run by `adqs validate`: purity monotonicity,
// norm conservation without decoherence, planarity, the planar cone property,
// eigenbasis-population monotonicity and agreement with the full-space oracle.

#include <cstdint>
#include <string>
#include <vector>

namespace adqs {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::vector<std::string> only;  // empty runs every suite
    std::uint64_t seed = 20240601;
    /// Mutation canary: flip the sign of the decoherence term in every
    /// simulation the suites run.
    bool flip_decoherence_sign = false;
};

/// Names of the available suites, in run order.
std::vector<std::string> validation_suites();

/// Runs the selected suites. Throws DomainError for an unknown suite name.
std::vector<SuiteResult> run_validation(const ValidationOptions& opts = {});

}  // namespace adqs
