#pragma once

// Randomized cross-check of every EP suite against the direct oracle over
// generated instances. Fully determined by the seed.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wep/matrix.hpp"

namespace wep {

struct FuzzConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    /// Fixed size n of every instance; 0 draws n from [2, 8] per trial.
    std::size_t dim = 0;
    Tolerance tol;
};

struct FuzzFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string what;
};

struct FuzzSummary {
    std::size_t trials = 0;
    std::size_t ep_instances = 0;
    std::size_t non_ep_instances = 0;
    std::size_t nilpotent_instances = 0;
    std::size_t skipped = 0;
    std::size_t statements_checked = 0;
    std::size_t inconsistencies = 0;
    std::size_t label_mismatches = 0;
    std::size_t errors = 0;

    double worst_wmp = 0.0;
    double worst_double_dagger = 0.0;
    double worst_reverse_order = 0.0;
    double worst_group_inverse = 0.0;
    double worst_block = 0.0;
    /// Largest statement residual among instances whose direct verdict is EP.
    double worst_ep_statement = 0.0;
    /// Smallest direct residual among non-EP instances.
    double min_non_ep_direct = 0.0;

    /// Statement id -> number of disagreements with the direct verdict.
    std::map<std::string, std::size_t> disagreements;
    std::vector<FuzzFailure> failures;

    bool ok() const noexcept { return inconsistencies == 0 && label_mismatches == 0 && errors == 0; }
};

/// Throws ShapeError for trials == 0.
FuzzSummary run_fuzz(const FuzzConfig& cfg);

/// Stable text rendering; identical summaries render to identical bytes.
std::string format_summary(const FuzzConfig& cfg, const FuzzSummary& s);

}  // namespace wep
