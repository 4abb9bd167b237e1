#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trigrid/engine.hpp"
#include "trigrid/strategies.hpp"

namespace trigrid {

/// Exhaustive coverage check: runs the strategy through the engine with a
/// counting kernel and demands every domain cell is touched exactly once
/// (and, for the no-diagonal domain, that diagonal cells stay untouched).
struct CoverageResult {
    bool ok = false;
    std::string detail;  // empty when ok
    DispatchStats stats;
};
CoverageResult check_cell_coverage(const AnyStrategy& strategy,
                                   bool with_diag_domain,
                                   unsigned workers = 0);

/// Block-level bijection: ltm_map over every lambda must walk
/// enumerate_lower(n) in order.
bool check_ltm_block_bijection(std::uint64_t n_blocks, const SqrtEngine& engine,
                               bool with_diag, std::string* detail = nullptr);

/// Transposing utm_map's pairs and sorting must yield exactly
/// enumerate_lower(N, no-diag).
bool check_utm_duality(std::uint64_t n_elems, const SqrtEngine& engine,
                       std::string* detail = nullptr);

/// Row-exactness sweep of the epsilon-repaired float path (fallback off)
/// against the integer-sqrt oracle, over every lambda of an n-block grid.
struct ExactnessResult {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t first_mismatch = UINT64_MAX;
};
ExactnessResult ltm_exactness_sweep(std::uint64_t n_blocks, const SqrtEngine& engine,
                                    bool with_diag);

/// The full bijection suite behind `trigrid verify`: BB/RB at thread
/// granularity, LTM block-level per engine plus engine-level runs, UTM on
/// the no-diagonal domain, REC over every valid (m, k) with N <= 2*n_max.
struct VerifySummary {
    bool ok = true;
    std::vector<std::string> lines;
};
VerifySummary verify_strategies(const std::string& which, std::uint64_t n_max,
                                std::uint32_t rho, unsigned workers = 0);

}  // namespace trigrid
