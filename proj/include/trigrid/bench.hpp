#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trigrid/engine.hpp"
#include "trigrid/strategies.hpp"

namespace trigrid {

struct BenchConfig {
    std::vector<StrategyId> strategies;
    std::vector<std::uint64_t> n_values;
    std::uint32_t rho = 16;
    KernelSpec::Kind kernel = KernelSpec::Kind::Dummy;
    std::uint32_t features = 1;      // EDM only
    std::uint32_t repetitions = 5;   // medians over these
    unsigned workers = 0;            // 0 = hardware concurrency
    std::uint64_t seed = 42;
    std::uint64_t verify_cap = 1024; // EDM rows at N <= cap are oracle-checked
};

enum class VerifyState : std::uint8_t { Skipped, Passed, Failed };
const char* to_string(VerifyState v) noexcept;

/// One benchmark measurement row. improvement_measured is the BB baseline
/// median wall time divided by this strategy's median, shared across the
/// row group (same strategy, N, kernel).
struct BenchRecord {
    std::string strategy;
    std::uint64_t n_elems = 0;
    std::uint32_t rho = 0;
    std::uint32_t features = 0;  // 0 for the dummy kernel
    std::string kernel;
    std::uint32_t repetition = 0;
    std::uint64_t wall_time_ns = 0;
    std::uint64_t blocks_launched = 0;
    std::uint64_t blocks_discarded = 0;
    std::uint64_t threads_discarded = 0;
    double improvement_measured = 0.0;
    VerifyState verified = VerifyState::Skipped;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SuiteResult {
    std::vector<BenchRecord> records;
    std::vector<std::string> skipped;  // one note per skipped (strategy, N)
    bool all_verified = true;
};

/// Runs the whole sweep: a fresh BB baseline per (kernel, N) group, then
/// every requested strategy, verification before timing for EDM rows at
/// N <= verify_cap. Strategy/N combinations that cannot be scheduled
/// (Recursive with N != m*2^k) are skipped with a note, not fatal.
SuiteResult run_suite(const BenchConfig& cfg);

/// Modeled improvement factor 2*beta*n^2 / (tau*n^2 + tau*n); tends to
/// 2*beta/tau for large n and stays inside (0, 2) whenever tau > beta.
double improvement_model(double beta, double tau, double n);

/// Header plus one row per record, comma-separated, newline-terminated.
void emit_csv(const std::vector<BenchRecord>& records,
              const std::filesystem::path& destination);

std::vector<BenchRecord> parse_csv(const std::filesystem::path& source);

}  // namespace trigrid
