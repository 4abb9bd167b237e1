#include "trigrid/checks.hpp"

#include <algorithm>
#include <stdexcept>

namespace trigrid {

namespace {

std::string cell_str(std::uint64_t i, std::uint64_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

CoverageResult check_cell_coverage(const AnyStrategy& strategy,
                                   bool with_diag_domain, unsigned workers) {
    const std::uint64_t n =
        std::visit([](const auto& s) { return s.size().elems(); }, strategy);
    std::vector<std::uint32_t> counts(tri_count(n, true), 0);
    CoverageResult result;
    result.stats = launch_count(strategy, counts, {workers, nullptr});

    std::size_t idx = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j <= i; ++j, ++idx) {
            const std::uint32_t expected = (with_diag_domain || j < i) ? 1 : 0;
            if (counts[idx] != expected) {
                result.detail = "cell " + cell_str(i, j) + " touched " +
                                std::to_string(counts[idx]) + " times, expected " +
                                std::to_string(expected);
                return result;
            }
        }
    }
    result.ok = true;
    return result;
}

bool check_ltm_block_bijection(std::uint64_t n_blocks, const SqrtEngine& engine,
                               bool with_diag, std::string* detail) {
    std::uint64_t lambda = 0;
    for (const TriCoord expected : enumerate_lower(n_blocks, with_diag)) {
        const TriCoord got = ltm_map(lambda, engine, with_diag);
        if (got != expected) {
            if (detail)
                *detail = "lambda " + std::to_string(lambda) + ": got " +
                          cell_str(got.i, got.j) + ", expected " +
                          cell_str(expected.i, expected.j);
            return false;
        }
        ++lambda;
    }
    return true;
}

bool check_utm_duality(std::uint64_t n_elems, const SqrtEngine& engine,
                       std::string* detail) {
    const std::uint64_t pairs = tri_count(n_elems, false);
    std::vector<TriCoord> transposed;
    transposed.reserve(pairs);
    for (std::uint64_t k = 0; k < pairs; ++k) {
        const UtmPair p = utm_map(k, n_elems, engine);
        transposed.push_back({p.b, p.a});
    }
    std::sort(transposed.begin(), transposed.end());
    std::uint64_t idx = 0;
    for (const TriCoord expected : enumerate_lower(n_elems, false)) {
        if (transposed[idx] != expected) {
            if (detail)
                *detail = "sorted pair " + std::to_string(idx) + ": got " +
                          cell_str(transposed[idx].i, transposed[idx].j) +
                          ", expected " + cell_str(expected.i, expected.j);
            return false;
        }
        ++idx;
    }
    return true;
}

ExactnessResult ltm_exactness_sweep(std::uint64_t n_blocks, const SqrtEngine& engine,
                                    bool with_diag) {
    ExactnessResult result;
    result.checked = tri_count(n_blocks, with_diag);
    for (std::uint64_t lambda = 0; lambda < result.checked; ++lambda) {
        const std::uint64_t root = isqrt(8 * lambda + 1);
        const std::uint64_t oracle_row = with_diag ? (root - 1) / 2 : (root + 1) / 2;
        const TriCoord got = ltm_map(lambda, engine, with_diag, RepairPolicy::Off);
        if (got.i != oracle_row) {
            if (result.mismatches == 0) result.first_mismatch = lambda;
            ++result.mismatches;
        }
    }
    return result;
}

namespace {

struct VerifyContext {
    std::uint64_t n_max;
    std::uint32_t rho;
    unsigned workers;
    VerifySummary* out;
};

void note(VerifyContext& ctx, bool ok, const std::string& line,
          const std::string& detail) {
    ctx.out->lines.push_back((ok ? "ok   " : "FAIL ") + line +
                             (ok || detail.empty() ? "" : " -- " + detail));
    if (!ok) ctx.out->ok = false;
}

/// Engine-level coverage for one strategy flavor across N sweeps at the
/// configured rho and at rho = 1.
void verify_coverage_sweep(VerifyContext& ctx, const StrategyId& id,
                           bool with_diag_domain, std::uint64_t n_min) {
    for (const std::uint32_t rho : {ctx.rho, std::uint32_t{1}}) {
        std::uint64_t failures = 0;
        std::string first_detail;
        for (std::uint64_t n = n_min; n <= ctx.n_max; ++n) {
            const AnyStrategy s = make_strategy(id, ProblemSize{n, rho});
            const CoverageResult r = check_cell_coverage(s, with_diag_domain, ctx.workers);
            if (!r.ok && failures++ == 0)
                first_detail = "N=" + std::to_string(n) + ": " + r.detail;
        }
        note(ctx, failures == 0,
             strategy_name(id) + " cell coverage, N in [" + std::to_string(n_min) +
                 ", " + std::to_string(ctx.n_max) + "], rho=" + std::to_string(rho),
             first_detail);
    }
}

void verify_ltm_blocks(VerifyContext& ctx, SqrtVariant variant) {
    const SqrtEngine engine = engine_for(variant);
    for (const bool with_diag : {true, false}) {
        std::uint64_t failures = 0;
        std::string first_detail;
        for (std::uint64_t n = 1; n <= ctx.n_max; ++n) {
            std::string detail;
            if (!check_ltm_block_bijection(n, engine, with_diag, &detail) &&
                failures++ == 0)
                first_detail = "n=" + std::to_string(n) + ": " + detail;
        }
        note(ctx, failures == 0,
             std::string("ltm block bijection, ") + to_string(variant) +
                 (with_diag ? ", with diagonal" : ", no diagonal"),
             first_detail);
    }
}

void verify_rec(VerifyContext& ctx) {
    const std::uint64_t n_limit = 2 * ctx.n_max;
    for (const std::uint32_t rho : {ctx.rho, std::uint32_t{1}}) {
        std::uint64_t configs = 0, failures = 0;
        std::string first_detail;
        for (std::uint32_t k = 1; (std::uint64_t{1} << k) <= n_limit; ++k) {
            for (std::uint64_t m = rho; (m << k) <= n_limit; m += rho) {
                const std::uint64_t n = m << k;
                ++configs;
                const RecStrategy s{ProblemSize{n, rho}, rec_schedule(n, m, k, rho)};
                const CoverageResult r =
                    check_cell_coverage(AnyStrategy{s}, true, ctx.workers);
                if (!r.ok && failures++ == 0)
                    first_detail = "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                   ": " + r.detail;
            }
        }
        note(ctx, failures == 0,
             "rec cell coverage, " + std::to_string(configs) + " (m,k) configs, N <= " +
                 std::to_string(n_limit) + ", rho=" + std::to_string(rho),
             first_detail);
    }
}

}  // namespace

VerifySummary verify_strategies(const std::string& which, std::uint64_t n_max,
                                std::uint32_t rho, unsigned workers) {
    VerifySummary summary;
    VerifyContext ctx{n_max, rho, workers, &summary};
    const bool all = which == "all";

    if (all || which == "bb")
        verify_coverage_sweep(ctx, *parse_strategy("bb"), true, 1);
    if (all || which == "ltm" || which == "ltm-x" || which == "ltm-n" ||
        which == "ltm-r") {
        const bool every_engine = all || which == "ltm";
        if (every_engine || which == "ltm-x") verify_ltm_blocks(ctx, SqrtVariant::NativeSingle);
        if (every_engine || which == "ltm-n") verify_ltm_blocks(ctx, SqrtVariant::NewtonRaphson);
        if (every_engine || which == "ltm-r") verify_ltm_blocks(ctx, SqrtVariant::Reciprocal);
        if (every_engine) verify_ltm_blocks(ctx, SqrtVariant::ExactInteger);
        const char* flavor = every_engine ? "ltm-r" : which.c_str();
        verify_coverage_sweep(ctx, *parse_strategy(flavor), true, 1);
    }
    if (all || which == "utm")
        verify_coverage_sweep(ctx, *parse_strategy("utm"), false, 1);
    if (all || which == "rb")
        verify_coverage_sweep(ctx, *parse_strategy("rb"), true, 2);
    if (all || which == "rec") verify_rec(ctx);

    if (summary.lines.empty()) {
        summary.ok = false;
        summary.lines.push_back("FAIL unknown strategy selector '" + which + "'");
    }
    return summary;
}

}  // namespace trigrid
