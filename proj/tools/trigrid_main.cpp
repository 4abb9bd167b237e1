// trigrid: benchmark and verification harness for triangular-domain
// grid-mapping strategies.
//
// Subcommands:
//   bench      sweep N, time every strategy against the BB baseline, emit CSV
//   verify     exhaustive bijection oracle over small domains
//   exactness  lambda sweep of the float row computation vs the integer oracle
//   edm        compute a packed distance matrix, optionally dump/check it
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trigrid/bench.hpp"
#include "trigrid/checks.hpp"
#include "trigrid/edm.hpp"
#include "trigrid/engine.hpp"

namespace {

unsigned parse_workers(const std::string& s) {
    if (s == "AUTO" || s == "auto") return 0;
    try {
        const unsigned long v = std::stoul(s);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--workers", "expected AUTO or a positive integer");
    }
}

std::vector<trigrid::StrategyId> parse_strategy_list(const std::string& csv) {
    std::vector<trigrid::StrategyId> ids;
    std::string::size_type pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string name =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!name.empty()) {
            const auto id = trigrid::parse_strategy(name);
            if (!id)
                throw CLI::ValidationError("--strategies", "unknown strategy '" + name + "'");
            ids.push_back(*id);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (ids.empty())
        throw CLI::ValidationError("--strategies", "no strategies selected");
    return ids;
}

int run_bench(const std::string& strategies, const std::string& kernel,
              std::uint32_t features, std::uint64_t n_start, std::uint64_t n_end,
              std::uint64_t n_step, std::uint32_t rho, std::uint32_t reps,
              const std::string& workers, std::uint64_t seed,
              std::uint64_t verify_cap, const std::string& out) {
    trigrid::BenchConfig cfg;
    cfg.strategies = parse_strategy_list(strategies);
    if (kernel == "dummy") {
        cfg.kernel = trigrid::KernelSpec::Kind::Dummy;
    } else if (kernel == "edm") {
        cfg.kernel = trigrid::KernelSpec::Kind::Edm;
    } else {
        throw CLI::ValidationError("--kernel", "expected dummy or edm");
    }
    if (n_start == 0 || n_step == 0 || n_end < n_start)
        throw CLI::ValidationError("--n-start/--n-end/--n-step", "bad sweep range");
    for (std::uint64_t n = n_start; n <= n_end; n += n_step) cfg.n_values.push_back(n);
    cfg.rho = rho;
    cfg.features = features;
    cfg.repetitions = reps;
    cfg.workers = parse_workers(workers);
    cfg.seed = seed;
    cfg.verify_cap = verify_cap;

    const trigrid::SuiteResult result = trigrid::run_suite(cfg);
    for (const std::string& skip : result.skipped)
        std::fprintf(stderr, "skipped: %s\n", skip.c_str());
    trigrid::emit_csv(result.records, out);
    std::printf("wrote %zu records to %s (%zu skipped)\n", result.records.size(),
                out.c_str(), result.skipped.size());
    if (!result.all_verified) {
        std::fprintf(stderr, "EDM verification FAILED for at least one row group\n");
        return 1;
    }
    return 0;
}

int run_verify(const std::string& strategy, std::uint64_t n_max, std::uint32_t rho,
               const std::string& workers) {
    const trigrid::VerifySummary summary =
        trigrid::verify_strategies(strategy, n_max, rho, parse_workers(workers));
    for (const std::string& line : summary.lines) std::printf("%s\n", line.c_str());
    std::printf("%s\n", summary.ok ? "verify: all checks passed" : "verify: FAILED");
    return summary.ok ? 0 : 1;
}

int run_exactness(const std::string& engine_name, std::uint64_t n_elems,
                  std::uint32_t rho) {
    const auto id = trigrid::parse_strategy(engine_name);
    if (!id || id->kind != trigrid::StrategyKind::LowerTri)
        throw CLI::ValidationError("--engine", "expected ltm-x, ltm-n or ltm-r");
    const trigrid::SqrtEngine engine = trigrid::engine_for(id->engine);
    const std::uint64_t n_blocks = trigrid::ProblemSize{n_elems, rho}.blocks();

    bool ok = true;
    for (const bool with_diag : {true, false}) {
        const trigrid::ExactnessResult r =
            trigrid::ltm_exactness_sweep(n_blocks, engine, with_diag);
        std::printf("%s, %s diagonal: %llu lambdas checked, %llu mismatches",
                    engine_name.c_str(), with_diag ? "with" : "no",
                    static_cast<unsigned long long>(r.checked),
                    static_cast<unsigned long long>(r.mismatches));
        if (r.mismatches > 0) {
            std::printf(" (first at lambda=%llu)",
                        static_cast<unsigned long long>(r.first_mismatch));
            ok = false;
        }
        std::printf("\n");
    }
    std::printf("exactness: %s\n", ok ? "exact over the full range" : "FAILED");
    return ok ? 0 : 1;
}

int run_edm(std::uint64_t n, std::uint32_t features, std::uint64_t seed,
            const std::string& strategy, std::uint32_t rho,
            const std::string& workers, const std::string& out, bool check) {
    const trigrid::PointSet points = trigrid::gen_points(n, features, seed);
    trigrid::PackedEdm result;
    if (strategy == "reference") {
        result = trigrid::edm_reference(points);
    } else {
        const auto id = trigrid::parse_strategy(strategy);
        if (!id) throw CLI::ValidationError("--strategy", "unknown strategy '" + strategy + "'");
        const trigrid::AnyStrategy s =
            trigrid::make_strategy(*id, trigrid::ProblemSize{n, rho});
        result = trigrid::PackedEdm::zeros(n);
        const trigrid::DispatchStats stats = trigrid::launch_edm(
            s, points, result, {parse_workers(workers), nullptr});
        std::printf("%s: %llu blocks launched, %llu discarded, %.3f ms\n",
                    strategy.c_str(),
                    static_cast<unsigned long long>(stats.blocks_launched),
                    static_cast<unsigned long long>(stats.blocks_discarded),
                    static_cast<double>(stats.wall_time_ns) / 1e6);
    }

    if (!out.empty()) {
        trigrid::save_packed_edm(result, features, out);
        std::printf("wrote %zu packed cells to %s\n", result.values.size(), out.c_str());
    }
    if (check) {
        const trigrid::PackedEdm reference = trigrid::edm_reference(points);
        const bool same = result.values == reference.values;
        std::printf("oracle check: %s\n", same ? "bitwise identical" : "MISMATCH");
        if (!same) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-to-triangular-domain mapping strategies: benchmark and verification"};
    app.require_subcommand(1);

    // bench
    auto* bench = app.add_subcommand("bench", "Sweep N and emit benchmark CSV");
    std::string strategies = "bb,ltm-x,ltm-n,ltm-r,utm,rb,rec";
    std::string kernel = "dummy";
    std::uint32_t features = 1;
    std::uint64_t n_start = 1024, n_end = 0, n_step = 1024;
    std::uint32_t rho = 16, reps = 5;
    std::string workers = "AUTO";
    std::uint64_t seed = 42, verify_cap = 1024;
    std::string out = "results.csv";
    bench->add_option("--strategies", strategies, "Comma-separated strategy list");
    bench->add_option("--kernel", kernel, "dummy or edm");
    bench->add_option("--features", features, "EDM feature count d in [1,4]");
    bench->add_option("--n-start", n_start, "Sweep start (elements)");
    bench->add_option("--n-end", n_end, "Sweep end, inclusive (default 30720 dummy / 8192 edm)");
    bench->add_option("--n-step", n_step, "Sweep step");
    bench->add_option("--rho", rho, "Threads per block per dimension");
    bench->add_option("--reps", reps, "Repetitions per configuration (median reported)");
    bench->add_option("--workers", workers, "Worker threads or AUTO");
    bench->add_option("--seed", seed, "Point generator seed");
    bench->add_option("--verify-cap", verify_cap, "Oracle-check EDM rows with N <= cap");
    bench->add_option("--out", out, "CSV destination");

    // verify
    auto* verify = app.add_subcommand("verify", "Exhaustive bijection oracle");
    std::string verify_strategy = "all";
    std::uint64_t n_max = 256;
    std::uint32_t verify_rho = 16;
    std::string verify_workers = "AUTO";
    verify->add_option("--strategy", verify_strategy,
                       "all, bb, ltm, ltm-x, ltm-n, ltm-r, utm, rb or rec");
    verify->add_option("--n-max", n_max, "Largest N (REC sweeps to 2*n-max)");
    verify->add_option("--rho", verify_rho, "Threads per block per dimension");
    verify->add_option("--workers", verify_workers, "Worker threads or AUTO");

    // exactness
    auto* exact = app.add_subcommand("exactness", "Row-exactness lambda sweep");
    std::string engine_name = "ltm-r";
    std::uint64_t exact_n = 30720;
    std::uint32_t exact_rho = 16;
    exact->add_option("--engine", engine_name, "ltm-x, ltm-n or ltm-r");
    exact->add_option("--n", exact_n, "Problem size N (elements)");
    exact->add_option("--rho", exact_rho, "Threads per block per dimension");

    // edm
    auto* edm = app.add_subcommand("edm", "Compute a packed distance matrix");
    std::uint64_t edm_n = 1024, edm_seed = 42;
    std::uint32_t edm_features = 1, edm_rho = 16;
    std::string edm_strategy = "reference";
    std::string edm_workers = "AUTO";
    std::string edm_out;
    bool edm_check = false;
    edm->add_option("--n", edm_n, "Point count N");
    edm->add_option("--features", edm_features, "Feature count d in [1,4]");
    edm->add_option("--seed", edm_seed, "Point generator seed");
    edm->add_option("--strategy", edm_strategy, "Strategy name, or reference");
    edm->add_option("--rho", edm_rho, "Threads per block per dimension");
    edm->add_option("--workers", edm_workers, "Worker threads or AUTO");
    edm->add_option("--out", edm_out, "Binary PEDM dump destination");
    edm->add_flag("--check", edm_check, "Compare against the sequential oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bench->parsed()) {
            if (n_end == 0) n_end = kernel == "edm" ? 8192 : 30720;
            return run_bench(strategies, kernel, features, n_start, n_end, n_step,
                             rho, reps, workers, seed, verify_cap, out);
        }
        if (verify->parsed())
            return run_verify(verify_strategy, n_max, verify_rho, verify_workers);
        if (exact->parsed()) return run_exactness(engine_name, exact_n, exact_rho);
        if (edm->parsed())
            return run_edm(edm_n, edm_features, edm_seed, edm_strategy, edm_rho,
                           edm_workers, edm_out, edm_check);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
