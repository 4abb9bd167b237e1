#include "trigrid/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace trigrid {

namespace {

constexpr const char* kCsvHeader =
    "strategy,N,rho,d,kernel,repetition,wall_time_ns,blocks_launched,"
    "blocks_discarded,threads_discarded,I_measured,verified";

double median(std::vector<std::uint64_t> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return static_cast<double>(v[mid]);
    return (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid])) / 2.0;
}

struct GroupMeasurement {
    std::vector<BenchRecord> rows;
    double median_ns = 0.0;
};

}  // namespace

const char* to_string(VerifyState v) noexcept {
    switch (v) {
        case VerifyState::Skipped: return "skipped";
        case VerifyState::Passed: return "passed";
        case VerifyState::Failed: return "failed";
    }
    return "?";
}

SuiteResult run_suite(const BenchConfig& cfg) {
    if (cfg.repetitions == 0)
        throw std::invalid_argument("run_suite: repetitions must be >= 1");
    const bool edm = cfg.kernel == KernelSpec::Kind::Edm;
    if (edm && (cfg.features < 1 || cfg.features > 4))
        throw std::invalid_argument("run_suite: EDM features must be in [1, 4]");

    const LaunchOptions opt{cfg.workers, nullptr};
    const char* kernel_name = edm ? "edm" : "dummy";
    const std::uint32_t record_features = edm ? cfg.features : 0;

    SuiteResult result;
    DummySink sink;

    for (const std::uint64_t n : cfg.n_values) {
        const ProblemSize size{n, cfg.rho};

        PointSet points;
        PackedEdm buffer;
        PackedEdm reference;
        const bool verify_here = edm && n <= cfg.verify_cap;
        if (edm) {
            points = gen_points(n, cfg.features, cfg.seed);
            buffer = PackedEdm::zeros(n);
            if (verify_here) reference = edm_reference(points);
        }

        auto launch_once = [&](const AnyStrategy& strategy) {
            return edm ? launch_edm(strategy, points, buffer, opt)
                       : launch_dummy(strategy, sink, opt);
        };

        // Baseline re-measured in-process for every N so the ratio never
        // mixes runs. Index 0 is the baseline; it produces no records.
        struct Target {
            AnyStrategy strategy;
            std::string name;
            VerifyState verified = VerifyState::Skipped;
            GroupMeasurement group;
            std::vector<std::uint64_t> times;
        };
        std::vector<Target> targets;
        targets.push_back({make_strategy(*parse_strategy("bb"), size), "bb-baseline",
                           VerifyState::Skipped, {}, {}});
        for (const StrategyId& id : cfg.strategies) {
            const std::string name = strategy_name(id);
            try {
                targets.push_back({make_strategy(id, size), name, VerifyState::Skipped,
                                   {}, {}});
            } catch (const std::invalid_argument& e) {
                result.skipped.push_back(name + " N=" + std::to_string(n) + ": " + e.what());
            }
        }

        // Oracle verification before any timing.
        if (verify_here) {
            for (std::size_t t = 1; t < targets.size(); ++t) {
                std::fill(buffer.values.begin(), buffer.values.end(), 0.0f);
                launch_edm(targets[t].strategy, points, buffer, opt);
                const bool ok = buffer.values == reference.values;
                targets[t].verified = ok ? VerifyState::Passed : VerifyState::Failed;
                if (!ok) result.all_verified = false;
            }
        }

        // One untimed warm-up per target, then interleave the repetitions
        // round-robin so slow machine-load drift cancels out of the
        // baseline/strategy ratios.
        for (Target& t : targets) launch_once(t.strategy);
        for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
            for (Target& t : targets) {
                const DispatchStats stats = launch_once(t.strategy);
                t.times.push_back(stats.wall_time_ns);
                t.group.rows.push_back({t.name, n, cfg.rho, record_features,
                                        kernel_name, rep, stats.wall_time_ns,
                                        stats.blocks_launched, stats.blocks_discarded,
                                        stats.threads_discarded, 0.0, t.verified});
            }
        }

        const double baseline_median = median(targets[0].times);
        for (std::size_t t = 1; t < targets.size(); ++t) {
            const double strategy_median = median(targets[t].times);
            const double ratio =
                strategy_median > 0.0 ? baseline_median / strategy_median : 0.0;
            for (BenchRecord& row : targets[t].group.rows) {
                row.improvement_measured = ratio;
                result.records.push_back(std::move(row));
            }
        }
    }
    return result;
}

double improvement_model(double beta, double tau, double n) {
    if (!(beta > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("improvement_model: beta and tau must be positive");
    if (!(n >= 1.0))
        throw std::invalid_argument("improvement_model: n must be >= 1");
    return 2.0 * beta * n * n / (tau * n * n + tau * n);
}

void emit_csv(const std::vector<BenchRecord>& records,
              const std::filesystem::path& destination) {
    std::ofstream os(destination);
    if (!os)
        throw std::runtime_error("emit_csv: cannot open " + destination.string());
    os << kCsvHeader << '\n';
    char line[512];
    for (const BenchRecord& r : records) {
        std::snprintf(line, sizeof line,
                      "%s,%" PRIu64 ",%u,%u,%s,%u,%" PRIu64 ",%" PRIu64 ",%" PRIu64
                      ",%" PRIu64 ",%.17g,%s",
                      r.strategy.c_str(), r.n_elems, r.rho, r.features,
                      r.kernel.c_str(), r.repetition, r.wall_time_ns,
                      r.blocks_launched, r.blocks_discarded, r.threads_discarded,
                      r.improvement_measured, to_string(r.verified));
        os << line << '\n';
    }
    if (!os) throw std::runtime_error("emit_csv: write failed for " + destination.string());
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) fields.push_back(cur);
    return fields;
}

template <typename T>
T parse_number(const std::string& s) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("parse_csv: bad numeric field '" + s + "'");
    return value;
}

VerifyState parse_verify(const std::string& s) {
    if (s == "skipped") return VerifyState::Skipped;
    if (s == "passed") return VerifyState::Passed;
    if (s == "failed") return VerifyState::Failed;
    throw std::runtime_error("parse_csv: bad verified field '" + s + "'");
}

}  // namespace

std::vector<BenchRecord> parse_csv(const std::filesystem::path& source) {
    std::ifstream is(source);
    if (!is) throw std::runtime_error("parse_csv: cannot open " + source.string());
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::runtime_error("parse_csv: missing or unexpected header");

    std::vector<BenchRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 12)
            throw std::runtime_error("parse_csv: expected 12 fields, got line '" + line + "'");
        BenchRecord r;
        r.strategy = f[0];
        r.n_elems = parse_number<std::uint64_t>(f[1]);
        r.rho = parse_number<std::uint32_t>(f[2]);
        r.features = parse_number<std::uint32_t>(f[3]);
        r.kernel = f[4];
        r.repetition = parse_number<std::uint32_t>(f[5]);
        r.wall_time_ns = parse_number<std::uint64_t>(f[6]);
        r.blocks_launched = parse_number<std::uint64_t>(f[7]);
        r.blocks_discarded = parse_number<std::uint64_t>(f[8]);
        r.threads_discarded = parse_number<std::uint64_t>(f[9]);
        r.improvement_measured = std::strtod(f[10].c_str(), nullptr);
        r.verified = parse_verify(f[11]);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace trigrid
