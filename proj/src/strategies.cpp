#include "trigrid/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace trigrid {

const char* to_string(StrategyKind k) noexcept {
    switch (k) {
        case StrategyKind::BoundingBox: return "bb";
        case StrategyKind::LowerTri: return "ltm";
        case StrategyKind::UpperTri: return "utm";
        case StrategyKind::RectBox: return "rb";
        case StrategyKind::Recursive: return "rec";
    }
    return "?";
}

std::optional<StrategyId> parse_strategy(std::string_view name) noexcept {
    if (name == "bb") return StrategyId{StrategyKind::BoundingBox, SqrtVariant::NativeSingle};
    if (name == "ltm-x") return StrategyId{StrategyKind::LowerTri, SqrtVariant::NativeSingle};
    if (name == "ltm-n") return StrategyId{StrategyKind::LowerTri, SqrtVariant::NewtonRaphson};
    if (name == "ltm-r") return StrategyId{StrategyKind::LowerTri, SqrtVariant::Reciprocal};
    if (name == "utm") return StrategyId{StrategyKind::UpperTri, SqrtVariant::NewtonRaphson};
    if (name == "rb") return StrategyId{StrategyKind::RectBox, SqrtVariant::NativeSingle};
    if (name == "rec") return StrategyId{StrategyKind::Recursive, SqrtVariant::NativeSingle};
    return std::nullopt;
}

std::string strategy_name(const StrategyId& id) {
    if (id.kind == StrategyKind::LowerTri) {
        switch (id.engine) {
            case SqrtVariant::NativeSingle: return "ltm-x";
            case SqrtVariant::NewtonRaphson: return "ltm-n";
            case SqrtVariant::Reciprocal: return "ltm-r";
            case SqrtVariant::ExactInteger: return "ltm-exact";
        }
    }
    return to_string(id.kind);
}

std::vector<StrategyId> all_strategies() {
    return {
        *parse_strategy("bb"),  *parse_strategy("ltm-x"), *parse_strategy("ltm-n"),
        *parse_strategy("ltm-r"), *parse_strategy("utm"), *parse_strategy("rb"),
        *parse_strategy("rec"),
    };
}

SqrtEngine engine_for(SqrtVariant v) noexcept {
    switch (v) {
        case SqrtVariant::NativeSingle: return SqrtEngine::native_single();
        case SqrtVariant::NewtonRaphson: return SqrtEngine::newton_raphson();
        case SqrtVariant::Reciprocal: return SqrtEngine::reciprocal();
        case SqrtVariant::ExactInteger: return SqrtEngine::exact_integer();
    }
    return SqrtEngine::reciprocal();
}

TriCoord ltm_map(std::uint64_t lambda, const SqrtEngine& engine, bool with_diag,
                 RepairPolicy repair) {
    std::uint64_t i;
    if (engine.variant == SqrtVariant::ExactInteger) {
        const std::uint64_t root = isqrt(8 * lambda + 1);
        i = with_diag ? (root - 1) / 2 : (root + 1) / 2;
    } else {
        // The row argument stays in binary32 end to end, matching the
        // kernel-side arithmetic the epsilon constant was tuned for.
        const auto s = static_cast<float>(
            sqrt_via(engine, 0.25 + 2.0 * static_cast<double>(lambda)));
        const float arg =
            with_diag ? s - 0.5f + engine.epsilon : s + 0.5f + engine.epsilon;
        auto row = static_cast<std::int64_t>(std::floor(arg));
        if (row < 0) row = 0;
        i = static_cast<std::uint64_t>(row);
        if (repair == RepairPolicy::On ||
            (repair == RepairPolicy::Auto && lambda >= kRepairFreeLambdaLimit)) {
            i = repair_lower_row(i, lambda, with_diag);
        }
    }
    const std::uint64_t row_start = with_diag ? i * (i + 1) / 2 : i * (i - 1) / 2;
    return {i, lambda - row_start};
}

UtmPair utm_map(std::uint64_t k, std::uint64_t n_elems, const SqrtEngine& engine) {
    const std::uint64_t n = n_elems;
    if (n < 2 || k >= tri_count(n, false))
        throw std::out_of_range("utm_map: k outside [0, N(N-1)/2)");
    // Discriminant 4n^2 - 4n - 8k + 1 = (2n-1)^2 - 8k, exact in 64 bits.
    return utm_pair_unchecked(k, n, (2 * n - 1) * (2 * n - 1), engine);
}

RbRect rb_rect(std::uint64_t n_elems) {
    if (n_elems < 2) throw std::invalid_argument("rb_rect: N must be >= 2");
    if (n_elems % 2 == 0) return {n_elems / 2, n_elems + 1};
    return {(n_elems + 1) / 2, n_elems};
}

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) noexcept {
    return (a + b - 1) / b;
}

}  // namespace

GridSpec rb_grid(std::uint64_t n_elems, std::uint32_t rho) {
    const RbRect r = rb_rect(n_elems);
    GridSpec g;
    g.strategy = StrategyKind::RectBox;
    g.rho = rho;
    g.passes.push_back({ceil_div(r.width, rho), ceil_div(r.height, rho), std::nullopt});
    return g;
}

RecSchedule rec_schedule(std::uint64_t n_elems, std::uint64_t m, std::uint32_t k,
                         std::uint32_t rho) {
    if (k < 1 || k > 40)
        throw std::invalid_argument("rec_schedule: k must be in [1, 40]");
    if (m == 0 || m % rho != 0)
        throw std::invalid_argument("rec_schedule: m must be a positive multiple of rho");
    if (n_elems != (m << k))
        throw std::invalid_argument("rec_schedule: N must equal m*2^k");

    RecSchedule sched;
    sched.m = m;
    sched.k = k;
    sched.grid.strategy = StrategyKind::Recursive;
    sched.grid.rho = rho;
    for (std::uint32_t level = 1; level <= k; ++level) {
        const std::uint64_t side = m << (level - 1);
        const std::uint64_t squares = std::uint64_t{1} << (k - level);
        sched.grid.passes.push_back(
            {side / rho, (side / rho) * squares, RecLevel{level, side, squares}});
    }
    const std::uint64_t triangles = std::uint64_t{1} << k;
    sched.grid.passes.push_back(
        {m / rho, (m / rho) * triangles, RecLevel{0, m, triangles}});
    return sched;
}

std::optional<std::pair<std::uint64_t, std::uint32_t>> rec_decompose(
    std::uint64_t n_elems, std::uint32_t rho) noexcept {
    std::optional<std::pair<std::uint64_t, std::uint32_t>> best;
    for (std::uint32_t k = 1; k <= 40 && (std::uint64_t{1} << k) <= n_elems; ++k) {
        if (n_elems % (std::uint64_t{1} << k) != 0) continue;
        const std::uint64_t m = n_elems >> k;
        if (m % rho == 0) best = {m, k};
    }
    return best;
}

BbStrategy::BbStrategy(ProblemSize size) : size_(size) {
    const std::uint64_t n = size_.blocks();
    grid_.strategy = StrategyKind::BoundingBox;
    grid_.rho = size_.rho();
    grid_.passes.push_back({n, n, std::nullopt});
}

LtmStrategy::LtmStrategy(ProblemSize size, SqrtEngine engine)
    : size_(size),
      engine_(engine),
      n_prime_(grid_side_balanced(size.blocks())),
      block_count_(tri_count(size.blocks(), true)) {
    grid_.strategy = StrategyKind::LowerTri;
    grid_.rho = size_.rho();
    grid_.passes.push_back({n_prime_, n_prime_, std::nullopt});
}

UtmStrategy::UtmStrategy(ProblemSize size, SqrtEngine engine)
    : size_(size),
      engine_(engine),
      pair_count_(tri_count(size.elems(), false)),
      disc_base_((2 * size.elems() - 1) * (2 * size.elems() - 1)) {
    const std::uint64_t threads_per_block =
        std::uint64_t{size.rho()} * size.rho();
    grid_.strategy = StrategyKind::UpperTri;
    grid_.rho = size_.rho();
    // One-dimensional grid over the pair indices, as the mapping is
    // thread-granularity to begin with.
    const std::uint64_t blocks =
        pair_count_ == 0 ? 1 : ceil_div(pair_count_, threads_per_block);
    grid_.passes.push_back({blocks, 1, std::nullopt});
}

RbStrategy::RbStrategy(ProblemSize size)
    : size_(size), rect_(rb_rect(size.elems())), grid_(rb_grid(size.elems(), size.rho())) {}

RecStrategy::RecStrategy(ProblemSize size, RecSchedule schedule)
    : size_(size), schedule_(std::move(schedule)) {}

AnyStrategy make_strategy(const StrategyId& id, ProblemSize size) {
    switch (id.kind) {
        case StrategyKind::BoundingBox: return BbStrategy{size};
        case StrategyKind::LowerTri: return LtmStrategy{size, engine_for(id.engine)};
        case StrategyKind::UpperTri: return UtmStrategy{size, engine_for(id.engine)};
        case StrategyKind::RectBox: return RbStrategy{size};
        case StrategyKind::Recursive: {
            const auto mk = rec_decompose(size.elems(), size.rho());
            if (!mk)
                throw std::invalid_argument(
                    "rec: N is not m*2^k with m a multiple of rho");
            return RecStrategy{size, rec_schedule(size.elems(), mk->first, mk->second,
                                                  size.rho())};
        }
    }
    throw std::invalid_argument("make_strategy: unknown strategy kind");
}

const GridSpec& grid_of(const AnyStrategy& s) noexcept {
    return std::visit([](const auto& strat) -> const GridSpec& { return strat.grid(); }, s);
}

}  // namespace trigrid
