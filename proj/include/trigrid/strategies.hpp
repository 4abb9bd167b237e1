#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trigrid/fastmath.hpp"
#include "trigrid/tri.hpp"

namespace trigrid {

enum class StrategyKind : std::uint8_t {
    BoundingBox,  // n x n grid, blocks above the diagonal discarded
    LowerTri,     // balanced n' x n' grid, lambda -> (i,j) via square root
    UpperTri,     // thread-granularity pair mapping, transposed onto the lower domain
    RectBox,      // triangle folded into a half-width rectangle of threads
    Recursive,    // k square passes plus one diagonal pass
};

const char* to_string(StrategyKind k) noexcept;

/// A benchmark strategy flavor: the mapping plus its square-root engine.
/// The engine only matters for LowerTri (ltm-x/-n/-r) and UpperTri.
struct StrategyId {
    StrategyKind kind = StrategyKind::BoundingBox;
    SqrtVariant engine = SqrtVariant::Reciprocal;
    friend bool operator==(const StrategyId&, const StrategyId&) = default;
};

/// Parses one of: bb, ltm-x, ltm-n, ltm-r, utm, rb, rec.
std::optional<StrategyId> parse_strategy(std::string_view name) noexcept;
std::string strategy_name(const StrategyId& id);
std::vector<StrategyId> all_strategies();

SqrtEngine engine_for(SqrtVariant v) noexcept;

/// One grid launch: block counts per dimension, with the recursion level
/// attached for Recursive passes (level 0 marks the diagonal pass).
struct RecLevel {
    std::uint32_t level = 0;
    std::uint64_t side = 0;     // square (or diagonal triangle) side in cells
    std::uint64_t squares = 0;  // squares (or triangles) covered by the pass
};

struct Pass {
    std::uint64_t blocks_x = 0;
    std::uint64_t blocks_y = 0;
    std::optional<RecLevel> level_tag;
};

struct GridSpec {
    StrategyKind strategy = StrategyKind::BoundingBox;
    std::uint32_t rho = 1;
    std::vector<Pass> passes;

    std::uint64_t total_blocks() const noexcept {
        std::uint64_t total = 0;
        for (const Pass& p : passes) total += p.blocks_x * p.blocks_y;
        return total;
    }
};

/// A block position in grid space.
struct BlockCoord {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
};

/// Result of mapping one block or thread: a coordinate, or a discard.
class MapOutcome {
public:
    static MapOutcome mapped(TriCoord c) noexcept { return MapOutcome{c, true}; }
    static MapOutcome discard() noexcept { return MapOutcome{{}, false}; }

    bool is_mapped() const noexcept { return mapped_; }
    TriCoord coord() const noexcept { return coord_; }

private:
    MapOutcome(TriCoord c, bool m) : coord_(c), mapped_(m) {}
    TriCoord coord_;
    bool mapped_;
};

// ---------------------------------------------------------------------------
// Mapping functions

/// Bounding-box block filter: blocks above the diagonal (x > y) are
/// discarded before any thread coordinate is computed; the rest map to
/// block coordinates (i, j) = (y, x). Diagonal blocks still need the
/// per-thread j <= i filter.
inline MapOutcome bb_map(BlockCoord b) noexcept {
    if (b.x > b.y) return MapOutcome::discard();
    return MapOutcome::mapped({b.y, b.x});
}

/// Lower-triangular mapping g(lambda): row via the engine's square root
/// with the epsilon repair, column by subtracting the row start.
/// with_diag:  i = floor(sqrt(1/4 + 2L) - 1/2 + eps), j = L - i(i+1)/2
/// no diag:    i = floor(sqrt(1/4 + 2L) + 1/2 + eps), j = L - i(i-1)/2
TriCoord ltm_map(std::uint64_t lambda, const SqrtEngine& engine,
                 bool with_diag = true, RepairPolicy repair = RepairPolicy::Auto);

/// Linearizes a block of the balanced n' x n' grid; blocks whose lambda
/// falls beyond the domain are grid padding and map to nothing.
inline std::optional<std::uint64_t> ltm_block_to_lambda(
    BlockCoord b, std::uint64_t n_prime, std::uint64_t block_count) noexcept {
    const std::uint64_t lambda = b.x + b.y * n_prime;
    if (lambda >= block_count) return std::nullopt;
    return lambda;
}

/// Upper-triangular (no diagonal) pair for work index k over N elements,
/// returned 0-based with a < b. The row comes from the quadratic-root
/// formula evaluated through the engine; the fallback nudges it onto the
/// right row, so the result is exact for any engine.
struct UtmPair {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
};
UtmPair utm_map(std::uint64_t k, std::uint64_t n_elems, const SqrtEngine& engine);

/// Hot-path core of utm_map with the (2n-1)^2 term precomputed and no
/// argument validation. a-row via the engine's square root, then the
/// fallback walk; exact for any engine.
inline UtmPair utm_pair_unchecked(std::uint64_t k, std::uint64_t n,
                                  std::uint64_t disc_base,
                                  const SqrtEngine& engine) noexcept {
    const std::uint64_t disc = disc_base - 8 * k;
    float s;
    switch (engine.variant) {
        case SqrtVariant::NativeSingle:
            s = std::sqrt(static_cast<float>(disc));
            break;
        case SqrtVariant::NewtonRaphson: {
            const auto xf = static_cast<float>(disc);
            s = xf * fast_inv_sqrt(xf, 3);
            break;
        }
        case SqrtVariant::Reciprocal: {
            const auto xf = static_cast<float>(disc);
            s = xf * rsqrt_single(xf);
            break;
        }
        case SqrtVariant::ExactInteger:
        default:
            s = static_cast<float>(isqrt(disc));
            break;
    }
    // a = floor((-(2n+1) + sqrt(disc)) / -2), 1-based; the double subtract
    // keeps the cancellation noise below the fallback's reach.
    auto a = static_cast<std::int64_t>(
        (static_cast<double>(2 * n + 1) - static_cast<double>(s)) * 0.5);
    if (a < 1) a = 1;
    if (a > static_cast<std::int64_t>(n) - 1) a = static_cast<std::int64_t>(n) - 1;

    auto row_offset = [n](std::uint64_t r) { return (r - 1) * (2 * n - r) / 2; };
    auto ua = static_cast<std::uint64_t>(a);
    while (ua > 1 && row_offset(ua) > k) --ua;
    while (ua < n - 1 && row_offset(ua + 1) <= k) ++ua;

    const std::uint64_t b = (ua + 1) + k - row_offset(ua);
    return {ua - 1, b - 1};  // to 0-based
}

/// Thread-space rectangle for the rectangular-box strategy.
/// Even N: N/2 x (N+1); odd N: (N+1)/2 x N. Both hold exactly
/// N(N+1)/2 slots and fold onto the triangle without gaps.
struct RbRect {
    std::uint64_t width = 0;
    std::uint64_t height = 0;
};
RbRect rb_rect(std::uint64_t n_elems);

GridSpec rb_grid(std::uint64_t n_elems, std::uint32_t rho);

/// Per-thread rectangular-box mapping. Threads below the partition take
/// the triangle cell directly; the rest land on the folded sub-triangle
/// above the diagonal. Out-of-rectangle threads are discarded.
inline MapOutcome rb_map(std::uint64_t tx, std::uint64_t ty,
                         std::uint64_t n_elems) noexcept {
    const std::uint64_t n = n_elems;
    if (n % 2 == 0) {
        if (tx >= n / 2 || ty >= n + 1) return MapOutcome::discard();
        if (tx + 1 <= ty) return MapOutcome::mapped({ty - 1, tx});
        return MapOutcome::mapped({n - ty - 1, n - tx - 1});
    }
    if (tx >= (n + 1) / 2 || ty >= n) return MapOutcome::discard();
    if (tx <= ty) return MapOutcome::mapped({ty, tx});
    return MapOutcome::mapped({n - ty - 1, n - tx});
}

/// Recursive-partition schedule: k bottom-up square levels plus one
/// diagonal pass. Level l in [1, k] holds 2^(k-l) squares of side
/// s_l = m 2^(l-1); the diagonal pass holds 2^k triangles of side m.
struct RecSchedule {
    std::uint64_t m = 0;
    std::uint32_t k = 0;
    GridSpec grid;
};

/// Requires N = m 2^k with k >= 1 and m a positive multiple of rho.
RecSchedule rec_schedule(std::uint64_t n_elems, std::uint64_t m, std::uint32_t k,
                         std::uint32_t rho);

/// Largest-k decomposition N = m 2^k with m a multiple of rho, if any.
std::optional<std::pair<std::uint64_t, std::uint32_t>> rec_decompose(
    std::uint64_t n_elems, std::uint32_t rho) noexcept;

/// Problem-space origin of a square-pass block: square q of level l is
/// anchored at rows [(2q+1)s, (2q+2)s) x cols [2qs, (2q+1)s).
inline TriCoord rec_block_map(std::uint64_t m, std::uint32_t level,
                              std::uint64_t square, BlockCoord local,
                              std::uint32_t rho) noexcept {
    const std::uint64_t s = m << (level - 1);
    return {(2 * square + 1) * s + local.y * rho,
            2 * square * s + local.x * rho};
}

// ---------------------------------------------------------------------------
// Strategy objects consumed by the execution engine

/// What the engine does with one block of a pass.
struct BlockDecision {
    enum class Kind : std::uint8_t {
        Discard,       // no thread does any work
        FullTile,      // every thread's cell is inside the domain (up to the N edge)
        DiagTile,      // threads above the local diagonal are filtered out
        ThreadMapped,  // per-thread mapping via map_thread
    };
    Kind kind = Kind::Discard;
    std::uint64_t origin_i = 0;
    std::uint64_t origin_j = 0;

    static BlockDecision discard() noexcept { return {Kind::Discard, 0, 0}; }
    static BlockDecision full(std::uint64_t i, std::uint64_t j) noexcept {
        return {Kind::FullTile, i, j};
    }
    static BlockDecision diag(std::uint64_t i, std::uint64_t j) noexcept {
        return {Kind::DiagTile, i, j};
    }
    static BlockDecision threads() noexcept { return {Kind::ThreadMapped, 0, 0}; }
};

class BbStrategy {
public:
    explicit BbStrategy(ProblemSize size);

    const GridSpec& grid() const noexcept { return grid_; }
    const ProblemSize& size() const noexcept { return size_; }

    BlockDecision decide(std::size_t, std::uint64_t bx, std::uint64_t by) const noexcept {
        const MapOutcome out = bb_map({bx, by});
        if (!out.is_mapped()) return BlockDecision::discard();
        const TriCoord c = out.coord();
        const std::uint64_t oi = c.i * size_.rho(), oj = c.j * size_.rho();
        return c.i == c.j ? BlockDecision::diag(oi, oj) : BlockDecision::full(oi, oj);
    }
    std::optional<TriCoord> map_thread(std::size_t, std::uint64_t, std::uint64_t,
                                       std::uint32_t, std::uint32_t) const noexcept {
        return std::nullopt;  // never thread-mapped
    }

private:
    ProblemSize size_;
    GridSpec grid_;
};

class LtmStrategy {
public:
    LtmStrategy(ProblemSize size, SqrtEngine engine);

    const GridSpec& grid() const noexcept { return grid_; }
    const ProblemSize& size() const noexcept { return size_; }
    std::uint64_t balanced_side() const noexcept { return n_prime_; }

    BlockDecision decide(std::size_t, std::uint64_t bx, std::uint64_t by) const {
        const auto lambda = ltm_block_to_lambda({bx, by}, n_prime_, block_count_);
        if (!lambda) return BlockDecision::discard();
        const TriCoord c = ltm_map(*lambda, engine_);
        const std::uint64_t oi = c.i * size_.rho(), oj = c.j * size_.rho();
        return c.i == c.j ? BlockDecision::diag(oi, oj) : BlockDecision::full(oi, oj);
    }
    std::optional<TriCoord> map_thread(std::size_t, std::uint64_t, std::uint64_t,
                                       std::uint32_t, std::uint32_t) const noexcept {
        return std::nullopt;
    }

private:
    ProblemSize size_;
    SqrtEngine engine_;
    std::uint64_t n_prime_;
    std::uint64_t block_count_;
    GridSpec grid_;
};

class UtmStrategy {
public:
    UtmStrategy(ProblemSize size, SqrtEngine engine);

    const GridSpec& grid() const noexcept { return grid_; }
    const ProblemSize& size() const noexcept { return size_; }
    std::uint64_t pair_count() const noexcept { return pair_count_; }

    BlockDecision decide(std::size_t, std::uint64_t, std::uint64_t) const noexcept {
        return BlockDecision::threads();
    }
    std::optional<TriCoord> map_thread(std::size_t, std::uint64_t bx, std::uint64_t by,
                                       std::uint32_t sx, std::uint32_t sy) const {
        const std::uint32_t rho = size_.rho();
        const std::uint64_t block_linear = by * grid_.passes[0].blocks_x + bx;
        const std::uint64_t k =
            block_linear * rho * rho + std::uint64_t{sy} * rho + sx;
        if (k >= pair_count_) return std::nullopt;
        const UtmPair p = utm_pair_unchecked(k, size_.elems(), disc_base_, engine_);
        // Transposed onto the lower triangle: strictly below the diagonal.
        return TriCoord{p.b, p.a};
    }

private:
    ProblemSize size_;
    SqrtEngine engine_;
    std::uint64_t pair_count_;
    std::uint64_t disc_base_ = 0;  // (2N-1)^2
    GridSpec grid_;
};

class RbStrategy {
public:
    explicit RbStrategy(ProblemSize size);

    const GridSpec& grid() const noexcept { return grid_; }
    const ProblemSize& size() const noexcept { return size_; }
    const RbRect& rect() const noexcept { return rect_; }

    BlockDecision decide(std::size_t, std::uint64_t, std::uint64_t) const noexcept {
        return BlockDecision::threads();
    }
    std::optional<TriCoord> map_thread(std::size_t, std::uint64_t bx, std::uint64_t by,
                                       std::uint32_t sx, std::uint32_t sy) const noexcept {
        const std::uint64_t tx = bx * size_.rho() + sx;
        const std::uint64_t ty = by * size_.rho() + sy;
        const MapOutcome out = rb_map(tx, ty, size_.elems());
        if (!out.is_mapped()) return std::nullopt;
        return out.coord();
    }

private:
    ProblemSize size_;
    RbRect rect_;
    GridSpec grid_;
};

class RecStrategy {
public:
    RecStrategy(ProblemSize size, RecSchedule schedule);

    const GridSpec& grid() const noexcept { return schedule_.grid; }
    const ProblemSize& size() const noexcept { return size_; }
    const RecSchedule& schedule() const noexcept { return schedule_; }

    BlockDecision decide(std::size_t pass, std::uint64_t bx, std::uint64_t by) const noexcept {
        const std::uint32_t rho = size_.rho();
        if (pass < schedule_.k) {
            const auto level = static_cast<std::uint32_t>(pass + 1);
            const std::uint64_t side_blocks = (schedule_.m << (level - 1)) / rho;
            const std::uint64_t q = by / side_blocks;
            const std::uint64_t ly = by % side_blocks;
            const TriCoord o = rec_block_map(schedule_.m, level, q, {bx, ly}, rho);
            return BlockDecision::full(o.i, o.j);
        }
        // Diagonal pass: 2^k sub-triangles of side m, BB-style inside each.
        const std::uint64_t side_blocks = schedule_.m / rho;
        const std::uint64_t t = by / side_blocks;
        const std::uint64_t ly = by % side_blocks;
        if (bx > ly) return BlockDecision::discard();
        const std::uint64_t oi = t * schedule_.m + ly * rho;
        const std::uint64_t oj = t * schedule_.m + bx * rho;
        return bx == ly ? BlockDecision::diag(oi, oj) : BlockDecision::full(oi, oj);
    }
    std::optional<TriCoord> map_thread(std::size_t, std::uint64_t, std::uint64_t,
                                       std::uint32_t, std::uint32_t) const noexcept {
        return std::nullopt;
    }

private:
    ProblemSize size_;
    RecSchedule schedule_;
};

using AnyStrategy = std::variant<BbStrategy, LtmStrategy, UtmStrategy, RbStrategy, RecStrategy>;

/// Builds the strategy for a benchmark flavor. Recursive auto-decomposes N
/// and throws std::invalid_argument when N is not m*2^k with m a multiple
/// of rho.
AnyStrategy make_strategy(const StrategyId& id, ProblemSize size);

const GridSpec& grid_of(const AnyStrategy& s) noexcept;

}  // namespace trigrid
