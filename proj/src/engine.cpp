#include "trigrid/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace trigrid {

namespace {

struct WorkerTally {
    std::uint64_t blocks_discarded = 0;
    std::uint64_t threads_discarded = 0;
};

template <class S, class CellFn>
void process_block(const S& strat, std::size_t pass_idx, std::uint64_t bx,
                   std::uint64_t by, std::uint32_t rho, std::uint64_t n_elems,
                   WorkerTally& tally, CellFn& cell) {
    const BlockDecision d = strat.decide(pass_idx, bx, by);
    switch (d.kind) {
        case BlockDecision::Kind::Discard:
            ++tally.blocks_discarded;
            return;
        case BlockDecision::Kind::FullTile:
            for (std::uint32_t dy = 0; dy < rho; ++dy) {
                const std::uint64_t i = d.origin_i + dy;
                if (i >= n_elems) {
                    tally.threads_discarded += std::uint64_t{rho} * (rho - dy);
                    return;
                }
                const auto cols = static_cast<std::uint32_t>(
                    std::min<std::uint64_t>(rho, n_elems - d.origin_j));
                for (std::uint32_t dx = 0; dx < cols; ++dx) cell(i, d.origin_j + dx);
                tally.threads_discarded += rho - cols;
            }
            return;
        case BlockDecision::Kind::DiagTile:
            for (std::uint32_t dy = 0; dy < rho; ++dy) {
                const std::uint64_t i = d.origin_i + dy;
                if (i >= n_elems) {
                    tally.threads_discarded += std::uint64_t{rho} * (rho - dy);
                    return;
                }
                for (std::uint32_t dx = 0; dx < rho; ++dx) {
                    const std::uint64_t j = d.origin_j + dx;
                    if (j > i || j >= n_elems) {
                        tally.threads_discarded += rho - dx;
                        break;
                    }
                    cell(i, j);
                }
            }
            return;
        case BlockDecision::Kind::ThreadMapped:
            for (std::uint32_t sy = 0; sy < rho; ++sy) {
                for (std::uint32_t sx = 0; sx < rho; ++sx) {
                    if (const auto c = strat.map_thread(pass_idx, bx, by, sx, sy)) {
                        cell(c->i, c->j);
                    } else {
                        ++tally.threads_discarded;
                    }
                }
            }
            return;
    }
}

template <class S, class CellFn>
DispatchStats run_strategy(const S& strat, const LaunchOptions& opt, CellFn&& cell) {
    using clock = std::chrono::steady_clock;
    const GridSpec& grid = strat.grid();
    const std::uint32_t rho = grid.rho;
    const std::uint64_t n_elems = strat.size().elems();

    unsigned workers = opt.workers ? opt.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    // Under AUTO, small problems run serially: thread spawn costs more
    // than it buys and adds timing jitter. Keyed on the domain size, not
    // the grid, so strategies at the same N stay comparable. An explicit
    // worker count is always honored.
    if (opt.workers == 0 && tri_count(n_elems, true) < (std::uint64_t{1} << 22)) {
        workers = 1;
    }

    if (opt.per_pass) opt.per_pass->clear();
    DispatchStats total{};
    for (std::size_t pass_idx = 0; pass_idx < grid.passes.size(); ++pass_idx) {
        const Pass& pass = grid.passes[pass_idx];
        const std::uint64_t blocks = pass.blocks_x * pass.blocks_y;

        std::atomic<std::uint64_t> next{0};
        std::atomic<std::uint64_t> blocks_discarded{0};
        std::atomic<std::uint64_t> threads_discarded{0};
        const std::uint64_t chunk =
            std::clamp<std::uint64_t>(blocks / (std::uint64_t{workers} * 16), 1, 1024);

        auto drain = [&] {
            WorkerTally tally;
            for (;;) {
                const std::uint64_t b0 = next.fetch_add(chunk, std::memory_order_relaxed);
                if (b0 >= blocks) break;
                const std::uint64_t b1 = std::min(b0 + chunk, blocks);
                for (std::uint64_t b = b0; b < b1; ++b) {
                    process_block(strat, pass_idx, b % pass.blocks_x, b / pass.blocks_x,
                                  rho, n_elems, tally, cell);
                }
            }
            blocks_discarded.fetch_add(tally.blocks_discarded, std::memory_order_relaxed);
            threads_discarded.fetch_add(tally.threads_discarded, std::memory_order_relaxed);
        };

        const auto t0 = clock::now();
        if (workers == 1 || blocks < 2 * chunk) {
            drain();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers - 1);
            for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(drain);
            drain();       // the caller is worker 0
            pool.clear();  // join
        }
        const auto t1 = clock::now();

        DispatchStats ps{};
        ps.blocks_launched = blocks;
        ps.blocks_discarded = blocks_discarded.load();
        ps.threads_discarded = threads_discarded.load();
        ps.wall_time_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        total += ps;
        if (opt.per_pass) opt.per_pass->push_back(ps);
    }
    return total;
}

template <class CellFn>
DispatchStats run_any(const AnyStrategy& strategy, const LaunchOptions& opt, CellFn&& cell) {
    return std::visit(
        [&](const auto& s) { return run_strategy(s, opt, cell); }, strategy);
}

const ProblemSize& size_of(const AnyStrategy& s) noexcept {
    return std::visit([](const auto& strat) -> const ProblemSize& { return strat.size(); }, s);
}

}  // namespace

DispatchStats launch_dummy(const AnyStrategy& strategy, DummySink& sink,
                           const LaunchOptions& opt) {
    return run_any(strategy, opt, [&sink](std::uint64_t i, std::uint64_t j) {
        sink.write(i + j);
    });
}

DispatchStats launch_edm(const AnyStrategy& strategy, const PointSet& points,
                         PackedEdm& out, const LaunchOptions& opt) {
    const std::uint64_t n = size_of(strategy).elems();
    if (points.count != n)
        throw std::invalid_argument("launch_edm: point count does not match the strategy's N");
    if (points.features < 1 || points.features > 4)
        throw std::invalid_argument("launch_edm: features must be in [1, 4]");
    if (points.data.size() != points.count * points.features)
        throw std::invalid_argument("launch_edm: point data size mismatch");
    if (out.count != n || out.values.size() != tri_count(n, true))
        throw std::invalid_argument("launch_edm: output buffer is not N(N+1)/2 packed cells");

    const float* pts = points.data.data();
    float* cells = out.values.data();
    const std::uint32_t d = points.features;
    return run_any(strategy, opt, [pts, cells, d](std::uint64_t i, std::uint64_t j) {
        cells[i * (i + 1) / 2 + j] = edm_pair(pts + i * d, pts + j * d, d);
    });
}

DispatchStats launch_count(const AnyStrategy& strategy,
                           std::vector<std::uint32_t>& counts,
                           const LaunchOptions& opt) {
    const std::uint64_t n = size_of(strategy).elems();
    if (counts.size() != tri_count(n, true))
        throw std::invalid_argument("launch_count: counter buffer is not N(N+1)/2 cells");
    std::uint32_t* slots = counts.data();
    return run_any(strategy, opt, [slots](std::uint64_t i, std::uint64_t j) {
        std::atomic_ref<std::uint32_t> slot(slots[i * (i + 1) / 2 + j]);
        slot.fetch_add(1, std::memory_order_relaxed);
    });
}

DispatchStats launch(const AnyStrategy& strategy, const KernelSpec& kernel,
                     DummySink* sink, const PointSet* points, PackedEdm* out,
                     const LaunchOptions& opt) {
    switch (kernel.kind) {
        case KernelSpec::Kind::Dummy:
            if (!sink) throw std::invalid_argument("launch: dummy kernel needs a sink");
            return launch_dummy(strategy, *sink, opt);
        case KernelSpec::Kind::Edm:
            if (!points || !out)
                throw std::invalid_argument("launch: EDM kernel needs points and an output buffer");
            return launch_edm(strategy, *points, *out, opt);
    }
    throw std::invalid_argument("launch: unknown kernel kind");
}

std::uint64_t count_wasted(StrategyKind strategy, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("count_wasted: n must be >= 1");
    switch (strategy) {
        case StrategyKind::BoundingBox:
            return n * (n - 1) / 2;
        case StrategyKind::LowerTri: {
            const std::uint64_t side = grid_side_balanced(n);
            return side * side - tri_count(n, true);
        }
        default:
            throw std::invalid_argument("count_wasted: no closed form for this strategy");
    }
}

double ltm_diag_waste_blocks(std::uint64_t n) noexcept {
    return static_cast<double>(n) / 2.0;
}

}  // namespace trigrid
