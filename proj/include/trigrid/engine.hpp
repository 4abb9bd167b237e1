#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "trigrid/edm.hpp"
#include "trigrid/strategies.hpp"

namespace trigrid {

/// Which kernel body a launch runs.
struct KernelSpec {
    enum class Kind : std::uint8_t { Dummy, Edm };
    Kind kind = Kind::Dummy;
    std::uint32_t features = 0;  // EDM only, must be in [1, 4]
};

struct DispatchStats {
    std::uint64_t blocks_launched = 0;
    std::uint64_t blocks_discarded = 0;
    std::uint64_t threads_discarded = 0;  // filtered inside surviving blocks
    std::uint64_t wall_time_ns = 0;

    DispatchStats& operator+=(const DispatchStats& o) noexcept {
        blocks_launched += o.blocks_launched;
        blocks_discarded += o.blocks_discarded;
        threads_discarded += o.threads_discarded;
        wall_time_ns += o.wall_time_ns;
        return *this;
    }
};

struct LaunchOptions {
    unsigned workers = 0;  // 0 = hardware concurrency
    std::vector<DispatchStats>* per_pass = nullptr;  // optional breakdown
};

/// Shared single-cell sink for the dummy kernel. The store is atomic and
/// relaxed; only its existence matters, never its final value.
class DummySink {
public:
    void write(std::uint64_t v) noexcept { cell_.store(v, std::memory_order_relaxed); }
    std::uint64_t value() const noexcept { return cell_.load(std::memory_order_relaxed); }

private:
    alignas(64) std::atomic<std::uint64_t> cell_{0};
};

/// The dummy kernel body: store i+j so the mapping cannot be optimized out.
inline void dummy_kernel(TriCoord c, DummySink& sink) noexcept {
    sink.write(c.i + c.j);
}

/// Dispatches every pass/block/thread of the strategy's grid, runs the
/// kernel on surviving threads, and tallies launched/discarded work.
/// Blocks are the unit of parallelism; threads within a block run
/// sequentially on one worker.
DispatchStats launch_dummy(const AnyStrategy& strategy, DummySink& sink,
                           const LaunchOptions& opt = {});

/// EDM launch; the output buffer must be PackedEdm::zeros(N)-shaped and the
/// point set must match the strategy's N. Each surviving thread writes one
/// disjoint packed cell, so any worker count produces identical bytes.
DispatchStats launch_edm(const AnyStrategy& strategy, const PointSet& points,
                         PackedEdm& out, const LaunchOptions& opt = {});

/// Coverage harness: atomically counts how many times each packed cell of
/// the with-diagonal domain is touched. The bijection oracle for every
/// strategy test.
DispatchStats launch_count(const AnyStrategy& strategy,
                           std::vector<std::uint32_t>& counts,
                           const LaunchOptions& opt = {});

/// Kernel-dispatching wrapper over the typed launches.
DispatchStats launch(const AnyStrategy& strategy, const KernelSpec& kernel,
                     DummySink* sink, const PointSet* points, PackedEdm* out,
                     const LaunchOptions& opt = {});

/// Closed-form wasted-block counts: BoundingBox = n(n-1)/2 discarded
/// blocks, LowerTri = n'^2 - n(n+1)/2 padding blocks. Other strategies
/// have no single closed form here and are rejected.
std::uint64_t count_wasted(StrategyKind strategy, std::uint64_t n);

/// LowerTri's other waste term: n diagonal blocks, each about half
/// filtered, reported as n/2 block-equivalents.
double ltm_diag_waste_blocks(std::uint64_t n) noexcept;

}  // namespace trigrid
