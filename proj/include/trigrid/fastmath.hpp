#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace trigrid {

static_assert(std::numeric_limits<float>::is_iec559,
              "binary32 bit layout is required");

/// Exact floor square root: returns r with r*r <= v < (r+1)*(r+1).
std::uint64_t isqrt(std::uint64_t v) noexcept;

/// Ceiling square root, exact over the full 64-bit range.
std::uint64_t ceil_sqrt(std::uint64_t v) noexcept;

/// Carmack/Lomont inverse square root: seed from the 0x5f3759df bit trick,
/// then `iterations` Newton-Raphson steps y <- y*(1.5 - 0.5*x*y*y), all in
/// binary32. Caller must pass a finite x > 0.
inline float fast_inv_sqrt(float x, int iterations) noexcept {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(x);
    bits = 0x5f3759dfu - (bits >> 1);
    float y = std::bit_cast<float>(bits);
    const float half_x = 0.5f * x;
    for (int k = 0; k < iterations; ++k) {
        // Square y before multiplying by half_x. The ((half_x*y)*y)
        // grouping loses the last bit at x = (i+0.5)^2 inputs, which is
        // exactly where the floor in the row mapping must not move.
        y = y * (1.5f - half_x * (y * y));
    }
    return y;
}

/// Reciprocal square root in binary32: correctly rounded sqrt followed by
/// a correctly rounded divide (<= 1 ulp total, deterministic). Stands in
/// for the device rsqrt intrinsic.
inline float rsqrt_single(float x) noexcept { return 1.0f / std::sqrt(x); }

enum class SqrtVariant : std::uint8_t {
    NativeSingle,   // platform binary32 sqrt
    NewtonRaphson,  // x * fast_inv_sqrt(x, 3)
    Reciprocal,     // x * rsqrt_single(x)
    ExactInteger,   // isqrt, integer inputs only
};

/// Additive repair constant applied inside the row floor for the
/// approximate engines.
inline constexpr float kRepairEpsilon = 1e-4f;

/// How sqrt(x) is evaluated inside the mapping functions. The approximate
/// engines carry the repair epsilon; the exact ones carry zero.
struct SqrtEngine {
    SqrtVariant variant = SqrtVariant::Reciprocal;
    float epsilon = kRepairEpsilon;

    static constexpr SqrtEngine native_single() {
        return {SqrtVariant::NativeSingle, 0.0f};
    }
    static constexpr SqrtEngine newton_raphson() {
        return {SqrtVariant::NewtonRaphson, kRepairEpsilon};
    }
    static constexpr SqrtEngine reciprocal() {
        return {SqrtVariant::Reciprocal, kRepairEpsilon};
    }
    static constexpr SqrtEngine exact_integer() {
        return {SqrtVariant::ExactInteger, 0.0f};
    }
};

const char* to_string(SqrtVariant v) noexcept;

/// sqrt(x) through the selected engine. The approximate engines evaluate in
/// binary32 (x is rounded to float once); ExactInteger requires an integral
/// x and returns isqrt(x). Throws std::invalid_argument outside the domain.
double sqrt_via(const SqrtEngine& engine, double x);

/// Largest lambda count for which the epsilon-repaired binary32 row
/// computation is verified exact (n = 1920 blocks, i.e. N = 30720 at
/// rho = 16). Above it the block-level fallback kicks in.
inline constexpr std::uint64_t kRepairFreeLambdaLimit = 1'844'160;

enum class RepairPolicy : std::uint8_t {
    Auto,  // fallback only for lambda >= kRepairFreeLambdaLimit
    Off,
    On,
};

/// Block-level fallback: nudge a computed row index until
/// row_start(i) <= lambda < row_start(i+1). A no-op when i is already
/// correct; each loop moves one row.
inline std::uint64_t repair_lower_row(std::uint64_t i, std::uint64_t lambda,
                                      bool with_diag) noexcept {
    const std::uint64_t min_row = with_diag ? 0 : 1;
    auto row_start = [with_diag](std::uint64_t r) {
        return with_diag ? r * (r + 1) / 2 : r * (r - 1) / 2;
    };
    if (i < min_row) i = min_row;
    while (i > min_row && row_start(i) > lambda) --i;
    while (row_start(i + 1) <= lambda) ++i;
    return i;
}

}  // namespace trigrid
