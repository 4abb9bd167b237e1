#include "trigrid/fastmath.hpp"

#include <cmath>
#include <stdexcept>

namespace trigrid {

std::uint64_t isqrt(std::uint64_t v) noexcept {
    if (v == 0) return 0;
    // Double sqrt as a guess, then fix up. The guess is within one of the
    // true root for every 64-bit input, so both loops run at most once.
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && (r > UINT32_MAX || r * r > v)) --r;
    while ((r + 1) <= UINT32_MAX && (r + 1) * (r + 1) <= v) ++r;
    return r;
}

std::uint64_t ceil_sqrt(std::uint64_t v) noexcept {
    const std::uint64_t r = isqrt(v);
    return r * r == v ? r : r + 1;
}

const char* to_string(SqrtVariant v) noexcept {
    switch (v) {
        case SqrtVariant::NativeSingle: return "native-single";
        case SqrtVariant::NewtonRaphson: return "newton-raphson";
        case SqrtVariant::Reciprocal: return "reciprocal";
        case SqrtVariant::ExactInteger: return "exact-integer";
    }
    return "?";
}

double sqrt_via(const SqrtEngine& engine, double x) {
    if (std::isnan(x) || std::isinf(x) || x < 0.0) {
        throw std::invalid_argument("sqrt_via: x must be finite and non-negative");
    }
    switch (engine.variant) {
        case SqrtVariant::NativeSingle:
            return std::sqrt(static_cast<float>(x));
        case SqrtVariant::NewtonRaphson: {
            if (x == 0.0)
                throw std::invalid_argument("sqrt_via: NewtonRaphson requires x > 0");
            const auto xf = static_cast<float>(x);
            return xf * fast_inv_sqrt(xf, 3);
        }
        case SqrtVariant::Reciprocal: {
            if (x == 0.0)
                throw std::invalid_argument("sqrt_via: Reciprocal requires x > 0");
            const auto xf = static_cast<float>(x);
            return xf * rsqrt_single(xf);
        }
        case SqrtVariant::ExactInteger: {
            if (x != std::floor(x) || x > 0x1p53)
                throw std::invalid_argument("sqrt_via: ExactInteger requires an integral x");
            return static_cast<double>(isqrt(static_cast<std::uint64_t>(x)));
        }
    }
    throw std::invalid_argument("sqrt_via: unknown engine variant");
}

}  // namespace trigrid
