#include "trigrid/tri.hpp"

#include <stdexcept>

#include "trigrid/fastmath.hpp"

namespace trigrid {

ProblemSize::ProblemSize(std::uint64_t elems, std::uint32_t rho)
    : elems_(elems), rho_(rho) {
    if (elems == 0) throw std::invalid_argument("ProblemSize: N must be >= 1");
    if (elems > kMaxElems)
        throw std::invalid_argument("ProblemSize: N exceeds the 2^20 cap");
    if (rho == 0) throw std::invalid_argument("ProblemSize: rho must be >= 1");
}

std::uint64_t tri_linear_index(TriCoord c) {
    if (c.j > c.i)
        throw std::out_of_range("tri_linear_index: j > i is outside the lower triangle");
    return c.i * (c.i + 1) / 2 + c.j;
}

std::uint64_t grid_side_balanced(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("grid_side_balanced: n must be >= 1");
    return ceil_sqrt(tri_count(n, true));
}

}  // namespace trigrid
