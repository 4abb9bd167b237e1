#pragma once

#include <compare>
#include <cstdint>
#include <iterator>

namespace trigrid {

/// Hard cap on the element count per dimension; keeps every packed index
/// and block count inside 64-bit unsigned arithmetic with room to spare.
inline constexpr std::uint64_t kMaxElems = std::uint64_t{1} << 20;

/// A problem-space coordinate in the lower triangle: j <= i with the
/// diagonal, j < i without it.
struct TriCoord {
    std::uint64_t i = 0;  ///< row
    std::uint64_t j = 0;  ///< column
    friend bool operator==(const TriCoord&, const TriCoord&) = default;
    friend auto operator<=>(const TriCoord&, const TriCoord&) = default;
};

/// Problem dimensions: N elements per side, rho threads per block per
/// dimension, n = ceil(N/rho) blocks per side.
class ProblemSize {
public:
    ProblemSize(std::uint64_t elems, std::uint32_t rho);

    std::uint64_t elems() const noexcept { return elems_; }
    std::uint32_t rho() const noexcept { return rho_; }
    std::uint64_t blocks() const noexcept { return (elems_ + rho_ - 1) / rho_; }

private:
    std::uint64_t elems_;
    std::uint32_t rho_;
};

/// Number of lower-triangular cells over an n x n grid:
/// n(n+1)/2 with the diagonal, n(n-1)/2 without.
constexpr std::uint64_t tri_count(std::uint64_t n, bool with_diag = true) noexcept {
    return with_diag ? n * (n + 1) / 2 : n * (n - (n > 0 ? 1 : 0)) / 2;
}

/// Row-major packed index of a with-diagonal lower-tri cell:
/// lambda = i(i+1)/2 + j. Throws std::out_of_range when j > i.
std::uint64_t tri_linear_index(TriCoord c);

/// Balanced grid side n' = ceil(sqrt(n(n+1)/2)): the smallest side whose
/// square holds all lower-tri blocks. Requires n >= 1.
std::uint64_t grid_side_balanced(std::uint64_t n);

/// Lazy range over all lower-tri coordinates in ascending lambda order.
/// Materializes nothing; a full n = 1920 sweep walks ~1.8M values.
class LowerTriRange {
public:
    class iterator {
    public:
        using value_type = TriCoord;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        iterator() = default;
        TriCoord operator*() const noexcept { return cur_; }
        iterator& operator++() noexcept {
            ++cur_.j;
            const std::uint64_t row_len = with_diag_ ? cur_.i + 1 : cur_.i;
            if (cur_.j >= row_len) {
                ++cur_.i;
                cur_.j = 0;
            }
            return *this;
        }
        iterator operator++(int) noexcept {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        friend bool operator==(const iterator& a, const iterator& b) noexcept {
            return a.cur_ == b.cur_;
        }

    private:
        friend class LowerTriRange;
        iterator(TriCoord c, bool with_diag) : cur_(c), with_diag_(with_diag) {}
        TriCoord cur_{};
        bool with_diag_ = true;
    };

    LowerTriRange(std::uint64_t n, bool with_diag) noexcept
        : n_(n), with_diag_(with_diag) {}

    iterator begin() const noexcept {
        if (size() == 0) return end();
        return iterator{{with_diag_ ? 0u : 1u, 0u}, with_diag_};
    }
    iterator end() const noexcept { return iterator{{n_, 0u}, with_diag_}; }
    std::uint64_t size() const noexcept { return tri_count(n_, with_diag_); }

private:
    std::uint64_t n_;
    bool with_diag_;
};

inline LowerTriRange enumerate_lower(std::uint64_t n, bool with_diag = true) noexcept {
    return LowerTriRange{n, with_diag};
}

}  // namespace trigrid
