#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "trigrid/tri.hpp"

namespace trigrid {

/// N points with d features each, row-major binary32.
struct PointSet {
    std::uint64_t count = 0;
    std::uint32_t features = 0;
    std::vector<float> data;

    const float* point(std::uint64_t idx) const noexcept {
        return data.data() + idx * features;
    }
};

/// Deterministic uniform [0,1) points from a splitmix64 stream; identical
/// output for identical (N, d, seed) on any platform.
PointSet gen_points(std::uint64_t n, std::uint32_t d, std::uint64_t seed);

/// Euclidean distance between two d-feature points, accumulated in fixed
/// feature order, all in binary32.
inline float edm_pair(const float* a, const float* b, std::uint32_t d) noexcept {
    float sum = 0.0f;
    for (std::uint32_t k = 0; k < d; ++k) {
        const float diff = a[k] - b[k];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

/// Lower-triangular distance matrix in packed lambda order.
struct PackedEdm {
    std::uint64_t count = 0;  // N
    std::vector<float> values;

    static PackedEdm zeros(std::uint64_t n) {
        return {n, std::vector<float>(tri_count(n, true), 0.0f)};
    }
    float at(std::uint64_t i, std::uint64_t j) const {
        return values[tri_linear_index({i, j})];
    }
};

/// Sequential reference: every pair j <= i in row-major order, same
/// per-cell arithmetic as the parallel kernels.
PackedEdm edm_reference(const PointSet& points);

/// Binary dump: 16-byte header (magic "PEDM", version, N, d as 32-bit
/// little-endian fields) followed by the packed binary32 values.
void save_packed_edm(const PackedEdm& edm, std::uint32_t features,
                     const std::filesystem::path& path);

struct PedmFile {
    PackedEdm edm;
    std::uint32_t features = 0;
};
PedmFile load_packed_edm(const std::filesystem::path& path);

}  // namespace trigrid
