#include "trigrid/edm.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace trigrid {

namespace {

// splitmix64 (Steele, Lea, Flood 2014): the stream is the repeated
// application of this step to the seed.
std::uint64_t splitmix64_step(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void put_u32le(std::ostream& os, std::uint32_t v) {
    const std::array<char, 4> bytes{
        static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
        static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(bytes.data(), 4);
}

std::uint32_t get_u32le(std::istream& is) {
    std::array<unsigned char, 4> b{};
    is.read(reinterpret_cast<char*>(b.data()), 4);
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
           std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace

PointSet gen_points(std::uint64_t n, std::uint32_t d, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("gen_points: N must be >= 1");
    if (n > kMaxElems) throw std::invalid_argument("gen_points: N exceeds the 2^20 cap");
    if (d < 1 || d > 4) throw std::invalid_argument("gen_points: d must be in [1, 4]");

    PointSet p{n, d, {}};
    p.data.resize(n * d);
    std::uint64_t state = seed;
    for (float& v : p.data) {
        // Top 24 bits give the full binary32 resolution of [0, 1).
        v = static_cast<float>(splitmix64_step(state) >> 40) * 0x1.0p-24f;
    }
    return p;
}

PackedEdm edm_reference(const PointSet& points) {
    PackedEdm out = PackedEdm::zeros(points.count);
    std::size_t idx = 0;
    for (std::uint64_t i = 0; i < points.count; ++i) {
        const float* pi = points.point(i);
        for (std::uint64_t j = 0; j <= i; ++j) {
            out.values[idx++] = edm_pair(pi, points.point(j), points.features);
        }
    }
    return out;
}

void save_packed_edm(const PackedEdm& edm, std::uint32_t features,
                     const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os.write("PEDM", 4);
    put_u32le(os, 1);  // version
    put_u32le(os, static_cast<std::uint32_t>(edm.count));
    put_u32le(os, features);
    static_assert(sizeof(float) == 4);
    os.write(reinterpret_cast<const char*>(edm.values.data()),
             static_cast<std::streamsize>(edm.values.size() * sizeof(float)));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

PedmFile load_packed_edm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
    std::array<char, 4> magic{};
    is.read(magic.data(), 4);
    if (!is || std::memcmp(magic.data(), "PEDM", 4) != 0)
        throw std::runtime_error("not a PEDM file: " + path.string());
    const std::uint32_t version = get_u32le(is);
    if (version != 1) throw std::runtime_error("unsupported PEDM version");
    const std::uint32_t n = get_u32le(is);
    const std::uint32_t features = get_u32le(is);

    PedmFile out{PackedEdm::zeros(n), features};
    is.read(reinterpret_cast<char*>(out.edm.values.data()),
            static_cast<std::streamsize>(out.edm.values.size() * sizeof(float)));
    if (!is) throw std::runtime_error("truncated PEDM file: " + path.string());
    return out;
}

}  // namespace trigrid
