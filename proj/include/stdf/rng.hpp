#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <string_view>

namespace stdf {

using Engine = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of the stream (master, index, label). Trials that share a master seed
/// but differ in index or label get statistically independent streams, and the
/// mapping does not depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::string_view label) noexcept {
    return mix64(mix64(master ^ mix64(fnv1a(label))) + index);
}

inline Engine make_engine(std::uint64_t master, std::uint64_t index, std::string_view label) {
    return Engine(derive_seed(master, index, label));
}

/// Uniform on the open interval (0,1), 53 random bits.
inline double uniform_open(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard exponential by inversion.
inline double exponential(Engine& eng) {
    return -std::log(uniform_open(eng));
}

/// +1 or -1 with equal probability.
inline int rademacher(Engine& eng) {
    return (eng() >> 63) ? 1 : -1;
}

} // namespace stdf
