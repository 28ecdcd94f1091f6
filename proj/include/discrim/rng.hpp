#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace discrim::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Decorrelated sub-seed for (seed, stream) pairs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + 0x632be59bd9b4e019ULL * (stream + 1));
}

/// Independent, reproducible per-stream engine.
inline std::mt19937_64 engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_seed(seed, stream));
}

/// Uniform in [0, 1) from the top 53 bits. No distribution objects, so the
/// stream is identical across standard library implementations.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

/// Uniform integer in [0, bound). bound must be positive; the modulo bias is
/// below 2^-40 for any bound this library uses.
inline std::size_t below(std::mt19937_64& g, std::size_t bound) {
    return static_cast<std::size_t>(g() % bound);
}

/// First `count` entries of a seeded Fisher-Yates shuffle of 0..population-1.
inline std::vector<std::size_t> sample_without_replacement(std::mt19937_64& g,
                                                           std::size_t population,
                                                           std::size_t count) {
    std::vector<std::size_t> pool(population);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count && i + 1 < population; ++i) {
        const std::size_t j = i + below(g, population - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

} // namespace discrim::rng
