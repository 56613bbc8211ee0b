#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent generator for stream `stream` of a seeded run.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ (0xD1B54A32D192ED03ULL * (stream + 1))));
}

}  // namespace hetnet
