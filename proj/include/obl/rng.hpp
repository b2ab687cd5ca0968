#pragma once

#include <cstdint>
#include <random>

#include "obl/core.hpp"

namespace obl {

// splitmix64; used to derive independent streams from (seed, stream_id).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(RngSeed seed, std::uint64_t stream = 0) {
    return std::mt19937_64(mix64(seed.seed ^ mix64(stream)));
}

}  // namespace obl
