#pragma once

#include <cstdint>
#include <random>

namespace kdcoh {

// splitmix64 step; used to whiten and combine seed material so that
// nearby seeds (seed, seed+1, ...) yield unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministically derive an independent stream seed from a base seed
// and up to three indices (start index, table entry, evaluation counter).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i0 = 0,
                                 std::uint64_t i1 = 0, std::uint64_t i2 = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s ^= i0 + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= i1 + 0xc2b2ae3d27d4eb4fULL;
    h ^= splitmix64(s);
    s ^= i2 + 0x165667b19e3779f9ULL;
    h ^= splitmix64(s);
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace kdcoh
