// Copyright 2026 The irtps Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>

#include "irtps/vec3.hpp"

namespace irtps {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// PCG32 generator. One independent stream per (seed, pixel, sample, bounce)
/// key, so results never depend on how work is split across threads.
class Pcg32 {
public:
    Pcg32(std::uint64_t initstate, std::uint64_t initseq) {
        state_ = 0u;
        inc_ = (initseq << 1u) | 1u;
        next_u32();
        state_ += initstate;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((~rot + 1u) & 31u));
    }

    /// Uniform double in [0, 1).
    double next_double() { return next_u32() * 0x1p-32; }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// Counter-based stream: the generator state is a pure function of the key.
inline Pcg32 stream_rng(std::uint64_t seed, std::uint64_t pixel, std::uint64_t sample,
                        std::uint64_t bounce) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ pixel);
    h = splitmix64(h ^ sample);
    h = splitmix64(h ^ bounce);
    return Pcg32(h, splitmix64(h ^ 0xda3e39cb94b95bdbull));
}

/// Seed key derived from a direction's bit pattern, so per-light streams
/// depend on which light it is rather than its position in a list.
inline std::uint64_t direction_key(const Vec3& d) {
    std::uint64_t h = splitmix64(std::bit_cast<std::uint64_t>(d.x));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(d.y));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(d.z));
    return h;
}

}  // namespace irtps
