// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace takv {

// Deterministic, platform-independent randomness. Standard-library
// distributions are not bit-stable across implementations, so every
// value that can influence an output file is derived from these
// primitives instead.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless mix of up to three words; used to give every (seed, step,
// position) tuple its own reproducible draw.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s ^= b + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= splitmix64(s);
    s ^= c + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return splitmix64(s);
}

inline double to_unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

// Small counter-based stream for places that want sequential draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }
    double next_unit() { return to_unit_interval(next_u64()); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

// Seed for trial `index` within a suite run under `master_seed`.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed, 0x747269616CULL, index);  // "trial"
}

}  // namespace takv
