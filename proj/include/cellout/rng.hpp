#pragma once

// Counter-based random numbers: every variate is a pure function of
// (seed, snapshot, station, position, kind), so the Monte Carlo engine gives
// the same draws regardless of how snapshots are distributed over threads.

#include <array>
#include <cstdint>

namespace cellout::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
Counter philox4x32(Counter counter, Key key) noexcept;

enum class VariateKind : std::uint32_t { Shadowing = 0, Fading = 1 };

/// Uniform in the open interval (0, 1) with 53 random bits. One Philox block
/// per (snapshot, station, position) yields both kinds: the shadowing variate
/// from its first two words, the fading variate from the last two.
double uniform(std::uint64_t seed, std::uint64_t snapshot, std::uint32_t station,
               std::uint32_t position, VariateKind kind) noexcept;

struct UniformPair {
    double shadowing;
    double fading;
};

/// Both variates of one block; identical to two uniform() calls.
UniformPair uniform_pair(std::uint64_t seed, std::uint64_t snapshot, std::uint32_t station,
                         std::uint32_t position) noexcept;

/// Standard normal quantile (Wichura's AS 241, relative accuracy ~1e-16).
/// Requires 0 < p < 1.
double normal_quantile(double p) noexcept;

/// SplitMix64 finaliser, used to derive independent seeds from one.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace cellout::rng
