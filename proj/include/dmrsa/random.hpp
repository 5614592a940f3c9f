#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dmrsa/numtheory_types.hpp"

namespace dmrsa {

/// Deterministic random source: the same seed always yields the same
/// stream, on every platform (mt19937_64 and seed_seq are fully
/// specified by the standard). Single-owner; give each concurrent task
/// its own instance.
class RandomSource {
public:
    /// Seed from a byte string. An empty seed is valid (fixed stream).
    explicit RandomSource(std::span<const std::uint8_t> seed);

    /// Convenience: seed from a single integer.
    explicit RandomSource(std::uint64_t seed);

    /// Nondeterministic source for production key generation.
    static RandomSource from_entropy();

    std::uint64_t next_u64();

    /// Uniform value in [0, 2^nbits).
    Natural bits(std::size_t nbits);

    /// Uniform value in [0, bound). bound must be >= 1.
    Natural below(const Natural& bound);

private:
    std::mt19937_64 engine_;
};

} // namespace dmrsa
