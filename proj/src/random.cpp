#include "dmrsa/random.hpp"

#include <cstdint>
#include <vector>

#include "dmrsa/errors.hpp"
#include "dmrsa/numtheory.hpp"

namespace dmrsa {

namespace {

std::mt19937_64 engine_from_bytes(std::span<const std::uint8_t> seed) {
    std::vector<std::uint32_t> words(seed.begin(), seed.end());
    if (words.empty()) {
        words.push_back(0);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

} // namespace

RandomSource::RandomSource(std::span<const std::uint8_t> seed)
    : engine_(engine_from_bytes(seed)) {}

RandomSource::RandomSource(std::uint64_t seed) : engine_(seed) {}

RandomSource RandomSource::from_entropy() {
    std::random_device dev;
    std::vector<std::uint8_t> seed(32);
    for (auto& b : seed) {
        b = static_cast<std::uint8_t>(dev());
    }
    return RandomSource(std::span<const std::uint8_t>(seed));
}

std::uint64_t RandomSource::next_u64() { return engine_(); }

Natural RandomSource::bits(std::size_t nbits) {
    Natural value = 0;
    std::size_t produced = 0;
    while (produced < nbits) {
        value <<= 64;
        value |= next_u64();
        produced += 64;
    }
    // drop the excess low bits so exactly nbits remain
    value >>= produced - nbits;
    return value;
}

Natural RandomSource::below(const Natural& bound) {
    if (bound < 1) {
        throw DomainError("RandomSource::below: bound must be >= 1");
    }
    const std::size_t nbits = bit_length(bound - 1);
    for (;;) {
        Natural candidate = bits(nbits);
        if (candidate < bound) {
            return candidate;
        }
    }
}

} // namespace dmrsa
