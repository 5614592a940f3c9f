#pragma once

#include <cstddef>

#include "dmrsa/errors.hpp"
#include "dmrsa/numtheory_types.hpp"
#include "dmrsa/random.hpp"

namespace dmrsa {

/// Default Miller-Rabin round count: error probability <= 4^-40.
inline constexpr unsigned kDefaultPrimalityRounds = 40;

/// Number of significant bits; bit_length(0) == 0.
std::size_t bit_length(const Natural& n);

/// base^exponent mod modulus by square-and-multiply, result in [0, modulus).
/// modulus must be >= 1; mod_pow(x, e, 1) == 0 for all x, e.
Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus);

/// Greatest common divisor; gcd(0, 0) == 0 by convention.
Natural gcd(const Natural& a, const Natural& b);

struct ExtGcdResult {
    Natural g;  ///< gcd(a, b)
    Integer x;  ///< cofactor of a
    Integer y;  ///< cofactor of b, with a*x + b*y == g
};

/// Extended Euclid: returns (g, x, y) with a*x + b*y == g == gcd(a, b).
ExtGcdResult ext_gcd(const Natural& a, const Natural& b);

/// Multiplicative inverse of a modulo m, in [1, m). m must be >= 2.
/// Throws NotInvertibleError (carrying gcd(a, m)) when no inverse exists.
Natural mod_inverse(const Natural& a, const Natural& m);

/// The unique r in [0, n1*n2) with r == r1 (mod n1) and r == r2 (mod n2).
/// Requires gcd(n1, n2) == 1, r1 < n1, r2 < n2.
Natural crt_combine(const Natural& r1, const Natural& n1,
                    const Natural& r2, const Natural& n2);

/// Miller-Rabin probable-prime test with random witnesses from rng.
/// false means certainly composite; true means composite with probability
/// <= 4^-rounds. Small n (below ~4.2e6) are decided exactly by trial
/// division. rounds must be >= 1.
bool is_probable_prime(const Natural& n, unsigned rounds, RandomSource& rng);

/// Random probable prime with exactly `bits` significant bits (top bit
/// set, odd). bits must be >= 4. Loops until a prime is found.
Natural gen_prime(unsigned bits, RandomSource& rng,
                  unsigned rounds = kDefaultPrimalityRounds);

} // namespace dmrsa
