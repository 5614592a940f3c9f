#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmrsa/errors.hpp"
#include "dmrsa/numtheory_types.hpp"
#include "dmrsa/random.hpp"

namespace dmrsa {

/// Parameters for generate_keypair. The two prime sizes are independent:
/// the moduli may have different sizes, tailored to need.
struct KeyGenParams {
    unsigned bits1 = 512;          ///< bit length of p1 and q1, >= 4
    unsigned bits2 = 512;          ///< bit length of p2 and q2, >= 4
    Natural k = 65537;             ///< requested public exponent, odd, >= 3
    /// When set, key generation draws from a RandomSource seeded with
    /// these bytes instead of the injected one (reproducible keygen).
    std::optional<std::vector<std::uint8_t>> seed;
};

/// Published triple (N1, N2, k).
struct PublicKey {
    Natural n1;
    Natural n2;
    Natural k;

    bool operator==(const PublicKey&) const = default;
};

/// Full secret material: the four primes plus everything derived from
/// them. Immutable by convention after construction.
struct PrivateKey {
    Natural p1, q1;    ///< factors of n1
    Natural p2, q2;    ///< factors of n2
    Natural n1, n2;    ///< moduli, n_i = p_i * q_i
    Natural phi1, phi2;///< totients, phi_i = (p_i - 1)(q_i - 1)
    Natural d1, d2;    ///< private exponents, d_i = k^-1 mod phi_i
    Natural k;         ///< public exponent

    bool operator==(const PrivateKey&) const = default;
};

/// One failed invariant, named for reporting.
struct Violation {
    std::string name;    ///< short stable identifier, e.g. "k*d1 != 1 (mod phi1)"
    std::string detail;  ///< human-readable explanation

    bool operator==(const Violation&) const = default;
};

/// Outcome of validate_keypair: empty list means the pair is valid.
struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// A syntactically well-formed key whose invariants do not hold.
/// Carries the validation report so callers can show what failed.
class InvalidKeyError : public Error {
public:
    InvalidKeyError(std::string msg, ValidationReport report)
        : Error(std::move(msg)), report_(std::move(report)) {}

    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Generates four distinct probable primes and derives the key pair.
/// k is held fixed at the requested value; a prime pair whose totient
/// shares a factor with k is regenerated, up to 1000 attempts per pair,
/// after which ExhaustionError is thrown.
std::pair<PublicKey, PrivateKey> generate_keypair(const KeyGenParams& params,
                                                  RandomSource& rng);

/// Deterministically fills every derived field from four pairwise
/// distinct probable primes and the public exponent. Throws DomainError
/// on repeated or composite primes, NotInvertibleError when k is not
/// coprime with a totient.
PrivateKey derive_private(const Natural& p1, const Natural& q1,
                          const Natural& p2, const Natural& q2,
                          const Natural& k);

/// Checks every key invariant and reports each violation by name.
/// Violations are data, not errors; this never throws on a bad key.
ValidationReport validate_keypair(const PublicKey& pub, const PrivateKey& priv);

/// Projection of the public triple out of a private key.
PublicKey public_of(const PrivateKey& priv);

} // namespace dmrsa
