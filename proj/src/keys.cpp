#include "dmrsa/keys.hpp"

#include <array>

#include "dmrsa/numtheory.hpp"

namespace dmrsa {

namespace {

// Primality with a fixed-seed witness source, so derive_private and
// validate_keypair stay pure functions of their arguments.
bool probably_prime(const Natural& n) {
    RandomSource rng(std::uint64_t{0x444d525341u}); // "DMRSA"
    return n >= 2 && is_probable_prime(n, kDefaultPrimalityRounds, rng);
}

void check_params(const KeyGenParams& params) {
    if (params.bits1 < 4 || params.bits2 < 4) {
        throw DomainError("generate_keypair: prime sizes must be >= 4 bits");
    }
    if (params.k < 3 || params.k % 2 == 0) {
        throw DomainError("generate_keypair: public exponent must be odd and >= 3");
    }
}

} // namespace

PrivateKey derive_private(const Natural& p1, const Natural& q1,
                          const Natural& p2, const Natural& q2,
                          const Natural& k) {
    const std::array<const Natural*, 4> primes = {&p1, &q1, &p2, &q2};
    const std::array<const char*, 4> names = {"p1", "q1", "p2", "q2"};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (*primes[i] == *primes[j]) {
                throw DomainError(std::string("derive_private: ") + names[i] + " and " +
                                  names[j] + " are equal; the four primes must be distinct");
            }
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (!probably_prime(*primes[i])) {
            throw DomainError(std::string("derive_private: ") + names[i] + " is not prime");
        }
    }
    if (k < 1) {
        throw DomainError("derive_private: public exponent must be >= 1");
    }

    PrivateKey priv;
    priv.p1 = p1;
    priv.q1 = q1;
    priv.p2 = p2;
    priv.q2 = q2;
    priv.n1 = p1 * q1;
    priv.n2 = p2 * q2;
    priv.phi1 = (p1 - 1) * (q1 - 1);
    priv.phi2 = (p2 - 1) * (q2 - 1);
    priv.d1 = mod_inverse(k, priv.phi1);
    priv.d2 = mod_inverse(k, priv.phi2);
    priv.k = k;
    return priv;
}

std::pair<PublicKey, PrivateKey> generate_keypair(const KeyGenParams& params,
                                                  RandomSource& rng) {
    check_params(params);
    RandomSource seeded = params.seed
                              ? RandomSource(std::span<const std::uint8_t>(*params.seed))
                              : RandomSource(std::uint64_t{0});
    RandomSource& source = params.seed ? seeded : rng;

    constexpr unsigned kMaxAttempts = 1000;
    auto gen_pair = [&](unsigned bits,
                        const std::vector<Natural>& taken) -> std::pair<Natural, Natural> {
        for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const Natural p = gen_prime(bits, source);
            const Natural q = gen_prime(bits, source);
            if (p == q) continue;
            bool collides = false;
            for (const Natural& t : taken) {
                if (p == t || q == t) {
                    collides = true;
                    break;
                }
            }
            if (collides) continue;
            if (gcd(params.k, (p - 1) * (q - 1)) != 1) continue;
            return {p, q};
        }
        throw ExhaustionError(
            "generate_keypair: no prime pair compatible with the requested exponent after " +
            std::to_string(kMaxAttempts) + " attempts");
    };

    const auto [p1, q1] = gen_pair(params.bits1, {});
    const auto [p2, q2] = gen_pair(params.bits2, {p1, q1});
    PrivateKey priv = derive_private(p1, q1, p2, q2, params.k);
    return {public_of(priv), priv};
}

ValidationReport validate_keypair(const PublicKey& pub, const PrivateKey& priv) {
    ValidationReport report;
    auto flag = [&](std::string name, std::string detail) {
        report.violations.push_back({std::move(name), std::move(detail)});
    };

    const std::array<const Natural*, 4> primes = {&priv.p1, &priv.q1, &priv.p2, &priv.q2};
    const std::array<const char*, 4> names = {"p1", "q1", "p2", "q2"};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!probably_prime(*primes[i])) {
            flag(std::string(names[i]) + " not prime",
                 std::string(names[i]) + " = " + primes[i]->str() + " failed the primality test");
        }
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (*primes[i] == *primes[j]) {
                flag(std::string(names[i]) + " == " + names[j],
                     "the four primes must be pairwise distinct");
            }
        }
    }

    if (priv.n1 != priv.p1 * priv.q1) flag("n1 != p1*q1", "stored modulus does not factor as recorded");
    if (priv.n2 != priv.p2 * priv.q2) flag("n2 != p2*q2", "stored modulus does not factor as recorded");
    if (priv.phi1 != (priv.p1 - 1) * (priv.q1 - 1)) flag("phi1 != (p1-1)(q1-1)", "stored totient is wrong");
    if (priv.phi2 != (priv.p2 - 1) * (priv.q2 - 1)) flag("phi2 != (p2-1)(q2-1)", "stored totient is wrong");

    if (priv.n1 < 6) flag("n1 < 6", "modulus too small");
    if (priv.n2 < 6) flag("n2 < 6", "modulus too small");
    if (priv.n1 == priv.n2) flag("n1 == n2", "the two moduli must differ");
    if (gcd(priv.n1, priv.n2) != 1) flag("gcd(n1, n2) != 1", "the moduli must be coprime");

    // Exponent arithmetic needs sane totients to be meaningful.
    if (priv.phi1 >= 2) {
        if (gcd(priv.k, priv.phi1) != 1) flag("gcd(k, phi1) != 1", "public exponent shares a factor with phi1");
        if (priv.d1 < 1 || priv.d1 >= priv.phi1) flag("d1 out of range", "d1 must lie in [1, phi1)");
        if (priv.k * priv.d1 % priv.phi1 != 1) flag("k*d1 != 1 (mod phi1)", "d1 is not the inverse of k modulo phi1");
    } else {
        flag("phi1 < 2", "totient out of range");
    }
    if (priv.phi2 >= 2) {
        if (gcd(priv.k, priv.phi2) != 1) flag("gcd(k, phi2) != 1", "public exponent shares a factor with phi2");
        if (priv.d2 < 1 || priv.d2 >= priv.phi2) flag("d2 out of range", "d2 must lie in [1, phi2)");
        if (priv.k * priv.d2 % priv.phi2 != 1) flag("k*d2 != 1 (mod phi2)", "d2 is not the inverse of k modulo phi2");
    } else {
        flag("phi2 < 2", "totient out of range");
    }

    if (pub.n1 != priv.n1) flag("public n1 mismatch", "public key n1 disagrees with private key");
    if (pub.n2 != priv.n2) flag("public n2 mismatch", "public key n2 disagrees with private key");
    if (pub.k != priv.k) flag("public k mismatch", "public key exponent disagrees with private key");

    return report;
}

PublicKey public_of(const PrivateKey& priv) {
    return PublicKey{priv.n1, priv.n2, priv.k};
}

} // namespace dmrsa
