#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmrsa/keys.hpp"
#include "dmrsa/random.hpp"
#include "dmrsa/scheme.hpp"

namespace dmrsa {

// Experiment harnesses: the efficiency benchmark, the partial-compromise
// experiment, and the brute-force oracles the test suite checks the fast
// paths against.

/// Timing for one operation over all iterations.
struct BenchRow {
    std::string operation;
    double mean_us = 0.0;
    double median_us = 0.0;
};

/// Wall-clock comparison of classical single-modulus RSA against the
/// dual-modulus scheme at the same prime size. Row order is fixed:
/// rsa encrypt, dmrsa encrypt, rsa decrypt, dmrsa decrypt,
/// dmrsa decrypt component.
struct BenchReport {
    unsigned prime_bits = 0;
    unsigned iterations = 0;
    std::size_t rsa_modulus_bits = 0;    ///< measured bitlen of the baseline N
    std::size_t dm_modulus1_bits = 0;    ///< measured bitlen of N1
    std::size_t dm_modulus2_bits = 0;    ///< measured bitlen of N2
    std::vector<BenchRow> rows;
};

/// Generates one classical key and one dual-modulus key at prime size
/// `bits` (so the comparison isolates the cost of the second modulus)
/// and times the operations over `iters` random messages. The message
/// sequence is deterministic under a seeded rng; the timings of course
/// are not. bits >= 16, iters >= 1.
BenchReport bench_compare(unsigned bits, unsigned iters, RandomSource& rng);

/// Outcome of one simulated compromise: the attacker knows the public
/// key, the factorization of one modulus, and the ciphertext.
enum class Verdict {
    full,     ///< recovered residue equals the plaintext (z < N_leaked)
    partial,  ///< only z mod N_leaked was recovered
};

struct CompromiseOutcome {
    Natural residue;  ///< w^d mod N_leaked, what the attacker learns
    Verdict verdict;
};

/// Simulates leak of one modulus's factorization: derives that modulus's
/// private exponent from its factors and decrypts the matching
/// component. The verdict compares against the true plaintext, so full
/// recovery happens exactly when z < N_leaked. leaked is 1 or 2.
CompromiseOutcome partial_compromise(const PrivateKey& priv, const Ciphertext& c,
                                     int leaked);

/// How compromise_sweep draws plaintexts.
enum class MessageDistribution {
    uniform_full_range,  ///< uniform in [0, N1*N2)
    below_min_modulus,   ///< uniform in [0, min(N1, N2)): always fully recoverable
    exhaustive,          ///< z = 0, 1, ..., trials-1, no sampling
};

struct CompromiseReport {
    int leaked = 1;
    std::uint64_t trials = 0;
    std::uint64_t full_recoveries = 0;
    std::uint64_t partial_recoveries = 0;
    /// Per trial: was the sampled z below the leaked modulus?
    std::vector<bool> below_leaked;
    /// Per trial: measured verdict. Recorded separately from
    /// below_leaked so their agreement is an experimental result, not an
    /// assumption baked into the report.
    std::vector<bool> full_by_trial;
};

/// Aggregates partial_compromise over sampled messages. Under
/// uniform_full_range the expected full-recovery fraction is
/// N_leaked/(N1*N2); under below_min_modulus it is exactly 1.
CompromiseReport compromise_sweep(const PrivateKey& priv, std::uint64_t trials,
                                  MessageDistribution dist, int leaked,
                                  RandomSource& rng);

// Reference implementations by definitionally-direct computation, for
// small inputs only. Each throws DomainError above its documented bound.

/// Repeated multiplication, exponent at most 10^4.
Natural oracle_naive_modpow(const Natural& base, const Natural& exponent,
                            const Natural& modulus);

/// Linear scan of z in [0, n1*n2) checking both congruences; n1*n2 at
/// most 10^6.
Natural oracle_crt_scan(const Natural& r1, const Natural& n1,
                        const Natural& r2, const Natural& n2);

/// Prime factorization (with multiplicity, ascending) by division up to
/// the square root; n at most 10^10. n == 1 gives the empty list.
std::vector<Natural> oracle_trial_division(const Natural& n);

/// Aligned plain-text tables and CSV with a fixed header row.
std::string format_table(const BenchReport& report);
std::string format_csv(const BenchReport& report);
std::string format_table(const CompromiseReport& report);
std::string format_csv(const CompromiseReport& report);

} // namespace dmrsa
