#include "dmrsa/labs.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "dmrsa/numtheory.hpp"

namespace dmrsa {

namespace {

using Clock = std::chrono::steady_clock;

double to_us(Clock::duration d) {
    return std::chrono::duration<double, std::micro>(d).count();
}

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

// Minimal classical single-modulus RSA key, the benchmark baseline.
struct RsaKey {
    Natural n;
    Natural k;
    Natural d;
};

RsaKey generate_rsa_key(unsigned bits, const Natural& k, RandomSource& rng) {
    constexpr unsigned kMaxAttempts = 1000;
    for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Natural p = gen_prime(bits, rng);
        const Natural q = gen_prime(bits, rng);
        if (p == q) continue;
        const Natural phi = (p - 1) * (q - 1);
        if (gcd(k, phi) != 1) continue;
        return RsaKey{p * q, k, mod_inverse(k, phi)};
    }
    throw ExhaustionError("generate_rsa_key: no suitable prime pair found");
}

int check_leaked(int leaked) {
    if (leaked != 1 && leaked != 2) {
        throw DomainError("leaked modulus selector must be 1 or 2");
    }
    return leaked;
}

} // namespace

BenchReport bench_compare(unsigned bits, unsigned iters, RandomSource& rng) {
    if (bits < 16) {
        throw DomainError("bench_compare: bits must be >= 16");
    }
    if (iters < 1) {
        throw DomainError("bench_compare: iters must be >= 1");
    }
    const Natural k = 65537;
    const RsaKey rsa = generate_rsa_key(bits, k, rng);

    KeyGenParams params;
    params.bits1 = bits;
    params.bits2 = bits;
    params.k = k;
    const auto [pub, priv] = generate_keypair(params, rng);
    const Natural dm_space = pub.n1 * pub.n2;

    std::vector<double> t_rsa_enc, t_dm_enc, t_rsa_dec, t_dm_dec, t_dm_comp;
    t_rsa_enc.reserve(iters);
    t_dm_enc.reserve(iters);
    t_rsa_dec.reserve(iters);
    t_dm_dec.reserve(iters);
    t_dm_comp.reserve(iters);

    for (unsigned i = 0; i < iters; ++i) {
        const Natural z_rsa = rng.below(rsa.n);
        const Natural z_dm = rng.below(dm_space);

        auto t0 = Clock::now();
        const Natural c_rsa = mod_pow(z_rsa, rsa.k, rsa.n);
        auto t1 = Clock::now();
        const Ciphertext c_dm = encrypt(pub, z_dm);
        auto t2 = Clock::now();
        const Natural back_rsa = mod_pow(c_rsa, rsa.d, rsa.n);
        auto t3 = Clock::now();
        const Natural back_dm = decrypt(priv, c_dm);
        auto t4 = Clock::now();
        const Natural comp = decrypt_component(priv, c_dm, 1);
        auto t5 = Clock::now();

        if (back_rsa != z_rsa || back_dm != z_dm || comp != z_dm % priv.n1) {
            throw Error("bench_compare: round-trip mismatch");
        }

        t_rsa_enc.push_back(to_us(t1 - t0));
        t_dm_enc.push_back(to_us(t2 - t1));
        t_rsa_dec.push_back(to_us(t3 - t2));
        t_dm_dec.push_back(to_us(t4 - t3));
        t_dm_comp.push_back(to_us(t5 - t4));
    }

    BenchReport report;
    report.prime_bits = bits;
    report.iterations = iters;
    report.rsa_modulus_bits = bit_length(rsa.n);
    report.dm_modulus1_bits = bit_length(pub.n1);
    report.dm_modulus2_bits = bit_length(pub.n2);
    report.rows = {
        {"rsa encrypt", mean_of(t_rsa_enc), median_of(t_rsa_enc)},
        {"dmrsa encrypt", mean_of(t_dm_enc), median_of(t_dm_enc)},
        {"rsa decrypt", mean_of(t_rsa_dec), median_of(t_rsa_dec)},
        {"dmrsa decrypt", mean_of(t_dm_dec), median_of(t_dm_dec)},
        {"dmrsa decrypt component", mean_of(t_dm_comp), median_of(t_dm_comp)},
    };
    return report;
}

CompromiseOutcome partial_compromise(const PrivateKey& priv, const Ciphertext& c,
                                     int leaked) {
    check_leaked(leaked);
    // The attacker sees the leaked modulus's factors only; everything
    // below is recomputed from them, not taken from the private key.
    const Natural& p = leaked == 1 ? priv.p1 : priv.p2;
    const Natural& q = leaked == 1 ? priv.q1 : priv.q2;
    const Natural& w = leaked == 1 ? c.w1 : c.w2;
    const Natural n_leaked = p * q;
    const Natural phi = (p - 1) * (q - 1);
    const Natural d = mod_inverse(priv.k, phi);
    const Natural residue = mod_pow(w, d, n_leaked);

    // Adjudicate against the true plaintext.
    const Natural z = decrypt(priv, c);
    return CompromiseOutcome{residue, residue == z ? Verdict::full : Verdict::partial};
}

CompromiseReport compromise_sweep(const PrivateKey& priv, std::uint64_t trials,
                                  MessageDistribution dist, int leaked,
                                  RandomSource& rng) {
    check_leaked(leaked);
    if (trials < 1) {
        throw DomainError("compromise_sweep: trials must be >= 1");
    }
    const PublicKey pub = public_of(priv);
    const Natural space = pub.n1 * pub.n2;
    const Natural n_leaked = leaked == 1 ? priv.n1 : priv.n2;
    const Natural min_modulus = std::min(priv.n1, priv.n2);
    if (dist == MessageDistribution::exhaustive && trials > space) {
        throw DomainError("compromise_sweep: exhaustive trials exceed the message space");
    }

    CompromiseReport report;
    report.leaked = leaked;
    report.trials = trials;
    report.below_leaked.reserve(trials);
    report.full_by_trial.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Natural z;
        switch (dist) {
        case MessageDistribution::uniform_full_range: z = rng.below(space); break;
        case MessageDistribution::below_min_modulus: z = rng.below(min_modulus); break;
        case MessageDistribution::exhaustive: z = t; break;
        }
        const auto outcome = partial_compromise(priv, encrypt(pub, z), leaked);
        if (outcome.verdict == Verdict::full) {
            ++report.full_recoveries;
        } else {
            ++report.partial_recoveries;
        }
        report.below_leaked.push_back(z < n_leaked);
        report.full_by_trial.push_back(outcome.verdict == Verdict::full);
    }
    return report;
}

Natural oracle_naive_modpow(const Natural& base, const Natural& exponent,
                            const Natural& modulus) {
    if (base < 0 || exponent < 0) {
        throw DomainError("oracle_naive_modpow: arguments must be nonnegative");
    }
    if (modulus < 1) {
        throw DomainError("oracle_naive_modpow: modulus must be >= 1");
    }
    if (exponent > 10000) {
        throw DomainError("oracle_naive_modpow: exponent above the oracle bound 10^4");
    }
    Natural result = 1 % modulus;
    for (Natural i = 0; i < exponent; ++i) {
        result = result * base % modulus;
    }
    return result;
}

Natural oracle_crt_scan(const Natural& r1, const Natural& n1,
                        const Natural& r2, const Natural& n2) {
    if (r1 < 0 || r2 < 0 || n1 < 1 || n2 < 1) {
        throw DomainError("oracle_crt_scan: bad arguments");
    }
    const Natural space = n1 * n2;
    if (space > 1000000) {
        throw DomainError("oracle_crt_scan: n1*n2 above the oracle bound 10^6");
    }
    for (Natural z = 0; z < space; ++z) {
        if (z % n1 == r1 && z % n2 == r2) {
            return z;
        }
    }
    throw DomainError("oracle_crt_scan: no solution (moduli not coprime or residues out of range)");
}

std::vector<Natural> oracle_trial_division(const Natural& n) {
    if (n < 1) {
        throw DomainError("oracle_trial_division: n must be >= 1");
    }
    if (n > 10000000000LL) {
        throw DomainError("oracle_trial_division: n above the oracle bound 10^10");
    }
    std::uint64_t rest = n.convert_to<std::uint64_t>();
    std::vector<Natural> factors;
    for (std::uint64_t d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        while (rest % d == 0) {
            factors.emplace_back(d);
            rest /= d;
        }
    }
    if (rest > 1) {
        factors.emplace_back(rest);
    }
    return factors;
}

std::string format_table(const BenchReport& report) {
    std::ostringstream out;
    out << "prime bits      : " << report.prime_bits << "\n";
    out << "iterations      : " << report.iterations << "\n";
    out << "rsa modulus bits : " << report.rsa_modulus_bits << "\n";
    out << "dm modulus bits  : " << report.dm_modulus1_bits << ", "
        << report.dm_modulus2_bits << "\n";
    char line[128];
    std::snprintf(line, sizeof line, "%-26s %14s %14s", "operation", "mean (us)",
                  "median (us)");
    out << line << "\n";
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof line, "%-26s %14.3f %14.3f", row.operation.c_str(),
                      row.mean_us, row.median_us);
        out << line << "\n";
    }
    return out.str();
}

std::string format_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "operation,prime_bits,iterations,mean_us,median_us\n";
    for (const auto& row : report.rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%s,%u,%u,%.3f,%.3f", row.operation.c_str(),
                      report.prime_bits, report.iterations, row.mean_us, row.median_us);
        out << line << "\n";
    }
    return out.str();
}

std::string format_table(const CompromiseReport& report) {
    std::ostringstream out;
    out << "leaked modulus    : n" << report.leaked << "\n";
    out << "trials            : " << report.trials << "\n";
    out << "full recoveries   : " << report.full_recoveries << "\n";
    out << "partial recoveries: " << report.partial_recoveries << "\n";
    char line[64];
    const double fraction =
        report.trials == 0 ? 0.0
                           : static_cast<double>(report.full_recoveries) /
                                 static_cast<double>(report.trials);
    std::snprintf(line, sizeof line, "%.6f", fraction);
    out << "full fraction     : " << line << "\n";
    return out.str();
}

std::string format_csv(const CompromiseReport& report) {
    std::ostringstream out;
    out << "trial,z_below_leaked,verdict\n";
    for (std::size_t i = 0; i < report.below_leaked.size(); ++i) {
        out << i << "," << (report.below_leaked[i] ? 1 : 0) << ","
            << (report.full_by_trial[i] ? "full" : "partial") << "\n";
    }
    return out.str();
}

} // namespace dmrsa
