#include "dmrsa/numtheory.hpp"

#include <array>
#include <utility>
#include <vector>

namespace dmrsa {

namespace {

void require_natural(const Natural& n, const char* what) {
    if (n < 0) {
        throw DomainError(std::string(what) + ": negative value where a Natural is required");
    }
}

// Primes below 2048, built once. Trial division against these decides
// primality exactly for every n < 2048^2.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 2048;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < limit; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

} // namespace

std::size_t bit_length(const Natural& n) {
    if (n == 0) return 0;
    return boost::multiprecision::msb(n) + 1;
}

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
    require_natural(base, "mod_pow");
    require_natural(exponent, "mod_pow");
    if (modulus < 1) {
        throw DomainError("mod_pow: modulus must be >= 1");
    }
    if (modulus == 1) {
        return 0; // the only residue mod 1
    }
    if (exponent == 0) {
        return 1; // empty product
    }
    const Natural b = base % modulus;
    Natural result = 1;
    // left-to-right square-and-multiply over the exponent's bits
    for (std::size_t i = bit_length(exponent); i-- > 0;) {
        result = result * result % modulus;
        if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i))) {
            result = result * b % modulus;
        }
    }
    return result;
}

Natural gcd(const Natural& a, const Natural& b) {
    require_natural(a, "gcd");
    require_natural(b, "gcd");
    Natural x = a;
    Natural y = b;
    while (y != 0) {
        x %= y;
        std::swap(x, y);
    }
    return x;
}

ExtGcdResult ext_gcd(const Natural& a, const Natural& b) {
    require_natural(a, "ext_gcd");
    require_natural(b, "ext_gcd");
    Integer old_r = a, r = b;
    Integer old_x = 1, x = 0;
    Integer old_y = 0, y = 1;
    while (r != 0) {
        const Integer q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_x -= q * x;
        std::swap(old_x, x);
        old_y -= q * y;
        std::swap(old_y, y);
    }
    return ExtGcdResult{Natural(old_r), old_x, old_y};
}

Natural mod_inverse(const Natural& a, const Natural& m) {
    require_natural(a, "mod_inverse");
    if (m < 2) {
        throw DomainError("mod_inverse: modulus must be >= 2");
    }
    const auto [g, x, y] = ext_gcd(a % m, m);
    if (g != 1) {
        throw NotInvertibleError("mod_inverse: argument is not invertible, gcd = " + g.str(),
                                 g.str());
    }
    Integer u = x % m;
    if (u < 0) {
        u += m;
    }
    return Natural(u);
}

Natural crt_combine(const Natural& r1, const Natural& n1,
                    const Natural& r2, const Natural& n2) {
    require_natural(r1, "crt_combine");
    require_natural(r2, "crt_combine");
    if (n1 < 1 || n2 < 1) {
        throw DomainError("crt_combine: moduli must be >= 1");
    }
    if (r1 >= n1 || r2 >= n2) {
        throw DomainError("crt_combine: residue out of range of its modulus");
    }
    if (gcd(n1, n2) != 1) {
        throw DomainError("crt_combine: moduli are not coprime");
    }
    if (n1 == 1) return r2;
    if (n2 == 1) return r1;
    // r = r1 + n1 * t with t chosen so r == r2 (mod n2)
    Integer diff = (Integer(r2) - Integer(r1)) % n2;
    if (diff < 0) {
        diff += n2;
    }
    const Natural t = Natural(diff) * mod_inverse(n1 % n2, n2) % n2;
    return r1 + n1 * t;
}

bool is_probable_prime(const Natural& n, unsigned rounds, RandomSource& rng) {
    require_natural(n, "is_probable_prime");
    if (rounds < 1) {
        throw DomainError("is_probable_prime: rounds must be >= 1");
    }
    if (n < 2) {
        return false;
    }
    for (const std::uint32_t p : small_primes()) {
        if (Natural(p) * p > n) {
            return true; // fully trial-divided
        }
        if (n % p == 0) {
            return n == p;
        }
    }
    // n >= 2048^2 and has no factor below 2048: Miller-Rabin
    const Natural n_minus_1 = n - 1;
    const std::size_t s = boost::multiprecision::lsb(n_minus_1);
    const Natural d = n_minus_1 >> s;
    for (unsigned round = 0; round < rounds; ++round) {
        const Natural witness = 2 + rng.below(n - 3); // in [2, n-2]
        Natural x = mod_pow(witness, d, n);
        if (x == 1 || x == n_minus_1) {
            continue;
        }
        bool composite = true;
        for (std::size_t i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n_minus_1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

Natural gen_prime(unsigned bits, RandomSource& rng, unsigned rounds) {
    if (bits < 4) {
        throw DomainError("gen_prime: bits must be >= 4");
    }
    const Natural top = Natural(1) << (bits - 1);
    const Natural limit = (Natural(1) << bits) - 1;
    for (;;) {
        // random odd candidate with the top bit set, then a bounded
        // window of increments before redrawing
        Natural candidate = rng.bits(bits) | top | 1;
        for (unsigned step = 0; step < 4 * bits && candidate <= limit; ++step, candidate += 2) {
            if (is_probable_prime(candidate, rounds, rng)) {
                return candidate;
            }
        }
    }
}

} // namespace dmrsa
