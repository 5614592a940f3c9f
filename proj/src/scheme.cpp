#include "dmrsa/scheme.hpp"

#include "dmrsa/numtheory.hpp"

namespace dmrsa {

Ciphertext encrypt(const PublicKey& pub, const Natural& z) {
    if (z < 0) {
        throw DomainError("encrypt: plaintext must be nonnegative");
    }
    const Natural bound = pub.n1 * pub.n2;
    if (z >= bound) {
        throw MessageTooLargeError(
            "encrypt: plaintext must be below N1*N2 = " + bound.str(), bound.str());
    }
    return Ciphertext{mod_pow(z, pub.k, pub.n1), mod_pow(z, pub.k, pub.n2)};
}

Natural decrypt(const PrivateKey& priv, const Ciphertext& c) {
    if (c.w1 < 0 || c.w1 >= priv.n1) {
        throw DomainError("decrypt: component w1 out of range of N1");
    }
    if (c.w2 < 0 || c.w2 >= priv.n2) {
        throw DomainError("decrypt: component w2 out of range of N2");
    }
    const Natural m1 = mod_pow(c.w1, priv.d1, priv.n1);
    const Natural m2 = mod_pow(c.w2, priv.d2, priv.n2);
    return crt_combine(m1, priv.n1, m2, priv.n2);
}

Natural decrypt_component(const PrivateKey& priv, const Ciphertext& c, int which) {
    if (which != 1 && which != 2) {
        throw DomainError("decrypt_component: component selector must be 1 or 2");
    }
    const Natural& w = which == 1 ? c.w1 : c.w2;
    const Natural& n = which == 1 ? priv.n1 : priv.n2;
    const Natural& d = which == 1 ? priv.d1 : priv.d2;
    if (w < 0 || w >= n) {
        throw DomainError("decrypt_component: component out of range of its modulus");
    }
    return mod_pow(w, d, n);
}

} // namespace dmrsa
