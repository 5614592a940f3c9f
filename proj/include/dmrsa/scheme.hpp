#pragma once

#include "dmrsa/keys.hpp"
#include "dmrsa/numtheory_types.hpp"

namespace dmrsa {

/// The two component ciphertexts of one message block:
/// w1 = z^k mod N1, w2 = z^k mod N2.
struct Ciphertext {
    Natural w1;
    Natural w2;

    bool operator==(const Ciphertext&) const = default;
};

/// Textbook dual-modulus encryption of an integer block. The message
/// space is 0 <= z < N1*N2; anything larger throws MessageTooLargeError
/// carrying the bound. Deterministic and unpadded.
Ciphertext encrypt(const PublicKey& pub, const Natural& z);

/// Inverse of encrypt: raises each component to its private exponent and
/// recombines the residues with the CRT into the unique z in [0, N1*N2).
/// Accepts any in-range pair, not only genuine encryptions. Components
/// at or above their modulus throw DomainError.
Natural decrypt(const PrivateKey& priv, const Ciphertext& c);

/// The per-modulus residue before CRT recombination: w_i^d_i mod N_i.
/// which selects the component, 1 or 2.
Natural decrypt_component(const PrivateKey& priv, const Ciphertext& c, int which);

} // namespace dmrsa
