"""Dual-modulus RSA: key generation, encryption, codecs, and experiments.

The heavy lifting lives in the compiled extension ``dmrsa._dmrsa``; this
package re-exports its public surface.
"""

from ._dmrsa import (
    Ciphertext,
    CorruptStreamError,
    DomainError,
    Error,
    ExhaustionError,
    InvalidKeyError,
    KeyTooSmallError,
    MessageTooLargeError,
    NotInvertibleError,
    ParseError,
    PrivateKey,
    PublicKey,
    RandomSource,
    UnknownVersionError,
    __version__,
    bit_length,
    block_capacity_bytes,
    crt_combine,
    decrypt,
    decrypt_component,
    decrypt_message,
    derive_private,
    encrypt,
    encrypt_message,
    ext_gcd,
    gcd,
    gen_prime,
    generate_keypair,
    i2osp,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    oracle_crt_scan,
    oracle_naive_modpow,
    oracle_trial_division,
    os2ip,
    partial_compromise,
    public_of,
    read_private_key,
    read_public_key,
    validate_keypair,
    write_private_key,
    write_public_key,
)

__all__ = [
    "Ciphertext",
    "CorruptStreamError",
    "DomainError",
    "Error",
    "ExhaustionError",
    "InvalidKeyError",
    "KeyTooSmallError",
    "MessageTooLargeError",
    "NotInvertibleError",
    "ParseError",
    "PrivateKey",
    "PublicKey",
    "RandomSource",
    "UnknownVersionError",
    "__version__",
    "bit_length",
    "block_capacity_bytes",
    "crt_combine",
    "decrypt",
    "decrypt_component",
    "decrypt_message",
    "derive_private",
    "encrypt",
    "encrypt_message",
    "ext_gcd",
    "gcd",
    "gen_prime",
    "generate_keypair",
    "i2osp",
    "is_probable_prime",
    "mod_inverse",
    "mod_pow",
    "oracle_crt_scan",
    "oracle_naive_modpow",
    "oracle_trial_division",
    "os2ip",
    "partial_compromise",
    "public_of",
    "read_private_key",
    "read_public_key",
    "validate_keypair",
    "write_private_key",
    "write_public_key",
]
