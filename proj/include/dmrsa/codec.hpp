#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmrsa/keys.hpp"
#include "dmrsa/scheme.hpp"

namespace dmrsa {

// Persistent formats, bit-exact:
//
// Key files are line-oriented UTF-8 text with LF endings and no trailing
// blank line. First line is exactly `DMRSA PUBLIC KEY V1` or
// `DMRSA PRIVATE KEY V1`, then `name = decimal` lines in fixed order
// (public: n1, n2, k; private: p1, q1, p2, q2, k, d1, d2). Derived
// fields (N_i, phi_i) are recomputed on load, which doubles as
// validation.
//
// Ciphertext streams are binary: magic `DMR1`, width1 and width2 as
// 4-byte big-endian (byte width of the w1/w2 fields, ceil(bitlen(N_i)/8)),
// plaintext length as 8-byte big-endian, block count as 4-byte
// big-endian, then the blocks as fixed-width w1 || w2. Fixed widths make
// the format seekable and the parser trivial.

/// One plaintext integer block together with the byte capacity it was
/// framed at. z < 256^capacity_bytes.
struct MessageBlock {
    Natural z;
    std::size_t capacity_bytes = 0;

    bool operator==(const MessageBlock&) const = default;
};

/// In-memory form of a ciphertext stream file.
struct CipherStream {
    std::uint32_t width1 = 0;           ///< byte width of every w1 field
    std::uint32_t width2 = 0;           ///< byte width of every w2 field
    std::uint64_t plaintext_length = 0; ///< original message size in bytes
    std::vector<Ciphertext> blocks;

    bool operator==(const CipherStream&) const = default;
};

/// Octet-string to integer, big-endian.
Natural os2ip(std::span<const std::uint8_t> bytes);

/// Integer to octet-string of exactly `width` bytes, big-endian.
/// Throws DomainError when n does not fit.
std::vector<std::uint8_t> i2osp(const Natural& n, std::size_t width);

/// Largest byte count whose big-endian value is always below N1*N2:
/// floor((bitlen(N1*N2) - 1) / 8). Throws KeyTooSmallError when that is
/// zero, i.e. the moduli cannot carry even one byte per block.
std::size_t block_capacity_bytes(const PublicKey& pub);

/// Splits a message into capacity-sized chunks (last chunk may be
/// shorter) and reads each as a big-endian integer. Empty message gives
/// an empty list.
std::vector<MessageBlock> bytes_to_blocks(std::span<const std::uint8_t> message,
                                          const PublicKey& pub);

/// Exact inverse of bytes_to_blocks. plaintext_length restores the
/// leading zero bytes inside blocks; an inconsistent length or an
/// oversized block value throws CorruptStreamError.
std::vector<std::uint8_t> blocks_to_bytes(const std::vector<MessageBlock>& blocks,
                                          std::uint64_t plaintext_length);

std::string write_public_key(const PublicKey& pub);
PublicKey read_public_key(std::string_view text);

std::string write_private_key(const PrivateKey& priv);
PrivateKey read_private_key(std::string_view text);

std::vector<std::uint8_t> write_cipher_stream(const CipherStream& stream);
CipherStream read_cipher_stream(std::span<const std::uint8_t> bytes);

/// Byte widths of the w fields under this key: ceil(bitlen(N_i)/8).
std::pair<std::uint32_t, std::uint32_t> stream_widths(const PublicKey& pub);

/// Full pipeline, message bytes to serialized stream: frame into blocks,
/// encrypt each, serialize.
std::vector<std::uint8_t> encrypt_message(const PublicKey& pub,
                                          std::span<const std::uint8_t> message);

/// Full inverse pipeline. Rejects streams whose widths do not match the
/// key or whose lengths are inconsistent (CorruptStreamError).
std::vector<std::uint8_t> decrypt_message(const PrivateKey& priv,
                                          std::span<const std::uint8_t> stream_bytes);

} // namespace dmrsa
