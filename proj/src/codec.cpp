#include "dmrsa/codec.hpp"

#include <algorithm>
#include <array>

#include "dmrsa/numtheory.hpp"

namespace dmrsa {

namespace {

constexpr std::string_view kPublicHeader = "DMRSA PUBLIC KEY V1";
constexpr std::string_view kPrivateHeader = "DMRSA PRIVATE KEY V1";
constexpr std::array<std::uint8_t, 4> kStreamMagic = {'D', 'M', 'R', '1'};

bool is_canonical_decimal(std::string_view s) {
    if (s.empty()) return false;
    if (s.size() > 1 && s[0] == '0') return false; // no leading zeros
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Pulls `count` fields, in order, out of `text` after the header line.
// Strict: `name = decimal` per line, LF endings, nothing after the last
// field.
std::vector<Natural> parse_fields(std::string_view text, std::string_view header,
                                  std::span<const std::string_view> names) {
    if (text.empty()) {
        throw ParseError("line 1: empty file, expected header '" + std::string(header) + "'", 1);
    }
    if (text.find('\r') != std::string_view::npos) {
        throw ParseError("key files must use LF line endings");
    }
    if (text.back() != '\n') {
        throw ParseError("file must end with a newline");
    }

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        const std::size_t nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }

    if (lines[0] != header) {
        if (lines[0] == kPublicHeader || lines[0] == kPrivateHeader) {
            throw ParseError("line 1: expected '" + std::string(header) + "', found '" +
                                 std::string(lines[0]) + "' (wrong key type)",
                             1);
        }
        if (lines[0].starts_with("DMRSA ")) {
            throw UnknownVersionError(
                "line 1: unknown key-file version '" + std::string(lines[0]) + "'", 1);
        }
        throw ParseError("line 1: expected header '" + std::string(header) + "'", 1);
    }

    std::vector<Natural> values;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::size_t line_no = i + 2; // 1-based, after the header
        if (i + 1 >= lines.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": missing field '" +
                                 std::string(names[i]) + "'",
                             line_no);
        }
        const std::string_view line = lines[i + 1];
        const std::string prefix = std::string(names[i]) + " = ";
        if (!line.starts_with(prefix)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected '" +
                                 std::string(names[i]) + " = <decimal>'",
                             line_no);
        }
        const std::string_view digits = line.substr(prefix.size());
        if (!is_canonical_decimal(digits)) {
            throw ParseError("line " + std::to_string(line_no) + ": value of '" +
                                 std::string(names[i]) + "' is not a canonical decimal",
                             line_no);
        }
        values.emplace_back(std::string(digits));
    }
    if (lines.size() > names.size() + 1) {
        const std::size_t line_no = names.size() + 2;
        throw ParseError("line " + std::to_string(line_no) + ": unexpected content after '" +
                             std::string(names.back()) + "'",
                         line_no);
    }
    return values;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
    put_u32(out, static_cast<std::uint32_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    return (std::uint32_t(in[at]) << 24) | (std::uint32_t(in[at + 1]) << 16) |
           (std::uint32_t(in[at + 2]) << 8) | std::uint32_t(in[at + 3]);
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t at) {
    return (std::uint64_t(get_u32(in, at)) << 32) | get_u32(in, at + 4);
}

} // namespace

Natural os2ip(std::span<const std::uint8_t> bytes) {
    Natural n = 0;
    for (const std::uint8_t b : bytes) {
        n <<= 8;
        n |= b;
    }
    return n;
}

std::vector<std::uint8_t> i2osp(const Natural& n, std::size_t width) {
    if (n < 0) {
        throw DomainError("i2osp: value must be nonnegative");
    }
    if (bit_length(n) > 8 * width) {
        throw DomainError("i2osp: value does not fit in " + std::to_string(width) + " bytes");
    }
    std::vector<std::uint8_t> out(width, 0);
    Natural rest = n;
    for (std::size_t i = width; i-- > 0 && rest != 0;) {
        out[i] = static_cast<std::uint8_t>(rest & 0xff);
        rest >>= 8;
    }
    return out;
}

std::size_t block_capacity_bytes(const PublicKey& pub) {
    const std::size_t bl = bit_length(pub.n1 * pub.n2);
    const std::size_t capacity = bl >= 1 ? (bl - 1) / 8 : 0;
    if (capacity < 1) {
        throw KeyTooSmallError("key too small: the moduli cannot carry one message byte per block");
    }
    return capacity;
}

std::vector<MessageBlock> bytes_to_blocks(std::span<const std::uint8_t> message,
                                          const PublicKey& pub) {
    const std::size_t capacity = block_capacity_bytes(pub);
    std::vector<MessageBlock> blocks;
    blocks.reserve((message.size() + capacity - 1) / capacity);
    for (std::size_t at = 0; at < message.size(); at += capacity) {
        const std::size_t len = std::min(capacity, message.size() - at);
        blocks.push_back(MessageBlock{os2ip(message.subspan(at, len)), capacity});
    }
    return blocks;
}

std::vector<std::uint8_t> blocks_to_bytes(const std::vector<MessageBlock>& blocks,
                                          std::uint64_t plaintext_length) {
    if (blocks.empty()) {
        if (plaintext_length != 0) {
            throw CorruptStreamError("plaintext length nonzero but the stream has no blocks");
        }
        return {};
    }
    const std::size_t capacity = blocks.front().capacity_bytes;
    if (capacity < 1) {
        throw CorruptStreamError("block capacity must be >= 1");
    }
    for (const auto& block : blocks) {
        if (block.capacity_bytes != capacity) {
            throw CorruptStreamError("blocks disagree on capacity");
        }
    }
    const std::uint64_t count = blocks.size();
    const std::uint64_t full = (count - 1) * capacity;
    if (plaintext_length <= full || plaintext_length > full + capacity) {
        throw CorruptStreamError("plaintext length inconsistent with block count and capacity");
    }
    const std::size_t last_len = static_cast<std::size_t>(plaintext_length - full);

    std::vector<std::uint8_t> out;
    out.reserve(plaintext_length);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::size_t len = i + 1 == blocks.size() ? last_len : capacity;
        if (bit_length(blocks[i].z) > 8 * len) {
            throw CorruptStreamError("block value does not fit its share of the plaintext");
        }
        const auto bytes = i2osp(blocks[i].z, len);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

std::string write_public_key(const PublicKey& pub) {
    std::string out(kPublicHeader);
    out += "\n";
    out += "n1 = " + pub.n1.str() + "\n";
    out += "n2 = " + pub.n2.str() + "\n";
    out += "k = " + pub.k.str() + "\n";
    return out;
}

PublicKey read_public_key(std::string_view text) {
    static constexpr std::array<std::string_view, 3> names = {"n1", "n2", "k"};
    const auto values = parse_fields(text, kPublicHeader, names);
    PublicKey pub{values[0], values[1], values[2]};

    ValidationReport report;
    if (pub.n1 < 6) report.violations.push_back({"n1 < 6", "modulus too small"});
    if (pub.n2 < 6) report.violations.push_back({"n2 < 6", "modulus too small"});
    if (pub.n1 == pub.n2) report.violations.push_back({"n1 == n2", "the two moduli must differ"});
    if (gcd(pub.n1, pub.n2) != 1) {
        report.violations.push_back({"gcd(n1, n2) != 1", "the moduli must be coprime"});
    }
    if (!report.ok()) {
        throw InvalidKeyError("public key violates its invariants", report);
    }
    return pub;
}

std::string write_private_key(const PrivateKey& priv) {
    std::string out(kPrivateHeader);
    out += "\n";
    out += "p1 = " + priv.p1.str() + "\n";
    out += "q1 = " + priv.q1.str() + "\n";
    out += "p2 = " + priv.p2.str() + "\n";
    out += "q2 = " + priv.q2.str() + "\n";
    out += "k = " + priv.k.str() + "\n";
    out += "d1 = " + priv.d1.str() + "\n";
    out += "d2 = " + priv.d2.str() + "\n";
    return out;
}

PrivateKey read_private_key(std::string_view text) {
    static constexpr std::array<std::string_view, 7> names = {"p1", "q1", "p2", "q2",
                                                              "k",  "d1", "d2"};
    const auto values = parse_fields(text, kPrivateHeader, names);

    PrivateKey priv;
    priv.p1 = values[0];
    priv.q1 = values[1];
    priv.p2 = values[2];
    priv.q2 = values[3];
    priv.k = values[4];
    priv.d1 = values[5];
    priv.d2 = values[6];
    // derived fields are recomputed, never trusted from the file
    priv.n1 = priv.p1 * priv.q1;
    priv.n2 = priv.p2 * priv.q2;
    priv.phi1 = (priv.p1 - 1) * (priv.q1 - 1);
    priv.phi2 = (priv.p2 - 1) * (priv.q2 - 1);

    const ValidationReport report = validate_keypair(public_of(priv), priv);
    if (!report.ok()) {
        throw InvalidKeyError("private key violates its invariants", report);
    }
    return priv;
}

std::vector<std::uint8_t> write_cipher_stream(const CipherStream& stream) {
    if (!stream.blocks.empty() && (stream.width1 == 0 || stream.width2 == 0)) {
        throw DomainError("write_cipher_stream: zero block width with nonzero block count");
    }
    std::vector<std::uint8_t> out;
    out.reserve(24 + stream.blocks.size() * (std::size_t(stream.width1) + stream.width2));
    out.insert(out.end(), kStreamMagic.begin(), kStreamMagic.end());
    put_u32(out, stream.width1);
    put_u32(out, stream.width2);
    put_u64(out, stream.plaintext_length);
    put_u32(out, static_cast<std::uint32_t>(stream.blocks.size()));
    for (const auto& block : stream.blocks) {
        if (bit_length(block.w1) > 8 * std::size_t(stream.width1) ||
            bit_length(block.w2) > 8 * std::size_t(stream.width2)) {
            throw DomainError("write_cipher_stream: block component exceeds its field width");
        }
        const auto w1 = i2osp(block.w1, stream.width1);
        const auto w2 = i2osp(block.w2, stream.width2);
        out.insert(out.end(), w1.begin(), w1.end());
        out.insert(out.end(), w2.begin(), w2.end());
    }
    return out;
}

CipherStream read_cipher_stream(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 24) {
        throw CorruptStreamError("stream truncated: shorter than the fixed header");
    }
    if (!std::equal(kStreamMagic.begin(), kStreamMagic.end(), bytes.begin())) {
        throw CorruptStreamError("bad magic: not a DMR1 ciphertext stream");
    }
    CipherStream stream;
    stream.width1 = get_u32(bytes, 4);
    stream.width2 = get_u32(bytes, 8);
    stream.plaintext_length = get_u64(bytes, 12);
    const std::uint32_t count = get_u32(bytes, 20);
    if (count > 0 && (stream.width1 == 0 || stream.width2 == 0)) {
        throw CorruptStreamError("zero block width with nonzero block count");
    }

    const std::uint64_t block_bytes = std::uint64_t(stream.width1) + stream.width2;
    const std::uint64_t body = bytes.size() - 24;
    if (count == 0 ? body != 0 : (body / block_bytes != count || body % block_bytes != 0)) {
        throw CorruptStreamError("stream length inconsistent with its block count");
    }

    stream.blocks.reserve(count);
    std::size_t at = 24;
    for (std::uint32_t i = 0; i < count; ++i) {
        const Natural w1 = os2ip(bytes.subspan(at, stream.width1));
        const Natural w2 = os2ip(bytes.subspan(at + stream.width1, stream.width2));
        stream.blocks.push_back(Ciphertext{w1, w2});
        at += block_bytes;
    }
    return stream;
}

std::pair<std::uint32_t, std::uint32_t> stream_widths(const PublicKey& pub) {
    const auto width = [](const Natural& n) {
        return static_cast<std::uint32_t>((bit_length(n) + 7) / 8);
    };
    return {width(pub.n1), width(pub.n2)};
}

std::vector<std::uint8_t> encrypt_message(const PublicKey& pub,
                                          std::span<const std::uint8_t> message) {
    const auto blocks = bytes_to_blocks(message, pub);
    CipherStream stream;
    std::tie(stream.width1, stream.width2) = stream_widths(pub);
    stream.plaintext_length = message.size();
    stream.blocks.reserve(blocks.size());
    for (const auto& block : blocks) {
        stream.blocks.push_back(encrypt(pub, block.z));
    }
    return write_cipher_stream(stream);
}

std::vector<std::uint8_t> decrypt_message(const PrivateKey& priv,
                                          std::span<const std::uint8_t> stream_bytes) {
    const CipherStream stream = read_cipher_stream(stream_bytes);
    const PublicKey pub = public_of(priv);
    const auto [width1, width2] = stream_widths(pub);
    if (stream.width1 != width1 || stream.width2 != width2) {
        throw CorruptStreamError("stream block widths do not match the key");
    }
    const std::size_t capacity = block_capacity_bytes(pub);
    std::vector<MessageBlock> blocks;
    blocks.reserve(stream.blocks.size());
    for (const auto& c : stream.blocks) {
        blocks.push_back(MessageBlock{decrypt(priv, c), capacity});
    }
    return blocks_to_bytes(blocks, stream.plaintext_length);
}

} // namespace dmrsa
