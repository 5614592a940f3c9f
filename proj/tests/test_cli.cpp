#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dmrsa/cli.hpp"
#include "dmrsa/codec.hpp"
#include "dmrsa/keys.hpp"
#include "dmrsa/numtheory.hpp"

using namespace dmrsa;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;

    TempDir() {
        std::random_device dev;
        path = fs::temp_directory_path() /
               ("dmrsa_cli_test_" + std::to_string(dev()) + std::to_string(dev()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PrivateKey reference_key() { return derive_private(53, 97, 61, 89, 7); }
PrivateKey tiny_key() { return derive_private(5, 11, 7, 13, 7); }

} // namespace

TEST_CASE("selftest passes and reports the reference quantities") {
    const CliResult r = run_cli({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n1 = 5141 ok") != std::string::npos);
    CHECK(r.out.find("d1 = 4279 ok") != std::string::npos);
    CHECK(r.out.find("d2 = 2263 ok") != std::string::npos);
    CHECK(r.out.find("w2 = 3757 ok") != std::string::npos);
    CHECK(r.out.find("787") != std::string::npos);
    // the agreement/disagreement note about the originally printed value
    CHECK(r.out.find("2979") != std::string::npos);
    CHECK(r.out.find("selftest passed") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("help and usage") {
    const CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("keygen") != std::string::npos);
    CHECK(help.out.find("selftest") != std::string::npos);

    const CliResult none = run_cli({});
    CHECK(none.code == 1);
    CHECK_FALSE(none.err.empty());

    const CliResult unknown = run_cli({"frobnicate"});
    CHECK(unknown.code == 1);

    const CliResult badflag = run_cli({"selftest", "--bogus"});
    CHECK(badflag.code == 1);
    CHECK_FALSE(badflag.err.empty());

    const CliResult missing = run_cli({"keygen", "--out-priv", "x"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("--out-pub") != std::string::npos);
}

TEST_CASE("keygen writes both key files and reports bit lengths") {
    TempDir dir;
    const CliResult r = run_cli({"keygen", "--bits1", "16", "--bits2", "24", "--seed", "ab",
                                 "--out-pub", dir.file("k.pub"), "--out-priv",
                                 dir.file("k.priv")});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("n1:") != std::string::npos);
    CHECK(r.err.find("n2:") != std::string::npos);

    const PublicKey pub = read_public_key(read_file(dir.file("k.pub")));
    const PrivateKey priv = read_private_key(read_file(dir.file("k.priv")));
    CHECK(validate_keypair(pub, priv).ok());
    CHECK(bit_length(pub.n1) >= 31);
    CHECK(bit_length(pub.n1) <= 32);
    CHECK(bit_length(pub.n2) >= 47);
    CHECK(bit_length(pub.n2) <= 48);
}

TEST_CASE("seeded keygen is byte-identical across runs") {
    TempDir dir;
    const std::vector<std::string> base = {"keygen", "--bits1", "16", "--bits2", "16",
                                           "--seed", "00"};
    auto args_a = base;
    args_a.insert(args_a.end(),
                  {"--out-pub", dir.file("a.pub"), "--out-priv", dir.file("a.priv")});
    auto args_b = base;
    args_b.insert(args_b.end(),
                  {"--out-pub", dir.file("b.pub"), "--out-priv", dir.file("b.priv")});
    REQUIRE(run_cli(args_a).code == 0);
    REQUIRE(run_cli(args_b).code == 0);
    CHECK(read_file(dir.file("a.pub")) == read_file(dir.file("b.pub")));
    CHECK(read_file(dir.file("a.priv")) == read_file(dir.file("b.priv")));
}

TEST_CASE("keygen rejects bad parameters") {
    TempDir dir;
    const CliResult even = run_cli({"keygen", "--pubexp", "6", "--out-pub",
                                    dir.file("p"), "--out-priv", dir.file("s")});
    CHECK(even.code == 1);
    CHECK(even.err.find("odd") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.file("p")));

    const CliResult nondec = run_cli({"keygen", "--pubexp", "0x11", "--out-pub",
                                      dir.file("p"), "--out-priv", dir.file("s")});
    CHECK(nondec.code == 1);

    const CliResult badseed = run_cli({"keygen", "--seed", "zz", "--out-pub",
                                       dir.file("p"), "--out-priv", dir.file("s")});
    CHECK(badseed.code == 1);

    const CliResult oddseed = run_cli({"keygen", "--seed", "abc", "--out-pub",
                                       dir.file("p"), "--out-priv", dir.file("s")});
    CHECK(oddseed.code == 1);
}

TEST_CASE("encrypt and decrypt round-trip a file") {
    TempDir dir;
    REQUIRE(run_cli({"keygen", "--bits1", "32", "--bits2", "32", "--seed", "0102",
                     "--out-pub", dir.file("k.pub"), "--out-priv", dir.file("k.priv")})
                .code == 0);

    std::vector<std::uint8_t> message(300);
    for (std::size_t i = 0; i < message.size(); ++i) {
        message[i] = static_cast<std::uint8_t>(i); // includes 0x00 and wraps
    }
    write_file(dir.file("msg"), message);

    const CliResult enc = run_cli({"encrypt", "--pub", dir.file("k.pub"), "--in",
                                   dir.file("msg"), "--out", dir.file("msg.dmr")});
    REQUIRE(enc.code == 0);
    const std::string stream = read_file(dir.file("msg.dmr"));
    REQUIRE(stream.size() > 24);
    CHECK(stream.substr(0, 4) == "DMR1");

    const CliResult dec = run_cli({"decrypt", "--priv", dir.file("k.priv"), "--in",
                                   dir.file("msg.dmr"), "--out", dir.file("msg.out")});
    REQUIRE(dec.code == 0);
    const std::string out = read_file(dir.file("msg.out"));
    CHECK(std::vector<std::uint8_t>(out.begin(), out.end()) == message);
}

TEST_CASE("empty file round-trips through a header-only stream") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(reference_key())));
    write_file(dir.file("priv"), write_private_key(reference_key()));
    write_file(dir.file("empty"), std::string());

    REQUIRE(run_cli({"encrypt", "--pub", dir.file("pub"), "--in", dir.file("empty"),
                     "--out", dir.file("empty.dmr")})
                .code == 0);
    CHECK(read_file(dir.file("empty.dmr")).size() == 24);

    REQUIRE(run_cli({"decrypt", "--priv", dir.file("priv"), "--in", dir.file("empty.dmr"),
                     "--out", dir.file("empty.out")})
                .code == 0);
    CHECK(read_file(dir.file("empty.out")).empty());
}

TEST_CASE("encrypt failures leave no output file") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(reference_key())));

    const CliResult missing_in = run_cli({"encrypt", "--pub", dir.file("pub"), "--in",
                                          dir.file("absent"), "--out", dir.file("out")});
    CHECK(missing_in.code == 1);
    CHECK(missing_in.err.find("error:") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.file("out")));

    write_file(dir.file("msg"), std::string("hello"));
    const CliResult bad_key = run_cli({"encrypt", "--pub", dir.file("absent"), "--in",
                                       dir.file("msg"), "--out", dir.file("out")});
    CHECK(bad_key.code == 1);
    CHECK_FALSE(fs::exists(dir.file("out")));

    // a private key is not a public key
    write_file(dir.file("priv"), write_private_key(reference_key()));
    const CliResult wrong_type = run_cli({"encrypt", "--pub", dir.file("priv"), "--in",
                                          dir.file("msg"), "--out", dir.file("out")});
    CHECK(wrong_type.code == 1);
    CHECK(wrong_type.err.find("wrong key type") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.file("out")));

    // unwritable output directory
    const CliResult bad_out = run_cli({"encrypt", "--pub", dir.file("pub"), "--in",
                                       dir.file("msg"), "--out",
                                       dir.file("no_such_dir/out")});
    CHECK(bad_out.code == 1);
    CHECK_FALSE(fs::exists(dir.file("no_such_dir/out")));
}

TEST_CASE("decrypt failures are detected and leave no output file") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(reference_key())));
    write_file(dir.file("priv"), write_private_key(reference_key()));
    write_file(dir.file("tiny.priv"), write_private_key(tiny_key()));
    write_file(dir.file("msg"), std::string("attack at dawn"));

    REQUIRE(run_cli({"encrypt", "--pub", dir.file("pub"), "--in", dir.file("msg"),
                     "--out", dir.file("msg.dmr")})
                .code == 0);

    // truncated stream
    const std::string stream = read_file(dir.file("msg.dmr"));
    write_file(dir.file("trunc.dmr"), stream.substr(0, stream.size() - 1));
    const CliResult trunc = run_cli({"decrypt", "--priv", dir.file("priv"), "--in",
                                     dir.file("trunc.dmr"), "--out", dir.file("bad.out")});
    CHECK(trunc.code == 1);
    CHECK_FALSE(fs::exists(dir.file("bad.out")));

    // key with different stream widths
    const CliResult mismatch = run_cli({"decrypt", "--priv", dir.file("tiny.priv"), "--in",
                                        dir.file("msg.dmr"), "--out", dir.file("bad.out")});
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("width") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.file("bad.out")));

    // not a stream at all
    const CliResult garbage = run_cli({"decrypt", "--priv", dir.file("priv"), "--in",
                                       dir.file("msg"), "--out", dir.file("bad.out")});
    CHECK(garbage.code == 1);
    CHECK_FALSE(fs::exists(dir.file("bad.out")));
}

TEST_CASE("inspect a public key") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(reference_key())));
    const CliResult r = run_cli({"inspect", "--key", dir.file("pub")});
    CHECK(r.code == 0);
    CHECK(r.out.find("type: public") != std::string::npos);
    CHECK(r.out.find("n1 = 5141 (13 bits)") != std::string::npos);
    CHECK(r.out.find("n2 = 5429 (13 bits)") != std::string::npos);
    CHECK(r.out.find("k = 7 (3 bits)") != std::string::npos);
    CHECK(r.out.find("valid") == std::string::npos);
}

TEST_CASE("inspect a valid private key") {
    TempDir dir;
    write_file(dir.file("priv"), write_private_key(reference_key()));
    const CliResult r = run_cli({"inspect", "--key", dir.file("priv")});
    CHECK(r.code == 0);
    CHECK(r.out.find("type: private") != std::string::npos);
    CHECK(r.out.find("n1 = 5141 (13 bits)") != std::string::npos);
    CHECK(r.out.find("phi1 = 4992 (13 bits)") != std::string::npos);
    CHECK(r.out.find("d1 = 4279 (13 bits)") != std::string::npos);
    CHECK(r.out.find("d2 = 2263 (12 bits)") != std::string::npos);
    CHECK(r.out.find("valid") != std::string::npos);
}

TEST_CASE("inspect a tampered private key exits 2 with the named violation") {
    TempDir dir;
    std::string text = write_private_key(reference_key());
    text.replace(text.find("d1 = 4279"), 9, "d1 = 4280");
    write_file(dir.file("bad.priv"), text);

    const CliResult r = run_cli({"inspect", "--key", dir.file("bad.priv")});
    CHECK(r.code == 2);
    CHECK(r.out.find("k*d1 != 1 (mod phi1)") != std::string::npos);
}

TEST_CASE("inspect parse failures exit 1") {
    TempDir dir;
    write_file(dir.file("junk"), std::string("not a key\n"));
    CHECK(run_cli({"inspect", "--key", dir.file("junk")}).code == 1);
    CHECK(run_cli({"inspect", "--key", dir.file("absent")}).code == 1);

    write_file(dir.file("v2"), std::string("DMRSA PUBLIC KEY V2\nn1 = 5141\nn2 = 5429\nk = 7\n"));
    const CliResult v2 = run_cli({"inspect", "--key", dir.file("v2")});
    CHECK(v2.code == 1);
    CHECK(v2.err.find("version") != std::string::npos);
}

TEST_CASE("bench runs at a small size and formats both ways") {
    const CliResult csv = run_cli({"bench", "--bits", "16", "--iters", "2", "--seed", "aa",
                                   "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("operation,prime_bits,iterations,mean_us,median_us\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 6);

    const CliResult table = run_cli({"bench", "--bits", "16", "--iters", "1"});
    REQUIRE(table.code == 0);
    CHECK(table.out.find("dmrsa decrypt component") != std::string::npos);

    CHECK(run_cli({"bench", "--bits", "8", "--iters", "1"}).code == 1);
    CHECK(run_cli({"bench", "--bits", "16", "--iters", "0"}).code == 1);
}

TEST_CASE("attack reports per-block verdicts") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(tiny_key())));
    write_file(dir.file("priv"), write_private_key(tiny_key()));
    // capacity is 1 byte, so each byte is one block: z = 10, 60, 200
    write_file(dir.file("msg"), std::vector<std::uint8_t>{10, 60, 200});
    REQUIRE(run_cli({"encrypt", "--pub", dir.file("pub"), "--in", dir.file("msg"),
                     "--out", dir.file("msg.dmr")})
                .code == 0);

    const CliResult csv = run_cli({"attack", "--priv", dir.file("priv"), "--in",
                                   dir.file("msg.dmr"), "--leak", "n1", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("trial,z_below_leaked,verdict\n", 0) == 0);
    CHECK(csv.out.find("0,1,full\n") != std::string::npos);    // 10 < 55
    CHECK(csv.out.find("1,0,partial\n") != std::string::npos); // 60 >= 55
    CHECK(csv.out.find("2,0,partial\n") != std::string::npos); // 200 >= 55

    const CliResult table = run_cli({"attack", "--priv", dir.file("priv"), "--in",
                                     dir.file("msg.dmr"), "--leak", "n2"});
    REQUIRE(table.code == 0);
    // 10 and 60 are below 91; 200 is not
    CHECK(table.out.find("full recoveries   : 2") != std::string::npos);
    CHECK(table.out.find("partial recoveries: 1") != std::string::npos);

    const CliResult bad = run_cli({"attack", "--priv", dir.file("priv"), "--in",
                                   dir.file("msg.dmr"), "--leak", "nx"});
    CHECK(bad.code == 1);
}

TEST_CASE("attack rejects a stream that does not match the key") {
    TempDir dir;
    write_file(dir.file("pub"), write_public_key(public_of(reference_key())));
    write_file(dir.file("tiny.priv"), write_private_key(tiny_key()));
    write_file(dir.file("msg"), std::string("x"));
    REQUIRE(run_cli({"encrypt", "--pub", dir.file("pub"), "--in", dir.file("msg"),
                     "--out", dir.file("msg.dmr")})
                .code == 0);
    const CliResult r = run_cli({"attack", "--priv", dir.file("tiny.priv"), "--in",
                                 dir.file("msg.dmr"), "--leak", "n1"});
    CHECK(r.code == 1);
}
