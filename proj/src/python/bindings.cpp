#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dmrsa/codec.hpp"
#include "dmrsa/keys.hpp"
#include "dmrsa/labs.hpp"
#include "dmrsa/numtheory.hpp"
#include "dmrsa/random.hpp"
#include "dmrsa/scheme.hpp"

namespace py = pybind11;

namespace pybind11 {
namespace detail {

// Marshal arbitrary-precision integers through their decimal representation,
// so Python ints of any size map onto the C++ big-integer type and back.
template <>
struct type_caster<dmrsa::Natural> {
    PYBIND11_TYPE_CASTER(dmrsa::Natural, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) {
            return false;
        }
        PyObject* str_obj = PyObject_Str(src.ptr());
        if (str_obj == nullptr) {
            PyErr_Clear();
            return false;
        }
        object text = reinterpret_steal<object>(str_obj);
        try {
            value = dmrsa::Natural(std::string(PyUnicode_AsUTF8(text.ptr())));
        } catch (...) {
            PyErr_Clear();
            return false;
        }
        return true;
    }

    static handle cast(const dmrsa::Natural& src, return_value_policy, handle) {
        return PyLong_FromString(src.str().c_str(), nullptr, 10);
    }
};

} // namespace detail
} // namespace pybind11

namespace {

std::vector<std::uint8_t> bytes_of(const py::bytes& data) {
    std::string_view view = data;
    return std::vector<std::uint8_t>(view.begin(), view.end());
}

py::bytes to_bytes(const std::vector<std::uint8_t>& data) {
    return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

py::list report_as_list(const dmrsa::ValidationReport& report) {
    py::list out;
    for (const auto& v : report.violations) {
        out.append(py::make_tuple(v.name, v.detail));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_dmrsa, m) {
    using namespace dmrsa;

    m.doc() = "dual-modulus RSA: key generation, encryption, codecs, and experiments";
    m.attr("__version__") = "0.1.0";

    auto err_base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", err_base.ptr());
    py::register_exception<NotInvertibleError>(m, "NotInvertibleError", err_base.ptr());
    py::register_exception<MessageTooLargeError>(m, "MessageTooLargeError", err_base.ptr());
    py::register_exception<ExhaustionError>(m, "ExhaustionError", err_base.ptr());
    auto parse_err = py::register_exception<ParseError>(m, "ParseError", err_base.ptr());
    py::register_exception<UnknownVersionError>(m, "UnknownVersionError", parse_err.ptr());
    py::register_exception<CorruptStreamError>(m, "CorruptStreamError", err_base.ptr());
    py::register_exception<KeyTooSmallError>(m, "KeyTooSmallError", err_base.ptr());
    py::register_exception<InvalidKeyError>(m, "InvalidKeyError", err_base.ptr());

    py::class_<RandomSource>(m, "RandomSource")
        .def(py::init([](const py::bytes& seed) {
                 const auto raw = bytes_of(seed);
                 return RandomSource(std::span<const std::uint8_t>(raw));
             }),
             py::arg("seed"))
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("from_entropy", &RandomSource::from_entropy)
        .def("next_u64", &RandomSource::next_u64)
        .def("bits", &RandomSource::bits, py::arg("nbits"))
        .def("below", &RandomSource::below, py::arg("bound"));

    m.def("bit_length", &bit_length, py::arg("n"));
    m.def("mod_pow", &mod_pow, py::arg("base"), py::arg("exponent"), py::arg("modulus"));
    m.def("gcd", &gcd, py::arg("a"), py::arg("b"));
    m.def(
        "ext_gcd",
        [](const Natural& a, const Natural& b) {
            const auto r = ext_gcd(a, b);
            return py::make_tuple(r.g, r.x, r.y);
        },
        py::arg("a"), py::arg("b"), "returns (g, x, y) with a*x + b*y == g");
    m.def("mod_inverse", &mod_inverse, py::arg("a"), py::arg("modulus"));
    m.def("crt_combine", &crt_combine, py::arg("r1"), py::arg("n1"), py::arg("r2"),
          py::arg("n2"));
    m.def(
        "is_probable_prime",
        [](const Natural& n, unsigned rounds, std::optional<std::uint64_t> seed) {
            RandomSource rng = seed ? RandomSource(*seed) : RandomSource::from_entropy();
            return is_probable_prime(n, rounds, rng);
        },
        py::arg("n"), py::arg("rounds") = kDefaultPrimalityRounds,
        py::arg("seed") = py::none());
    m.def(
        "gen_prime",
        [](unsigned bits, RandomSource& rng, unsigned rounds) {
            return gen_prime(bits, rng, rounds);
        },
        py::arg("bits"), py::arg("rng"), py::arg("rounds") = kDefaultPrimalityRounds);

    py::class_<PublicKey>(m, "PublicKey")
        .def(py::init<>())
        .def(py::init([](const Natural& n1, const Natural& n2, const Natural& k) {
                 return PublicKey{n1, n2, k};
             }),
             py::arg("n1"), py::arg("n2"), py::arg("k"))
        .def_readwrite("n1", &PublicKey::n1)
        .def_readwrite("n2", &PublicKey::n2)
        .def_readwrite("k", &PublicKey::k)
        .def("__repr__", [](const PublicKey& p) {
            return "PublicKey(n1=" + p.n1.str() + ", n2=" + p.n2.str() + ", k=" + p.k.str() +
                   ")";
        });

    py::class_<PrivateKey>(m, "PrivateKey")
        .def(py::init<>())
        .def_readwrite("p1", &PrivateKey::p1)
        .def_readwrite("q1", &PrivateKey::q1)
        .def_readwrite("p2", &PrivateKey::p2)
        .def_readwrite("q2", &PrivateKey::q2)
        .def_readwrite("n1", &PrivateKey::n1)
        .def_readwrite("n2", &PrivateKey::n2)
        .def_readwrite("phi1", &PrivateKey::phi1)
        .def_readwrite("phi2", &PrivateKey::phi2)
        .def_readwrite("d1", &PrivateKey::d1)
        .def_readwrite("d2", &PrivateKey::d2)
        .def_readwrite("k", &PrivateKey::k)
        .def("__repr__", [](const PrivateKey& p) {
            return "PrivateKey(n1=" + p.n1.str() + ", n2=" + p.n2.str() + ", k=" + p.k.str() +
                   ")";
        });

    py::class_<Ciphertext>(m, "Ciphertext")
        .def(py::init<>())
        .def(py::init([](const Natural& w1, const Natural& w2) {
                 return Ciphertext{w1, w2};
             }),
             py::arg("w1"), py::arg("w2"))
        .def_readwrite("w1", &Ciphertext::w1)
        .def_readwrite("w2", &Ciphertext::w2)
        .def("__eq__",
             [](const Ciphertext& a, const Ciphertext& b) {
                 return a.w1 == b.w1 && a.w2 == b.w2;
             })
        .def("__repr__", [](const Ciphertext& c) {
            return "Ciphertext(w1=" + c.w1.str() + ", w2=" + c.w2.str() + ")";
        });

    m.def(
        "generate_keypair",
        [](unsigned bits1, unsigned bits2, const Natural& k,
           std::optional<py::bytes> seed) {
            KeyGenParams params;
            params.bits1 = bits1;
            params.bits2 = bits2;
            params.k = k;
            if (seed) {
                params.seed = bytes_of(*seed);
            }
            RandomSource rng = RandomSource::from_entropy();
            return generate_keypair(params, rng);
        },
        py::arg("bits1") = 512, py::arg("bits2") = 512, py::arg("k") = Natural(65537),
        py::arg("seed") = py::none(), "returns (PublicKey, PrivateKey)");
    m.def("derive_private", &derive_private, py::arg("p1"), py::arg("q1"), py::arg("p2"),
          py::arg("q2"), py::arg("k"));
    m.def(
        "validate_keypair",
        [](const PublicKey& pub, const PrivateKey& priv) {
            return report_as_list(validate_keypair(pub, priv));
        },
        py::arg("pub"), py::arg("priv"),
        "returns a list of (violation, detail) pairs; empty when the pair is valid");
    m.def("public_of", &public_of, py::arg("priv"));

    m.def("encrypt", &encrypt, py::arg("pub"), py::arg("z"));
    m.def("decrypt", &decrypt, py::arg("priv"), py::arg("ciphertext"));
    m.def("decrypt_component", &decrypt_component, py::arg("priv"), py::arg("ciphertext"),
          py::arg("which"));

    m.def("os2ip", [](const py::bytes& data) { return os2ip(bytes_of(data)); },
          py::arg("data"));
    m.def(
        "i2osp",
        [](const Natural& value, std::size_t length) { return to_bytes(i2osp(value, length)); },
        py::arg("value"), py::arg("length"));
    m.def("block_capacity_bytes", &block_capacity_bytes, py::arg("pub"));
    m.def("write_public_key", &write_public_key, py::arg("pub"));
    m.def("read_public_key", &read_public_key, py::arg("text"));
    m.def("write_private_key", &write_private_key, py::arg("priv"));
    m.def("read_private_key", &read_private_key, py::arg("text"));
    m.def(
        "encrypt_message",
        [](const PublicKey& pub, const py::bytes& message) {
            return to_bytes(encrypt_message(pub, bytes_of(message)));
        },
        py::arg("pub"), py::arg("message"));
    m.def(
        "decrypt_message",
        [](const PrivateKey& priv, const py::bytes& stream) {
            return to_bytes(decrypt_message(priv, bytes_of(stream)));
        },
        py::arg("priv"), py::arg("stream"));

    m.def(
        "partial_compromise",
        [](const PrivateKey& priv, const Ciphertext& c, int leaked) {
            const auto outcome = partial_compromise(priv, c, leaked);
            return py::make_tuple(outcome.residue,
                                  outcome.verdict == Verdict::full ? "full" : "partial");
        },
        py::arg("priv"), py::arg("ciphertext"), py::arg("leaked"),
        "returns (recovered_residue, 'full' | 'partial')");
    m.def("oracle_naive_modpow", &oracle_naive_modpow, py::arg("base"), py::arg("exponent"),
          py::arg("modulus"));
    m.def("oracle_crt_scan", &oracle_crt_scan, py::arg("r1"), py::arg("n1"), py::arg("r2"),
          py::arg("n2"));
    m.def("oracle_trial_division", &oracle_trial_division, py::arg("n"));
}
