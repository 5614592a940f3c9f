#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dmrsa {

/// Arbitrary-precision nonnegative integer. The representation is
/// boost's cpp_int (canonical, unbounded); nonnegativity is a contract
/// enforced at every operation boundary rather than by the type itself.
using Natural = boost::multiprecision::cpp_int;

/// Signed arbitrary-precision integer. Only ext_gcd exposes signed
/// values; everything else in the library deals in Naturals.
using Integer = boost::multiprecision::cpp_int;

} // namespace dmrsa
