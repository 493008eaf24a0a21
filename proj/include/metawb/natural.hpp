#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace metawb {

// Arbitrary precision integers. Gödel codes, ARP valuations, Presburger
// coefficients and ordinal coefficients all live here; nothing overflows.
using Natural = boost::multiprecision::cpp_int;
using Integer = boost::multiprecision::cpp_int;

}  // namespace metawb
