#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ppx {

// Arbitrary precision integer used for every coefficient.
using Int = boost::multiprecision::cpp_int;

}  // namespace ppx
