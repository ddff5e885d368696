#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace kk {

/// Arbitrary-precision integer used everywhere exactness matters.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace kk
