#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bv {

// Exact rational coefficients. Everything in this library is exact; there is
// no floating point anywhere in the computational path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat(long n, long d = 1) { return Rat(n, d); }

} // namespace bv
