#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gclwb {

// Program integers are unbounded; rationals back the proof checker's
// polynomial arithmetic.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Euclidean division: remainder in [0, |b|), quotient such that a = q*b + r.
// Coincides with flooring division whenever b > 0.
Int euclid_div(const Int& a, const Int& b);
Int euclid_mod(const Int& a, const Int& b);

// gcd(|a|, |b|), with gcd(0, 0) = 0.
Int gcd_int(const Int& a, const Int& b);

Int abs_int(const Int& a);

}  // namespace gclwb
