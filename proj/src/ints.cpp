#include "gclwb/ints.hpp"

namespace gclwb {

Int euclid_mod(const Int& a, const Int& b) {
  Int r = a % b;  // truncated remainder, sign follows a
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

Int euclid_div(const Int& a, const Int& b) {
  return (a - euclid_mod(a, b)) / b;
}

Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

Int abs_int(const Int& a) {
  return a < 0 ? Int(-a) : a;
}

}  // namespace gclwb
