#pragma once

#include <map>
#include <optional>
#include <string>

#include "gclwb/ast.hpp"

namespace gclwb {

// Thrown when an expression leaves the polynomial fragment (gcd, abs,
// integer div/mod, boolean nodes) and the caller should fall back to a
// domain check.
class NonPolynomial : public GclError {
  using GclError::GclError;
};

// Sparse multivariate polynomial with rational coefficients in expanded
// normal form: monomials (variable -> positive exponent) mapped to nonzero
// coefficients, ordered by the map's total order. Two polynomials are equal
// iff their term maps are equal.
class Poly {
 public:
  using Monomial = std::map<std::string, unsigned>;

  Poly() = default;  // zero
  static Poly constant(Rat c);
  static Poly variable(const std::string& name);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly pow(unsigned n) const;

  bool is_zero() const { return terms_.empty(); }
  std::optional<Rat> as_constant() const;
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  std::string str() const;  // diagnostics, e.g. "2*a*b^2 - 1/2"

 private:
  std::map<Monomial, Rat> terms_;
  void add_term(const Monomial& m, const Rat& c);
};

// A quotient of polynomials; den is never the zero polynomial. Fractions
// are not reduced: equality is decided by cross-multiplication.
struct RationalFn {
  Poly num;
  Poly den;  // nonzero
};

// Normal form of an arithmetic expression in the polynomial-over-Q fragment
// (literals, variables, -, +, *, and '/' ). Division by an expression whose
// normal form is the zero polynomial is a GclError; division by nonconstant
// polynomials is legal but equality then holds only where they do not vanish
// (reported by callers as a side condition). Throws NonPolynomial outside
// the fragment.
RationalFn to_rational_fn(const ExprPtr& e);

// lhs = rhs as rational functions (cross-multiplied polynomial identity).
bool normalizes_equal(const RationalFn& lhs, const RationalFn& rhs);

}  // namespace gclwb
