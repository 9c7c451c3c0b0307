#include "gclwb/poly.hpp"

namespace gclwb {

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::constant(Rat c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.add_term({{name, 1}}, 1);
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, Rat(-c));
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rat(-c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      r.add_term(m, Rat(c1 * c2));
    }
  }
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r = constant(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::optional<Rat> Poly::as_constant() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat coeff = c;
    if (first) {
      if (coeff < 0) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += coeff < 0 ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool need_coeff = m.empty() || coeff != 1;
    if (need_coeff) out += coeff.str();
    bool need_star = need_coeff;
    for (const auto& [v, e] : m) {
      if (need_star) out += "*";
      need_star = true;
      out += v;
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

RationalFn to_rational_fn(const ExprPtr& e) {
  return std::visit(
      [&](const auto& x) -> RationalFn {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return {Poly::constant(Rat(x.value)), Poly::constant(1)};
        } else if constexpr (std::is_same_v<T, Var>) {
          return {Poly::variable(x.name), Poly::constant(1)};
        } else if constexpr (std::is_same_v<T, Neg>) {
          RationalFn a = to_rational_fn(x.arg);
          return {-a.num, a.den};
        } else if constexpr (std::is_same_v<T, Arith>) {
          RationalFn a = to_rational_fn(x.lhs);
          RationalFn b = to_rational_fn(x.rhs);
          switch (x.op) {
            case ArithOp::Add: return {a.num * b.den + b.num * a.den, a.den * b.den};
            case ArithOp::Sub: return {a.num * b.den - b.num * a.den, a.den * b.den};
            case ArithOp::Mul: return {a.num * b.num, a.den * b.den};
            case ArithOp::RatDiv:
              if (b.num.is_zero()) throw GclError(e->pos, "division by zero in proof expression");
              return {a.num * b.den, a.den * b.num};
            case ArithOp::Div:
            case ArithOp::Mod:
              throw NonPolynomial(e->pos, "integer div/mod is not polynomial");
          }
          throw NonPolynomial(e->pos, "bad operator");
        } else if constexpr (std::is_same_v<T, BoolLit> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, Cmp> || std::is_same_v<T, Conn>) {
          throw NonPolynomial(e->pos, "boolean construct is not polynomial");
        } else if constexpr (std::is_same_v<T, Gcd>) {
          throw NonPolynomial(e->pos, "gcd is not polynomial");
        } else {
          static_assert(std::is_same_v<T, Abs>);
          throw NonPolynomial(e->pos, "abs is not polynomial");
        }
      },
      e->node);
}

bool normalizes_equal(const RationalFn& lhs, const RationalFn& rhs) {
  return (lhs.num * rhs.den - rhs.num * lhs.den).is_zero();
}

}  // namespace gclwb
