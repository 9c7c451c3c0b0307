#include "gclwb/check.hpp"

#include <vector>

namespace gclwb {

CheckDomain parse_domain(const std::string& text) {
  CheckDomain dom;
  std::size_t i = 0;
  auto fail = [&](const std::string& m) { throw CheckError({}, "bad domain '" + text + "': " + m); };
  while (i < text.size()) {
    std::size_t eq = text.find('=', i);
    if (eq == std::string::npos) fail("expected var=lo..hi");
    std::string name = text.substr(i, eq - i);
    std::size_t dots = text.find("..", eq + 1);
    if (dots == std::string::npos) fail("expected '..'");
    std::size_t comma = text.find(',', dots + 2);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    try {
      Int lo(text.substr(eq + 1, dots - eq - 1));
      Int hi(text.substr(dots + 2, end - dots - 2));
      if (name.empty() || lo > hi) fail("empty name or reversed interval");
      dom[name] = {lo, hi};
    } catch (const std::runtime_error&) {
      fail("malformed integer");
    }
    i = comma == std::string::npos ? text.size() : comma + 1;
  }
  if (dom.empty()) fail("no intervals");
  return dom;
}

Int domain_size(const CheckDomain& dom) {
  Int n = 1;
  for (const auto& [_, iv] : dom) n *= iv.hi - iv.lo + 1;
  return n;
}

namespace {

Value eval_sc(const ExprPtr& e, const State& s);

Int eval_sc_int(const ExprPtr& e, const State& s) {
  Value v = eval_sc(e, s);
  if (auto* i = std::get_if<Int>(&v)) return *i;
  throw TypeError(e->pos, "expected an integer expression");
}

bool eval_sc_bool(const ExprPtr& e, const State& s) {
  Value v = eval_sc(e, s);
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw TypeError(e->pos, "expected a boolean expression");
}

Value eval_sc(const ExprPtr& e, const State& s) {
  if (auto* c = std::get_if<Conn>(&e->node)) {
    switch (c->op) {
      case BoolConn::And:
        return eval_sc_bool(c->lhs, s) ? eval_sc_bool(c->rhs, s) : false;
      case BoolConn::Or:
        return eval_sc_bool(c->lhs, s) ? true : eval_sc_bool(c->rhs, s);
      case BoolConn::Implies:
        return eval_sc_bool(c->lhs, s) ? eval_sc_bool(c->rhs, s) : true;
      case BoolConn::Iff:
        return eval_sc_bool(c->lhs, s) == eval_sc_bool(c->rhs, s);
    }
  }
  if (auto* n = std::get_if<Not>(&e->node)) return !eval_sc_bool(n->arg, s);
  if (auto* cmp = std::get_if<Cmp>(&e->node)) {
    Int a = eval_sc_int(cmp->lhs, s);
    Int b = eval_sc_int(cmp->rhs, s);
    switch (cmp->op) {
      case CmpOp::Eq: return a == b;
      case CmpOp::Ne: return a != b;
      case CmpOp::Lt: return a < b;
      case CmpOp::Le: return a <= b;
      case CmpOp::Gt: return a > b;
      case CmpOp::Ge: return a >= b;
    }
  }
  if (auto* ar = std::get_if<Arith>(&e->node)) {
    Int a = eval_sc_int(ar->lhs, s);
    Int b = eval_sc_int(ar->rhs, s);
    switch (ar->op) {
      case ArithOp::Add: return Int(a + b);
      case ArithOp::Sub: return Int(a - b);
      case ArithOp::Mul: return Int(a * b);
      case ArithOp::Div:
        if (b == 0) throw EvalFault(e->pos, "division by zero");
        return euclid_div(a, b);
      case ArithOp::Mod:
        if (b == 0) throw EvalFault(e->pos, "division by zero");
        return euclid_mod(a, b);
      case ArithOp::RatDiv:
        throw TypeError(e->pos, "'/' cannot be evaluated over integers");
    }
  }
  return eval_expr(e, s);  // leaves, neg, gcd, abs
}

struct Sweep {
  std::vector<std::string> names;
  std::vector<Interval> ivs;
  State assignment;

  explicit Sweep(const CheckDomain& dom) {
    for (const auto& [name, iv] : dom) {
      names.push_back(name);
      ivs.push_back(iv);
      assignment[name] = iv.lo;
    }
  }

  // Odometer over the name-sorted tuple; rightmost position moves fastest,
  // giving lexicographic order.
  bool advance() {
    for (std::size_t k = names.size(); k-- > 0;) {
      Int& v = assignment[names[k]];
      if (v < ivs[k].hi) {
        ++v;
        return true;
      }
      v = ivs[k].lo;
    }
    return false;
  }
};

}  // namespace

bool eval_pred(const ExprPtr& e, const State& assignment) {
  return eval_sc_bool(e, assignment);
}

VcResult check_vc(const ExprPtr& formula, const CheckDomain& dom, const CheckOptions& opts) {
  for (const auto& name : free_vars(formula))
    if (!dom.count(name))
      throw CheckError(formula->pos, "no interval for variable '" + name + "'");
  if (domain_size(dom) > opts.cap)
    throw CheckError(formula->pos, "domain cap exceeded (" + domain_size(dom).str() + " > " +
                                       opts.cap.str() + " assignments)");
  Sweep sweep(dom);
  do {
    bool holds;
    try {
      holds = eval_sc_bool(formula, sweep.assignment);
    } catch (const EvalFault& f) {
      throw CheckError(f.diag().pos, "formula undefined on the domain: " + f.diag().message);
    }
    if (!holds) return Counterexample{sweep.assignment};
  } while (sweep.advance());
  return Valid{};
}

Interval value_range(const ExprPtr& e, const CheckDomain& dom, const CheckOptions& opts) {
  CheckDomain restricted;
  for (const auto& name : free_vars(e)) {
    auto it = dom.find(name);
    if (it == dom.end()) throw CheckError(e->pos, "no interval for variable '" + name + "'");
    restricted[name] = it->second;
  }
  if (domain_size(restricted) > opts.cap)
    throw CheckError(e->pos, "domain cap exceeded while ranging an expression");
  Sweep sweep(restricted);
  std::optional<Interval> range;
  do {
    Int v = eval_sc_int(e, sweep.assignment);
    if (!range) {
      range = Interval{v, v};
    } else {
      if (v < range->lo) range->lo = v;
      if (v > range->hi) range->hi = v;
    }
  } while (sweep.advance());
  return *range;
}

}  // namespace gclwb
