#include "gclwb/proof.hpp"

#include <algorithm>

#include "gclwb/parser.hpp"
#include "gclwb/poly.hpp"
#include "gclwb/printer.hpp"

namespace gclwb {

std::string relation_symbol(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
    case Relation::Lt: return "<";
    case Relation::Gt: return ">";
    case Relation::Implies: return "=>";
    case Relation::Iff: return "<=>";
  }
  return "?";
}

namespace {

bool is_logical_rel(Relation r) { return r == Relation::Implies || r == Relation::Iff; }

}  // namespace

std::optional<Relation> compose(Relation r1, Relation r2) {
  if (is_logical_rel(r1) != is_logical_rel(r2)) {
    // = never crosses into logical chains and <=> never into arithmetic ones
    return std::nullopt;
  }
  if (is_logical_rel(r1)) {
    if (r1 == Relation::Iff && r2 == Relation::Iff) return Relation::Iff;
    return Relation::Implies;
  }
  if (r1 == Relation::Eq) return r2;
  if (r2 == Relation::Eq) return r1;
  auto dir = [](Relation r) { return r == Relation::Le || r == Relation::Lt ? -1 : 1; };
  if (r1 == r2) return r1;
  if (dir(r1) != dir(r2)) return std::nullopt;  // <= then >= has no composite
  return dir(r1) < 0 ? Relation::Lt : Relation::Gt;  // mixing weak and strict
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RelSpelling {
  std::string_view text;
  Relation rel;
};

// Longest spellings first so "<=>" wins over "<=" wins over "<".
const RelSpelling kRelSpellings[] = {
    {"<=>", Relation::Iff},    {"⇔", Relation::Iff},
    {"=>", Relation::Implies}, {"⇒", Relation::Implies},
    {"<=", Relation::Le},      {"≤", Relation::Le},
    {">=", Relation::Ge},      {"≥", Relation::Ge},
    {"=", Relation::Eq},       {"<", Relation::Lt},
    {">", Relation::Gt},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

struct ExprItem {
  ExprPtr expr;
  std::string text;
  int line;
};
struct RelItem {
  Relation rel;
  std::string hint;
  int line;
};
using Item = std::variant<ExprItem, RelItem>;

}  // namespace

ProofChain parse_proof(std::string_view text) {
  ProofChain chain;
  std::vector<Item> items;
  std::set<std::string> defined;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::string_view whole = trim(line);
    if (whole.empty()) continue;

    if (whole.substr(0, 4) == "let ") {
      if (!items.empty())
        throw ParseError({line_no, 1}, "definitions must precede the chain");
      std::string_view rest = trim(whole.substr(4));
      std::size_t eq = rest.find('=');
      if (eq == std::string_view::npos) throw ParseError({line_no, 1}, "expected 'let name = expr'");
      std::string name(trim(rest.substr(0, eq)));
      ExprPtr body = parse_expression(rest.substr(eq + 1), /*allow_rat_div=*/true, line_no);
      for (const auto& v : free_vars(body))
        if (defined.count(v) || v == name)
          throw ParseError({line_no, 1}, "definition body may not mention defined names");
      if (!defined.insert(name).second)
        throw ParseError({line_no, 1}, "duplicate definition of '" + name + "'");
      chain.definitions.emplace_back(std::move(name), std::move(body));
      continue;
    }

    // Split the line into expression chunks and relation-plus-hint pairs.
    std::string buf;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] != '{') {
        buf += line[i++];
        continue;
      }
      std::size_t close = line.find('}', i);
      if (close == std::string_view::npos)
        throw ParseError({line_no, static_cast<int>(i) + 1}, "unterminated hint '{'");
      std::string hint(trim(line.substr(i + 1, close - i - 1)));

      std::string_view before = trim(std::string_view(buf));
      std::optional<Relation> rel;
      for (const auto& sp : kRelSpellings) {
        if (before.size() >= sp.text.size() &&
            before.substr(before.size() - sp.text.size()) == sp.text) {
          rel = sp.rel;
          before.remove_suffix(sp.text.size());
          break;
        }
      }
      if (!rel)
        throw ParseError({line_no, static_cast<int>(i) + 1},
                         "a hint must follow a relation symbol");
      before = trim(before);
      if (!before.empty())
        items.push_back(ExprItem{parse_expression(before, true, line_no), std::string(before),
                                 line_no});
      items.push_back(RelItem{*rel, std::move(hint), line_no});
      buf.clear();
      i = close + 1;
    }
    std::string_view tail = trim(std::string_view(buf));
    if (!tail.empty())
      items.push_back(ExprItem{parse_expression(tail, true, line_no), std::string(tail), line_no});
  }

  // Fold: EXPR (REL EXPR)*, merging verbatim-repeated intermediates.
  std::vector<Item> folded;
  for (auto& item : items) {
    if (!folded.empty() && std::holds_alternative<ExprItem>(folded.back()) &&
        std::holds_alternative<ExprItem>(item)) {
      auto& prev = std::get<ExprItem>(folded.back());
      auto& cur = std::get<ExprItem>(item);
      if (!equal(prev.expr, cur.expr))
        throw ParseError({cur.line, 1},
                         "broken chain: expression does not match the previous step's result");
      continue;  // the shared intermediate, written twice
    }
    folded.push_back(std::move(item));
  }

  if (folded.empty()) throw ParseError({line_no, 1}, "empty proof");
  if (!std::holds_alternative<ExprItem>(folded.front()))
    throw ParseError({std::get<RelItem>(folded.front()).line, 1},
                     "a chain starts with an expression");
  if (folded.size() < 3 || folded.size() % 2 == 0)
    throw ParseError({line_no, 1}, "a chain needs expr REL expr [...]");

  for (std::size_t k = 1; k + 1 < folded.size(); k += 2) {
    auto* rel = std::get_if<RelItem>(&folded[k]);
    auto* rhs = std::get_if<ExprItem>(&folded[k + 1]);
    if (!rel || !rhs)
      throw ParseError({line_no, 1}, "expressions and relations must alternate");
    chain.steps.push_back(ProofStep{std::get<ExprItem>(folded[k - 1]).expr, rel->rel, rhs->expr,
                                    rel->hint, rel->line});
  }

  Relation conclusion = chain.steps[0].rel;
  for (std::size_t k = 1; k < chain.steps.size(); ++k) {
    auto c = compose(conclusion, chain.steps[k].rel);
    if (!c)
      throw ParseError({chain.steps[k].line, 1},
                       "relations '" + relation_symbol(conclusion) + "' and '" +
                           relation_symbol(chain.steps[k].rel) + "' do not compose");
    conclusion = *c;
  }
  chain.conclusion = conclusion;
  return chain;
}

std::string print_proof(const ProofChain& chain) {
  std::string out;
  for (const auto& [name, body] : chain.definitions)
    out += "let " + name + " = " + print_expr(body) + "\n";
  out += "  " + print_expr(chain.steps.front().lhs) + "\n";
  for (const auto& step : chain.steps) {
    std::string sym = relation_symbol(step.rel);
    out += sym + std::string(sym.size() < 3 ? 3 - sym.size() : 1, ' ') + " { " + step.hint +
           " }\n";
    out += "  " + print_expr(step.rhs) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

Rat as_rat(const RatValue& v, const ExprPtr& e) {
  if (auto* r = std::get_if<Rat>(&v)) return *r;
  throw TypeError(e->pos, "expected an arithmetic expression");
}

bool as_bool(const RatValue& v, const ExprPtr& e) {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw TypeError(e->pos, "expected a boolean expression");
}

Int integer_of(const Rat& r, const ExprPtr& e) {
  if (boost::multiprecision::denominator(r) != 1)
    throw TypeError(e->pos, "integer operator applied to a non-integer value");
  return boost::multiprecision::numerator(r);
}

}  // namespace

RatValue eval_proof_expr(const ExprPtr& e, const std::map<std::string, Rat>& a) {
  return std::visit(
      [&](const auto& x) -> RatValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Rat(x.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto it = a.find(x.name);
          if (it == a.end()) throw TypeError(e->pos, "unbound variable '" + x.name + "'");
          return it->second;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return Rat(-as_rat(eval_proof_expr(x.arg, a), x.arg));
        } else if constexpr (std::is_same_v<T, Not>) {
          return !as_bool(eval_proof_expr(x.arg, a), x.arg);
        } else if constexpr (std::is_same_v<T, Arith>) {
          Rat l = as_rat(eval_proof_expr(x.lhs, a), x.lhs);
          Rat r = as_rat(eval_proof_expr(x.rhs, a), x.rhs);
          switch (x.op) {
            case ArithOp::Add: return Rat(l + r);
            case ArithOp::Sub: return Rat(l - r);
            case ArithOp::Mul: return Rat(l * r);
            case ArithOp::RatDiv:
              if (r == 0) throw EvalFault(e->pos, "division by zero");
              return Rat(l / r);
            case ArithOp::Div: {
              Int d = integer_of(r, x.rhs);
              if (d == 0) throw EvalFault(e->pos, "division by zero");
              return Rat(euclid_div(integer_of(l, x.lhs), d));
            }
            case ArithOp::Mod: {
              Int d = integer_of(r, x.rhs);
              if (d == 0) throw EvalFault(e->pos, "division by zero");
              return Rat(euclid_mod(integer_of(l, x.lhs), d));
            }
          }
          throw TypeError(e->pos, "bad operator");
        } else if constexpr (std::is_same_v<T, Cmp>) {
          Rat l = as_rat(eval_proof_expr(x.lhs, a), x.lhs);
          Rat r = as_rat(eval_proof_expr(x.rhs, a), x.rhs);
          switch (x.op) {
            case CmpOp::Eq: return l == r;
            case CmpOp::Ne: return l != r;
            case CmpOp::Lt: return l < r;
            case CmpOp::Le: return l <= r;
            case CmpOp::Gt: return l > r;
            case CmpOp::Ge: return l >= r;
          }
          throw TypeError(e->pos, "bad comparison");
        } else if constexpr (std::is_same_v<T, Conn>) {
          bool l = as_bool(eval_proof_expr(x.lhs, a), x.lhs);
          bool r = as_bool(eval_proof_expr(x.rhs, a), x.rhs);
          switch (x.op) {
            case BoolConn::And: return l && r;
            case BoolConn::Or: return l || r;
            case BoolConn::Implies: return !l || r;
            case BoolConn::Iff: return l == r;
          }
          throw TypeError(e->pos, "bad connective");
        } else if constexpr (std::is_same_v<T, Gcd>) {
          return Rat(gcd_int(integer_of(as_rat(eval_proof_expr(x.lhs, a), x.lhs), x.lhs),
                             integer_of(as_rat(eval_proof_expr(x.rhs, a), x.rhs), x.rhs)));
        } else {
          static_assert(std::is_same_v<T, Abs>);
          return Rat(abs_int(integer_of(as_rat(eval_proof_expr(x.arg, a), x.arg), x.arg)));
        }
      },
      e->node);
}

namespace {

// Relation between two sides at one assignment; EvalFault propagates.
bool holds_at(const ProofStep& step, const std::map<std::string, Rat>& a) {
  if (is_logical_rel(step.rel)) {
    bool l = as_bool(eval_proof_expr(step.lhs, a), step.lhs);
    bool r = as_bool(eval_proof_expr(step.rhs, a), step.rhs);
    return step.rel == Relation::Implies ? (!l || r) : l == r;
  }
  Rat l = as_rat(eval_proof_expr(step.lhs, a), step.lhs);
  Rat r = as_rat(eval_proof_expr(step.rhs, a), step.rhs);
  switch (step.rel) {
    case Relation::Eq: return l == r;
    case Relation::Le: return l <= r;
    case Relation::Ge: return l >= r;
    case Relation::Lt: return l < r;
    case Relation::Gt: return l > r;
    default: return false;
  }
}

std::set<std::string> step_vars(const ProofStep& step) {
  std::set<std::string> vars = free_vars(step.lhs);
  collect_vars(step.rhs, vars);
  return vars;
}

// Least falsifying integer assignment: boxes {0..k}^n for growing k,
// lexicographic within each box, skipping tuples already covered.
std::optional<std::map<std::string, Int>> search_counterexample(const ProofStep& step) {
  std::vector<std::string> names(step_vars(step).begin(), step_vars(step).end());
  const int kMaxSide = 12;
  for (int k = 0; k <= kMaxSide; ++k) {
    std::vector<int> tuple(names.size(), 0);
    for (;;) {
      bool on_shell = names.empty() ? k == 0
                                    : *std::max_element(tuple.begin(), tuple.end()) == k;
      if (on_shell) {
        std::map<std::string, Rat> a;
        for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = tuple[i];
        try {
          if (!holds_at(step, a)) {
            std::map<std::string, Int> cex;
            for (std::size_t i = 0; i < names.size(); ++i) cex[names[i]] = tuple[i];
            return cex;
          }
        } catch (const EvalFault&) {
          // a vanishing denominator cannot witness anything
        }
      }
      std::size_t j = names.size();
      while (j-- > 0) {
        if (tuple[j] < k) {
          ++tuple[j];
          std::fill(tuple.begin() + static_cast<long>(j) + 1, tuple.end(), 0);
          break;
        }
      }
      if (j == static_cast<std::size_t>(-1)) break;
      if (names.empty()) break;
    }
    if (names.empty()) break;
  }
  return std::nullopt;
}

struct DomainSweep {
  std::vector<std::string> names;
  std::vector<Interval> ivs;
  std::map<std::string, Rat> assignment;

  explicit DomainSweep(const CheckDomain& dom, const std::set<std::string>& vars) {
    for (const auto& v : vars) {
      auto it = dom.find(v);
      if (it == dom.end()) throw CheckError({}, "no interval for variable '" + v + "'");
      names.push_back(v);
      ivs.push_back(it->second);
      assignment[v] = Rat(it->second.lo);
    }
  }

  bool advance() {
    for (std::size_t k = names.size(); k-- > 0;) {
      Rat& v = assignment[names[k]];
      if (v < ivs[k].hi) {
        v += 1;
        return true;
      }
      v = Rat(ivs[k].lo);
    }
    return false;
  }
};

StepVerdict domain_verdict(const ProofStep& step, int index, const CheckDomain& dom) {
  StepVerdict verdict{index, StepStatus::ValidOnDomain, {}, ""};
  DomainSweep sweep(dom, step_vars(step));
  do {
    bool ok;
    try {
      ok = holds_at(step, sweep.assignment);
    } catch (const EvalFault& f) {
      throw CheckError(f.diag().pos, "step " + std::to_string(index) +
                                         " undefined on the domain: " + f.diag().message);
    }
    if (!ok) {
      verdict.status = StepStatus::Invalid;
      for (const auto& [name, value] : sweep.assignment)
        verdict.counterexample[name] = boost::multiprecision::numerator(value);
      return verdict;
    }
  } while (sweep.advance());
  return verdict;
}

}  // namespace

StepVerdict check_step(const ProofStep& step, int index,
                       const std::vector<std::pair<std::string, ExprPtr>>& definitions,
                       const std::optional<CheckDomain>& dom) {
  std::string hint = step.hint;
  bool algebra = hint.substr(0, 7) == "algebra" &&
                 (hint.size() == 7 || hint[7] == ' ' || hint[7] == ',' || hint[7] == ';');
  std::string def_name;
  const std::string kDefPrefix = "definition of ";
  if (hint.substr(0, kDefPrefix.size()) == kDefPrefix)
    def_name = std::string(trim(std::string_view(hint).substr(kDefPrefix.size())));

  if (algebra || !def_name.empty()) {
    ProofStep mech = step;
    std::string note;
    if (!def_name.empty()) {
      const ExprPtr* body = nullptr;
      for (const auto& [name, b] : definitions)
        if (name == def_name) body = &b;
      if (!body)
        throw CheckError({step.line, 1}, "hint names '" + def_name + "' but there is no such let");
      mech.lhs = subst(step.lhs, def_name, *body);
      mech.rhs = subst(step.rhs, def_name, *body);
    }
    if (step.rel == Relation::Eq) {
      try {
        RationalFn l = to_rational_fn(mech.lhs);
        RationalFn r = to_rational_fn(mech.rhs);
        if (normalizes_equal(l, r)) {
          StepVerdict v{index, StepStatus::ValidByNormalization, {}, ""};
          if (!l.den.as_constant() || !r.den.as_constant()) {
            std::string conds;
            if (!l.den.as_constant()) conds = l.den.str() + " != 0";
            if (!r.den.as_constant())
              conds += (conds.empty() ? "" : " and ") + r.den.str() + " != 0";
            v.note = "where " + conds;
          }
          return v;
        }
        StepVerdict v{index, StepStatus::Invalid, {}, "normal forms differ"};
        // Hunt on the mechanized sides, so def-substituted witnesses
        // respect the let-binding.
        if (auto cex = search_counterexample(mech)) v.counterexample = *cex;
        return v;
      } catch (const NonPolynomial&) {
        // gcd/abs/div/mod under {algebra}: decide on the domain instead
      }
    }
  }

  if (dom) return domain_verdict(step, index, *dom);
  return StepVerdict{index, StepStatus::Unchecked, {}, "hint not mechanizable"};
}

ChainVerdict check_chain(const ProofChain& chain, const std::optional<CheckDomain>& dom) {
  ChainVerdict verdict{{}, chain.conclusion, true};
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    StepVerdict v = check_step(chain.steps[i], static_cast<int>(i) + 1, chain.definitions, dom);
    if (v.status != StepStatus::ValidByNormalization && v.status != StepStatus::ValidOnDomain)
      verdict.valid = false;
    verdict.steps.push_back(std::move(v));
  }
  return verdict;
}

}  // namespace gclwb
