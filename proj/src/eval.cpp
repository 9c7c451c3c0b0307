#include "gclwb/eval.hpp"

#include <tuple>

namespace gclwb {

bool operator<(const Outcome& a, const Outcome& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index();
  if (auto* ta = std::get_if<Terminated>(&a.v))
    return ta->state < std::get<Terminated>(b.v).state;
  if (auto* aa = std::get_if<Aborted>(&a.v))
    return aa->reason < std::get<Aborted>(b.v).reason;
  return false;
}

bool operator==(const Outcome& a, const Outcome& b) { return !(a < b) && !(b < a); }

std::string to_string(const Outcome& o) {
  if (auto* t = std::get_if<Terminated>(&o.v)) {
    std::string out = "Terminated {";
    bool first = true;
    for (const auto& [name, value] : t->state) {
      if (!first) out += ", ";
      first = false;
      out += name + ":" + value.str();
    }
    return out + "}";
  }
  if (auto* a = std::get_if<Aborted>(&o.v))
    return a->reason == FaultKind::NoTrueGuard ? "Aborted (no-true-guard)"
                                               : "Aborted (division-by-zero)";
  return "BudgetExceeded";
}

Value eval_expr(const ExprPtr& e, const State& s) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto it = s.find(x.name);
          if (it == s.end()) throw TypeError(e->pos, "unbound variable '" + x.name + "'");
          return it->second;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return Int(-eval_int(x.arg, s));
        } else if constexpr (std::is_same_v<T, Not>) {
          return !eval_bool(x.arg, s);
        } else if constexpr (std::is_same_v<T, Arith>) {
          Int a = eval_int(x.lhs, s);
          Int b = eval_int(x.rhs, s);
          switch (x.op) {
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
          throw TypeError(e->pos, "bad operator");
        } else if constexpr (std::is_same_v<T, Cmp>) {
          Int a = eval_int(x.lhs, s);
          Int b = eval_int(x.rhs, s);
          switch (x.op) {
            case CmpOp::Eq: return a == b;
            case CmpOp::Ne: return a != b;
            case CmpOp::Lt: return a < b;
            case CmpOp::Le: return a <= b;
            case CmpOp::Gt: return a > b;
            case CmpOp::Ge: return a >= b;
          }
          throw TypeError(e->pos, "bad comparison");
        } else if constexpr (std::is_same_v<T, Conn>) {
          bool a = eval_bool(x.lhs, s);
          bool b = eval_bool(x.rhs, s);
          switch (x.op) {
            case BoolConn::And: return a && b;
            case BoolConn::Or: return a || b;
            case BoolConn::Implies: return !a || b;
            case BoolConn::Iff: return a == b;
          }
          throw TypeError(e->pos, "bad connective");
        } else if constexpr (std::is_same_v<T, Gcd>) {
          return gcd_int(eval_int(x.lhs, s), eval_int(x.rhs, s));
        } else {
          static_assert(std::is_same_v<T, Abs>);
          return abs_int(eval_int(x.arg, s));
        }
      },
      e->node);
}

Int eval_int(const ExprPtr& e, const State& s) {
  Value v = eval_expr(e, s);
  if (auto* i = std::get_if<Int>(&v)) return *i;
  throw TypeError(e->pos, "expected an integer expression");
}

bool eval_bool(const ExprPtr& e, const State& s) {
  Value v = eval_expr(e, s);
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw TypeError(e->pos, "expected a boolean expression");
}

void check_initial_state(const Program& p, const State& s0) {
  std::set<std::string> declared(p.vars.begin(), p.vars.end());
  std::set<std::string> given;
  for (const auto& [name, _] : s0) given.insert(name);
  if (declared != given)
    throw TypeError({}, "initial state must bind exactly the declared variables");
}

namespace {

// Remaining work is a stack of statements (top = back); a configuration is
// (stack, state, fuel). Executing a primitive with fuel 0 truncates the path.
struct Explorer {
  std::set<Outcome> results;
  bool memoize;
  // visited key: statement identity stack + state + fuel
  std::set<std::tuple<std::vector<const Stmt*>, State, long>> visited;

  void go(std::vector<StmtPtr> stack, State st, long fuel) {
    if (memoize) {
      std::vector<const Stmt*> ids;
      ids.reserve(stack.size());
      for (const auto& s : stack) ids.push_back(s.get());
      if (!visited.emplace(std::move(ids), st, fuel).second) return;
    }
    if (stack.empty()) {
      results.insert(Outcome{Terminated{std::move(st)}});
      return;
    }
    StmtPtr s = stack.back();
    stack.pop_back();
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Skip>) {
            if (fuel == 0) {
              results.insert(Outcome{BudgetExceeded{}});
              return;
            }
            go(std::move(stack), std::move(st), fuel - 1);
          } else if constexpr (std::is_same_v<T, AbortStmt>) {
            // abort behaves as the empty alternation "if fi"
            results.insert(Outcome{Aborted{FaultKind::NoTrueGuard}});
          } else if constexpr (std::is_same_v<T, Assign>) {
            if (fuel == 0) {
              results.insert(Outcome{BudgetExceeded{}});
              return;
            }
            Int v;
            try {
              v = eval_int(x.value, st);
            } catch (const EvalFault&) {
              results.insert(Outcome{Aborted{FaultKind::DivisionByZero}});
              return;
            }
            st[x.target] = std::move(v);
            go(std::move(stack), std::move(st), fuel - 1);
          } else if constexpr (std::is_same_v<T, MultiAssign>) {
            if (fuel == 0) {
              results.insert(Outcome{BudgetExceeded{}});
              return;
            }
            std::vector<Int> vals;
            try {
              for (const auto& v : x.values) vals.push_back(eval_int(v, st));
            } catch (const EvalFault&) {
              results.insert(Outcome{Aborted{FaultKind::DivisionByZero}});
              return;
            }
            for (std::size_t i = 0; i < x.targets.size(); ++i)
              st[x.targets[i]] = std::move(vals[i]);
            go(std::move(stack), std::move(st), fuel - 1);
          } else if constexpr (std::is_same_v<T, Seq>) {
            for (auto it = x.steps.rbegin(); it != x.steps.rend(); ++it) stack.push_back(*it);
            go(std::move(stack), std::move(st), fuel);
          } else if constexpr (std::is_same_v<T, IfFi>) {
            if (fuel == 0) {
              results.insert(Outcome{BudgetExceeded{}});
              return;
            }
            std::vector<std::size_t> enabled;
            if (!eval_guards(x.arms, st, enabled)) return;
            if (enabled.empty()) {
              results.insert(Outcome{Aborted{FaultKind::NoTrueGuard}});
              return;
            }
            for (std::size_t i : enabled) {
              auto branch = stack;
              branch.push_back(x.arms[i].body);
              go(std::move(branch), st, fuel - 1);
            }
          } else {
            static_assert(std::is_same_v<T, DoOd>);
            if (fuel == 0) {
              results.insert(Outcome{BudgetExceeded{}});
              return;
            }
            std::vector<std::size_t> enabled;
            if (!eval_guards(x.arms, st, enabled)) return;
            if (enabled.empty()) {
              go(std::move(stack), std::move(st), fuel - 1);  // exit still evaluated the guards
              return;
            }
            for (std::size_t i : enabled) {
              auto branch = stack;
              branch.push_back(s);  // re-enter the loop after the body
              branch.push_back(x.arms[i].body);
              go(std::move(branch), st, fuel - 1);
            }
          }
        },
        s->node);
  }

  // false = a guard faulted and the path is already recorded as Aborted.
  bool eval_guards(const std::vector<GuardedCommand>& arms, const State& st,
                   std::vector<std::size_t>& enabled) {
    try {
      for (std::size_t i = 0; i < arms.size(); ++i)
        if (eval_bool(arms[i].guard, st)) enabled.push_back(i);
    } catch (const EvalFault&) {
      results.insert(Outcome{Aborted{FaultKind::DivisionByZero}});
      return false;
    }
    return true;
  }
};

std::set<Outcome> run_all_impl(const Program& p, const State& s0, long budget, bool memoize) {
  if (budget < 1) throw TypeError({}, "budget must be >= 1");
  check_initial_state(p, s0);
  Explorer ex;
  ex.memoize = memoize;
  ex.go({p.body}, s0, budget);
  return std::move(ex.results);
}

}  // namespace

std::set<Outcome> run_all(const Program& p, const State& s0, long budget) {
  return run_all_impl(p, s0, budget, true);
}

std::set<Outcome> run_all_naive(const Program& p, const State& s0, long budget) {
  return run_all_impl(p, s0, budget, false);
}

namespace {

struct Lcg {
  std::uint64_t state;
  // Knuth's MMIX multiplier; fixed here so seeds replay identically anywhere.
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

}  // namespace

Outcome run_one(const Program& p, const State& s0, long budget, std::uint64_t seed) {
  if (budget < 1) throw TypeError({}, "budget must be >= 1");
  check_initial_state(p, s0);
  Lcg rng{seed ^ 0x9e3779b97f4a7c15ULL};

  std::vector<StmtPtr> stack{p.body};
  State st = s0;
  long fuel = budget;

  while (!stack.empty()) {
    StmtPtr s = stack.back();
    stack.pop_back();
    auto result = std::visit(
        [&](const auto& x) -> std::optional<Outcome> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Skip>) {
            if (fuel-- == 0) return Outcome{BudgetExceeded{}};
          } else if constexpr (std::is_same_v<T, AbortStmt>) {
            return Outcome{Aborted{FaultKind::NoTrueGuard}};
          } else if constexpr (std::is_same_v<T, Assign>) {
            if (fuel-- == 0) return Outcome{BudgetExceeded{}};
            try {
              st[x.target] = eval_int(x.value, st);
            } catch (const EvalFault&) {
              return Outcome{Aborted{FaultKind::DivisionByZero}};
            }
          } else if constexpr (std::is_same_v<T, MultiAssign>) {
            if (fuel-- == 0) return Outcome{BudgetExceeded{}};
            try {
              std::vector<Int> vals;
              for (const auto& v : x.values) vals.push_back(eval_int(v, st));
              for (std::size_t i = 0; i < x.targets.size(); ++i)
                st[x.targets[i]] = std::move(vals[i]);
            } catch (const EvalFault&) {
              return Outcome{Aborted{FaultKind::DivisionByZero}};
            }
          } else if constexpr (std::is_same_v<T, Seq>) {
            for (auto it = x.steps.rbegin(); it != x.steps.rend(); ++it) stack.push_back(*it);
          } else if constexpr (std::is_same_v<T, IfFi>) {
            if (fuel-- == 0) return Outcome{BudgetExceeded{}};
            std::vector<std::size_t> enabled;
            try {
              for (std::size_t i = 0; i < x.arms.size(); ++i)
                if (eval_bool(x.arms[i].guard, st)) enabled.push_back(i);
            } catch (const EvalFault&) {
              return Outcome{Aborted{FaultKind::DivisionByZero}};
            }
            if (enabled.empty()) return Outcome{Aborted{FaultKind::NoTrueGuard}};
            stack.push_back(x.arms[enabled[rng.pick(enabled.size())]].body);
          } else {
            static_assert(std::is_same_v<T, DoOd>);
            if (fuel-- == 0) return Outcome{BudgetExceeded{}};
            std::vector<std::size_t> enabled;
            try {
              for (std::size_t i = 0; i < x.arms.size(); ++i)
                if (eval_bool(x.arms[i].guard, st)) enabled.push_back(i);
            } catch (const EvalFault&) {
              return Outcome{Aborted{FaultKind::DivisionByZero}};
            }
            if (!enabled.empty()) {
              stack.push_back(s);
              stack.push_back(x.arms[enabled[rng.pick(enabled.size())]].body);
            }
          }
          return std::nullopt;
        },
        s->node);
    if (result) return *result;
  }
  return Outcome{Terminated{std::move(st)}};
}

}  // namespace gclwb
