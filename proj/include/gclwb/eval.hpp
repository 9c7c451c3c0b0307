#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>

#include "gclwb/ast.hpp"

namespace gclwb {

using State = std::map<std::string, Int>;

enum class FaultKind { NoTrueGuard, DivisionByZero };

struct Terminated { State state; };
struct Aborted { FaultKind reason; };
struct BudgetExceeded {};

struct Outcome {
  std::variant<Terminated, Aborted, BudgetExceeded> v;

  bool terminated() const { return std::holds_alternative<Terminated>(v); }
  const State* state() const {
    auto* t = std::get_if<Terminated>(&v);
    return t ? &t->state : nullptr;
  }
};

bool operator<(const Outcome& a, const Outcome& b);
bool operator==(const Outcome& a, const Outcome& b);
std::string to_string(const Outcome& o);

// Signals a division-by-zero fault during strict expression evaluation.
class EvalFault : public GclError {
  using GclError::GclError;
};

// Strict evaluation: both operands of every connective are evaluated, so a
// fault in either side surfaces regardless of the other's value. Throws
// EvalFault on div/mod by zero; TypeError only on malformed input.
using Value = std::variant<Int, bool>;
Value eval_expr(const ExprPtr& e, const State& s);
Int eval_int(const ExprPtr& e, const State& s);
bool eval_bool(const ExprPtr& e, const State& s);

// Demonic all-paths semantics: the set of outcomes over every resolution of
// guarded choice. Each path is truncated to BudgetExceeded after `budget`
// atomic steps, where a step is a primitive statement or a guard-evaluation
// set; charging guard evaluations keeps the proxy total (a loop body made
// only of guard evaluations would otherwise livelock at constant budget).
std::set<Outcome> run_all(const Program& p, const State& s0, long budget = 10000);

// Exploration without the visited-configuration memo; exponential on
// diamond-shaped choice, kept for differential testing.
std::set<Outcome> run_all_naive(const Program& p, const State& s0, long budget = 10000);

// One arbitrary resolution, reproducible: enabled-guard picks come from a
// fixed 64-bit linear congruential generator seeded by `seed`.
Outcome run_one(const Program& p, const State& s0, long budget = 10000, std::uint64_t seed = 0);

// Checks that s0's domain is exactly the declaration list.
void check_initial_state(const Program& p, const State& s0);

}  // namespace gclwb
