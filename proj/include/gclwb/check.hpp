#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "gclwb/ast.hpp"
#include "gclwb/eval.hpp"

namespace gclwb {

class CheckError : public GclError {
  using GclError::GclError;
};

struct Interval {
  Int lo, hi;  // inclusive; lo <= hi
};

// Per-variable inclusive intervals; the product of widths is capped so an
// exhaustive sweep stays desk-scale.
using CheckDomain = std::map<std::string, Interval>;

// Parses "x=1..20,y=-5..5" (used by the CLI and tests).
CheckDomain parse_domain(const std::string& text);

Int domain_size(const CheckDomain& dom);

struct Valid {};
struct Counterexample {
  State assignment;
};
using VcResult = std::variant<Valid, Counterexample>;

inline bool is_valid(const VcResult& r) { return std::holds_alternative<Valid>(r); }

struct CheckOptions {
  Int cap = 10'000'000;  // combined assignments
};

// Exhaustive validity over the domain. Assignments are enumerated in
// lexicographic order of the variable-name-sorted tuple, so the reported
// counterexample is the least one. Connectives and/or/=> are evaluated
// left-to-right with short-circuit, which lets wp's definedness conjuncts
// shield the partial operators they guard; a fault that is still reached
// raises CheckError.
VcResult check_vc(const ExprPtr& formula, const CheckDomain& dom, const CheckOptions& opts = {});

// Short-circuit predicate evaluation used by the checker (exposed for the
// property tests that compare wp against run_all pointwise).
bool eval_pred(const ExprPtr& e, const State& assignment);

// Interval of values `e` takes over the domain, by exhaustive evaluation of
// just the variables `e` mentions. Used to derive the snapshot variable's
// interval when checking bound-decreases.
Interval value_range(const ExprPtr& e, const CheckDomain& dom, const CheckOptions& opts = {});

}  // namespace gclwb
