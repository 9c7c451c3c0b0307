#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gclwb/ast.hpp"
#include "gclwb/check.hpp"

namespace gclwb {

enum class Relation { Eq, Le, Ge, Lt, Gt, Implies, Iff };

std::string relation_symbol(Relation r);

// r1 then r2; nullopt when the pair has no composite (e.g. <= then >=).
// = is the identity on arithmetic chains, <=> on logical ones; the two
// classes do not mix.
std::optional<Relation> compose(Relation r1, Relation r2);

struct ProofStep {
  ExprPtr lhs;
  Relation rel;
  ExprPtr rhs;
  std::string hint;
  int line = 0;  // of the relation
};

struct ProofChain {
  std::vector<std::pair<std::string, ExprPtr>> definitions;  // let name = expr
  std::vector<ProofStep> steps;                              // nonempty
  Relation conclusion;                                       // composed over steps
};

// Proof text: optional "let name = expr" lines, then a chain either stacked
//     expr
//   REL { hint }
//     expr
// or inline "expr REL { hint } expr [...]". Adjacent expressions must match
// verbatim ("broken chain" otherwise). '#' starts a comment.
ProofChain parse_proof(std::string_view text);

// Stacked-format rendering; parse_proof(print_proof(c)) reproduces c.
std::string print_proof(const ProofChain& chain);

enum class StepStatus { ValidByNormalization, ValidOnDomain, Invalid, Unchecked };

struct StepVerdict {
  int index;  // 1-based
  StepStatus status;
  std::map<std::string, Int> counterexample;  // when Invalid
  std::string note;  // e.g. a nonvanishing side condition
};

// Mechanized hints: "algebra" decides = by polynomial normalization over Q;
// "definition of <name>" substitutes the named let-binding first. Everything
// else is checked pointwise over `dom` when given, else left Unchecked.
StepVerdict check_step(const ProofStep& step, int index,
                       const std::vector<std::pair<std::string, ExprPtr>>& definitions,
                       const std::optional<CheckDomain>& dom);

struct ChainVerdict {
  std::vector<StepVerdict> steps;
  Relation conclusion;
  bool valid;  // every step certified and the composition defined
};

ChainVerdict check_chain(const ProofChain& chain, const std::optional<CheckDomain>& dom);

// Exact evaluation of proof expressions (admits '/') under an integer or
// rational assignment. Integer-only operators (div, mod, gcd, abs) require
// integer operands. Throws EvalFault on division by zero.
using RatValue = std::variant<Rat, bool>;
RatValue eval_proof_expr(const ExprPtr& e, const std::map<std::string, Rat>& assignment);

}  // namespace gclwb
