#pragma once

#include <string>
#include <vector>

#include "gclwb/ast.hpp"

namespace gclwb {

// Definedness of an expression: conjunction of "divisor != 0" for every
// div/mod it contains, placed left of the use so a short-circuit reading
// of the resulting formula never evaluates an undefined subterm.
ExprPtr defined(const ExprPtr& e);

// Weakest precondition of a loop-free statement. Rules:
//   wp(skip, R)    = R
//   wp(abort, R)   = false
//   wp(x := E, R)  = D(E) and R[x\E]
//   wp(S1; S2, R)  = wp(S1, wp(S2, R))
//   wp(if [] gi -> Si fi, R) = /\ D(gi) and (\/ gi) and /\ (gi => wp(Si, R))
// Simultaneous assignment substitutes all targets at once. Throws TypeError
// if the statement contains a do-od (use verify_loop).
ExprPtr wp(const StmtPtr& s, const ExprPtr& post);

struct VerificationCondition {
  enum class Kind {
    PreEstablishesInvariant,
    InvariantPreserved,
    PostconditionOnExit,
    BoundPositive,
    BoundDecreases,
    IfGuardCoverage,  // coverage travels inside the wp if-rule; listed for completeness
  };
  Kind kind;
  std::string label;  // e.g. "invariant-preserved[2]"
  ExprPtr formula;
};

// Proof obligations for a program whose body is loop-free initialization
// followed by a single annotated do-od. Emits, for a loop with guards
// g1..gn and bodies S1..Sn:
//   pre-establishes-invariant   pre => wp(init, inv)
//   invariant-preserved[i]      inv and gi => wp(Si, inv)        (one per guard)
//   postcondition-on-exit       inv and not(g1 or ... or gn) => post
//   bound-positive              inv and (g1 or ... or gn) => bound > 0
//   bound-decreases             inv and bound = T => /\ (gi => wp(Si, bound < T))
// with T a fresh logical variable snapshotting the bound.
std::vector<VerificationCondition> verify_loop(const Program& p);

// The fresh snapshot variable chosen by verify_loop for the same program.
std::string bound_snapshot_name(const Program& p);

}  // namespace gclwb
