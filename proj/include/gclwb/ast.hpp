#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gclwb/ints.hpp"

namespace gclwb {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

// Base for every positioned error the front end and checkers raise.
class GclError : public std::runtime_error {
 public:
  GclError(SourcePos pos, const std::string& message)
      : std::runtime_error(format(pos, message)), diag_{pos, message} {}
  const Diagnostic& diag() const { return diag_; }

 private:
  static std::string format(SourcePos pos, const std::string& message);
  Diagnostic diag_;
};

class ParseError : public GclError {
  using GclError::GclError;
};

class TypeError : public GclError {
  using GclError::GclError;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ArithOp { Add, Sub, Mul, Div, Mod, RatDiv };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class BoolConn { And, Or, Implies, Iff };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit { Int value; };
struct BoolLit { bool value; };
struct Var { std::string name; };
struct Neg { ExprPtr arg; };
struct Not { ExprPtr arg; };
struct Arith { ArithOp op; ExprPtr lhs, rhs; };
struct Cmp { CmpOp op; ExprPtr lhs, rhs; };
struct Conn { BoolConn op; ExprPtr lhs, rhs; };
struct Gcd { ExprPtr lhs, rhs; };
struct Abs { ExprPtr arg; };

struct Expr {
  std::variant<IntLit, BoolLit, Var, Neg, Not, Arith, Cmp, Conn, Gcd, Abs> node;
  SourcePos pos;
};

ExprPtr mk_int(Int value, SourcePos pos = {});
ExprPtr mk_bool(bool value, SourcePos pos = {});
ExprPtr mk_var(std::string name, SourcePos pos = {});
ExprPtr mk_neg(ExprPtr arg, SourcePos pos = {});
ExprPtr mk_not(ExprPtr arg, SourcePos pos = {});
ExprPtr mk_arith(ArithOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr mk_cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr mk_conn(BoolConn op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr mk_gcd(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
ExprPtr mk_abs(ExprPtr arg, SourcePos pos = {});

// Constant-folding connective builders; wp output stays readable because
// trivially true definedness conjuncts collapse away.
ExprPtr simp_and(ExprPtr lhs, ExprPtr rhs);
ExprPtr simp_or(ExprPtr lhs, ExprPtr rhs);
ExprPtr simp_implies(ExprPtr lhs, ExprPtr rhs);
ExprPtr simp_not(ExprPtr arg);

bool equal(const ExprPtr& a, const ExprPtr& b);  // structural, positions ignored

void collect_vars(const ExprPtr& e, std::set<std::string>& out);
std::set<std::string> free_vars(const ExprPtr& e);

// Simultaneous substitution of variables by expressions.
ExprPtr subst(const ExprPtr& e, const std::vector<std::pair<std::string, ExprPtr>>& bindings);
ExprPtr subst(const ExprPtr& e, const std::string& name, const ExprPtr& replacement);

// ---------------------------------------------------------------------------
// Statements and programs

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct GuardedCommand {
  ExprPtr guard;
  StmtPtr body;
};

struct LoopSpec {
  ExprPtr invariant;
  ExprPtr bound;
};

struct Skip {};
struct AbortStmt {};
struct Assign { std::string target; ExprPtr value; };
struct MultiAssign { std::vector<std::string> targets; std::vector<ExprPtr> values; };
struct Seq { std::vector<StmtPtr> steps; };  // length >= 2
struct IfFi { std::vector<GuardedCommand> arms; };
struct DoOd { std::vector<GuardedCommand> arms; std::optional<LoopSpec> spec; };

struct Stmt {
  std::variant<Skip, AbortStmt, Assign, MultiAssign, Seq, IfFi, DoOd> node;
  SourcePos pos;
};

StmtPtr mk_skip(SourcePos pos = {});
StmtPtr mk_abort(SourcePos pos = {});
StmtPtr mk_assign(std::string target, ExprPtr value, SourcePos pos = {});
StmtPtr mk_multi_assign(std::vector<std::string> targets, std::vector<ExprPtr> values,
                        SourcePos pos = {});
StmtPtr mk_seq(std::vector<StmtPtr> steps, SourcePos pos = {});
StmtPtr mk_if(std::vector<GuardedCommand> arms, SourcePos pos = {});
StmtPtr mk_do(std::vector<GuardedCommand> arms, std::optional<LoopSpec> spec = {},
              SourcePos pos = {});

bool equal(const StmtPtr& a, const StmtPtr& b);

struct Program {
  std::vector<std::string> vars;
  ExprPtr pre;   // null when unannotated
  ExprPtr post;  // null when unannotated
  StmtPtr body;
};

bool equal(const Program& a, const Program& b);

bool contains_loop(const StmtPtr& s);

// ---------------------------------------------------------------------------
// Static checks

enum class Kind { IntK, BoolK };

// Type of an expression; variables are integers. Logical variables (leading
// capital) are admitted only when allow_logical is set — they stand for
// frozen initial values in annotations and VCs.
Kind check_expr(const ExprPtr& e, const std::set<std::string>& declared, bool allow_logical);

bool is_logical_name(const std::string& name);

// Declaredness + well-typedness of the whole program (body and annotations).
void check_program(const Program& p);

}  // namespace gclwb
