#include "gclwb/ast.hpp"

#include <algorithm>

namespace gclwb {

std::string GclError::format(SourcePos pos, const std::string& message) {
  if (pos.line <= 0) return message;
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

ExprPtr mk_int(Int value, SourcePos pos) {
  return std::make_shared<Expr>(Expr{IntLit{std::move(value)}, pos});
}
ExprPtr mk_bool(bool value, SourcePos pos) {
  return std::make_shared<Expr>(Expr{BoolLit{value}, pos});
}
ExprPtr mk_var(std::string name, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Var{std::move(name)}, pos});
}
ExprPtr mk_neg(ExprPtr arg, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Neg{std::move(arg)}, pos});
}
ExprPtr mk_not(ExprPtr arg, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Not{std::move(arg)}, pos});
}
ExprPtr mk_arith(ArithOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Arith{op, std::move(lhs), std::move(rhs)}, pos});
}
ExprPtr mk_cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Cmp{op, std::move(lhs), std::move(rhs)}, pos});
}
ExprPtr mk_conn(BoolConn op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Conn{op, std::move(lhs), std::move(rhs)}, pos});
}
ExprPtr mk_gcd(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Gcd{std::move(lhs), std::move(rhs)}, pos});
}
ExprPtr mk_abs(ExprPtr arg, SourcePos pos) {
  return std::make_shared<Expr>(Expr{Abs{std::move(arg)}, pos});
}

namespace {

const bool* as_bool_lit(const ExprPtr& e) {
  if (auto* b = std::get_if<BoolLit>(&e->node)) return &b->value;
  return nullptr;
}

}  // namespace

ExprPtr simp_and(ExprPtr lhs, ExprPtr rhs) {
  if (auto* l = as_bool_lit(lhs)) return *l ? rhs : lhs;
  if (auto* r = as_bool_lit(rhs)) return *r ? lhs : rhs;
  return mk_conn(BoolConn::And, std::move(lhs), std::move(rhs));
}

ExprPtr simp_or(ExprPtr lhs, ExprPtr rhs) {
  if (auto* l = as_bool_lit(lhs)) return *l ? lhs : rhs;
  if (auto* r = as_bool_lit(rhs)) return *r ? rhs : lhs;
  return mk_conn(BoolConn::Or, std::move(lhs), std::move(rhs));
}

ExprPtr simp_implies(ExprPtr lhs, ExprPtr rhs) {
  if (auto* l = as_bool_lit(lhs)) return *l ? rhs : mk_bool(true);
  if (auto* r = as_bool_lit(rhs)) {
    if (*r) return rhs;  // X => true  ~  true
  }
  return mk_conn(BoolConn::Implies, std::move(lhs), std::move(rhs));
}

ExprPtr simp_not(ExprPtr arg) {
  if (auto* a = as_bool_lit(arg)) return mk_bool(!*a);
  return mk_not(std::move(arg));
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, Abs>) {
          return equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Arith>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, Conn>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else {
          static_assert(std::is_same_v<T, Gcd>);
          return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        }
      },
      a->node);
}

void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, Abs>) {
          collect_vars(x.arg, out);
        } else if constexpr (std::is_same_v<T, Arith> || std::is_same_v<T, Cmp> ||
                             std::is_same_v<T, Conn> || std::is_same_v<T, Gcd>) {
          collect_vars(x.lhs, out);
          collect_vars(x.rhs, out);
        }
      },
      e->node);
}

std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

ExprPtr subst(const ExprPtr& e, const std::vector<std::pair<std::string, ExprPtr>>& bindings) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit>) {
          return e;
        } else if constexpr (std::is_same_v<T, Var>) {
          for (const auto& [name, repl] : bindings)
            if (name == x.name) return repl;
          return e;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return mk_neg(subst(x.arg, bindings), e->pos);
        } else if constexpr (std::is_same_v<T, Not>) {
          return mk_not(subst(x.arg, bindings), e->pos);
        } else if constexpr (std::is_same_v<T, Abs>) {
          return mk_abs(subst(x.arg, bindings), e->pos);
        } else if constexpr (std::is_same_v<T, Arith>) {
          return mk_arith(x.op, subst(x.lhs, bindings), subst(x.rhs, bindings), e->pos);
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return mk_cmp(x.op, subst(x.lhs, bindings), subst(x.rhs, bindings), e->pos);
        } else if constexpr (std::is_same_v<T, Conn>) {
          return mk_conn(x.op, subst(x.lhs, bindings), subst(x.rhs, bindings), e->pos);
        } else {
          static_assert(std::is_same_v<T, Gcd>);
          return mk_gcd(subst(x.lhs, bindings), subst(x.rhs, bindings), e->pos);
        }
      },
      e->node);
}

ExprPtr subst(const ExprPtr& e, const std::string& name, const ExprPtr& replacement) {
  return subst(e, std::vector<std::pair<std::string, ExprPtr>>{{name, replacement}});
}

StmtPtr mk_skip(SourcePos pos) { return std::make_shared<Stmt>(Stmt{Skip{}, pos}); }
StmtPtr mk_abort(SourcePos pos) { return std::make_shared<Stmt>(Stmt{AbortStmt{}, pos}); }
StmtPtr mk_assign(std::string target, ExprPtr value, SourcePos pos) {
  return std::make_shared<Stmt>(Stmt{Assign{std::move(target), std::move(value)}, pos});
}
StmtPtr mk_multi_assign(std::vector<std::string> targets, std::vector<ExprPtr> values,
                        SourcePos pos) {
  return std::make_shared<Stmt>(Stmt{MultiAssign{std::move(targets), std::move(values)}, pos});
}
StmtPtr mk_seq(std::vector<StmtPtr> steps, SourcePos pos) {
  // Sequencing is associative and the grammar is flat, so flatten nested
  // sequences into the canonical form the parser produces.
  std::vector<StmtPtr> flat;
  for (auto& s : steps) {
    if (auto* seq = std::get_if<Seq>(&s->node))
      flat.insert(flat.end(), seq->steps.begin(), seq->steps.end());
    else
      flat.push_back(std::move(s));
  }
  if (flat.size() == 1) return flat[0];
  return std::make_shared<Stmt>(Stmt{Seq{std::move(flat)}, pos});
}
StmtPtr mk_if(std::vector<GuardedCommand> arms, SourcePos pos) {
  return std::make_shared<Stmt>(Stmt{IfFi{std::move(arms)}, pos});
}
StmtPtr mk_do(std::vector<GuardedCommand> arms, std::optional<LoopSpec> spec, SourcePos pos) {
  return std::make_shared<Stmt>(Stmt{DoOd{std::move(arms), std::move(spec)}, pos});
}

namespace {

bool equal_arms(const std::vector<GuardedCommand>& a, const std::vector<GuardedCommand>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i].guard, b[i].guard) || !equal(a[i].body, b[i].body)) return false;
  return true;
}

}  // namespace

bool equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Skip> || std::is_same_v<T, AbortStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, Assign>) {
          return x.target == y.target && equal(x.value, y.value);
        } else if constexpr (std::is_same_v<T, MultiAssign>) {
          if (x.targets != y.targets || x.values.size() != y.values.size()) return false;
          for (std::size_t i = 0; i < x.values.size(); ++i)
            if (!equal(x.values[i], y.values[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Seq>) {
          if (x.steps.size() != y.steps.size()) return false;
          for (std::size_t i = 0; i < x.steps.size(); ++i)
            if (!equal(x.steps[i], y.steps[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, IfFi>) {
          return equal_arms(x.arms, y.arms);
        } else {
          static_assert(std::is_same_v<T, DoOd>);
          if (!equal_arms(x.arms, y.arms)) return false;
          if (x.spec.has_value() != y.spec.has_value()) return false;
          if (!x.spec) return true;
          return equal(x.spec->invariant, y.spec->invariant) && equal(x.spec->bound, y.spec->bound);
        }
      },
      a->node);
}

bool equal(const Program& a, const Program& b) {
  if (a.vars != b.vars) return false;
  if ((a.pre == nullptr) != (b.pre == nullptr)) return false;
  if (a.pre && (!equal(a.pre, b.pre) || !equal(a.post, b.post))) return false;
  return equal(a.body, b.body);
}

bool contains_loop(const StmtPtr& s) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DoOd>) {
          return true;
        } else if constexpr (std::is_same_v<T, Seq>) {
          return std::any_of(x.steps.begin(), x.steps.end(),
                             [](const StmtPtr& st) { return contains_loop(st); });
        } else if constexpr (std::is_same_v<T, IfFi>) {
          return std::any_of(x.arms.begin(), x.arms.end(),
                             [](const GuardedCommand& gc) { return contains_loop(gc.body); });
        } else {
          return false;
        }
      },
      s->node);
}

bool is_logical_name(const std::string& name) {
  return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

Kind check_expr(const ExprPtr& e, const std::set<std::string>& declared, bool allow_logical) {
  auto require = [&](const ExprPtr& sub, Kind want, const char* what) {
    if (check_expr(sub, declared, allow_logical) != want)
      throw TypeError(sub->pos, std::string(what) +
                                    (want == Kind::IntK ? " must be an integer expression"
                                                        : " must be a boolean expression"));
  };
  return std::visit(
      [&](const auto& x) -> Kind {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Kind::IntK;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return Kind::BoolK;
        } else if constexpr (std::is_same_v<T, Var>) {
          if (declared.count(x.name)) return Kind::IntK;
          if (allow_logical && is_logical_name(x.name)) return Kind::IntK;
          throw TypeError(e->pos, "undeclared variable '" + x.name + "'");
        } else if constexpr (std::is_same_v<T, Neg>) {
          require(x.arg, Kind::IntK, "operand of unary minus");
          return Kind::IntK;
        } else if constexpr (std::is_same_v<T, Not>) {
          require(x.arg, Kind::BoolK, "operand of 'not'");
          return Kind::BoolK;
        } else if constexpr (std::is_same_v<T, Arith>) {
          require(x.lhs, Kind::IntK, "arithmetic operand");
          require(x.rhs, Kind::IntK, "arithmetic operand");
          return Kind::IntK;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          require(x.lhs, Kind::IntK, "comparison operand");
          require(x.rhs, Kind::IntK, "comparison operand");
          return Kind::BoolK;
        } else if constexpr (std::is_same_v<T, Conn>) {
          require(x.lhs, Kind::BoolK, "boolean operand");
          require(x.rhs, Kind::BoolK, "boolean operand");
          return Kind::BoolK;
        } else if constexpr (std::is_same_v<T, Gcd>) {
          require(x.lhs, Kind::IntK, "gcd argument");
          require(x.rhs, Kind::IntK, "gcd argument");
          return Kind::IntK;
        } else {
          static_assert(std::is_same_v<T, Abs>);
          require(x.arg, Kind::IntK, "abs argument");
          return Kind::IntK;
        }
      },
      e->node);
}

namespace {

void check_no_rat_div(const ExprPtr& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Arith>) {
          if (x.op == ArithOp::RatDiv)
            throw TypeError(e->pos, "'/' is not a program operator; use 'div'");
          check_no_rat_div(x.lhs);
          check_no_rat_div(x.rhs);
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, Abs>) {
          check_no_rat_div(x.arg);
        } else if constexpr (std::is_same_v<T, Cmp> || std::is_same_v<T, Conn> ||
                             std::is_same_v<T, Gcd>) {
          check_no_rat_div(x.lhs);
          check_no_rat_div(x.rhs);
        }
      },
      e->node);
}

void check_stmt(const StmtPtr& s, const std::set<std::string>& declared) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Assign>) {
          if (!declared.count(x.target))
            throw TypeError(s->pos, "assignment to undeclared variable '" + x.target + "'");
          check_no_rat_div(x.value);
          if (check_expr(x.value, declared, false) != Kind::IntK)
            throw TypeError(x.value->pos, "assigned expression must be an integer");
        } else if constexpr (std::is_same_v<T, MultiAssign>) {
          if (x.targets.size() != x.values.size())
            throw TypeError(s->pos, "simultaneous assignment arity mismatch");
          std::set<std::string> seen;
          for (const auto& t : x.targets) {
            if (!declared.count(t))
              throw TypeError(s->pos, "assignment to undeclared variable '" + t + "'");
            if (!seen.insert(t).second)
              throw TypeError(s->pos, "duplicate target '" + t + "' in simultaneous assignment");
          }
          for (const auto& v : x.values) {
            check_no_rat_div(v);
            if (check_expr(v, declared, false) != Kind::IntK)
              throw TypeError(v->pos, "assigned expression must be an integer");
          }
        } else if constexpr (std::is_same_v<T, Seq>) {
          if (x.steps.size() < 2) throw TypeError(s->pos, "sequence must have >= 2 statements");
          for (const auto& st : x.steps) check_stmt(st, declared);
        } else if constexpr (std::is_same_v<T, IfFi> || std::is_same_v<T, DoOd>) {
          if (x.arms.empty()) throw TypeError(s->pos, "guarded-command list must be nonempty");
          for (const auto& gc : x.arms) {
            check_no_rat_div(gc.guard);
            if (check_expr(gc.guard, declared, false) != Kind::BoolK)
              throw TypeError(gc.guard->pos, "guard must be boolean");
            check_stmt(gc.body, declared);
          }
          if constexpr (std::is_same_v<T, DoOd>) {
            if (x.spec) {
              if (check_expr(x.spec->invariant, declared, true) != Kind::BoolK)
                throw TypeError(x.spec->invariant->pos, "loop invariant must be boolean");
              if (check_expr(x.spec->bound, declared, true) != Kind::IntK)
                throw TypeError(x.spec->bound->pos, "loop bound must be an integer expression");
            }
          }
        }
      },
      s->node);
}

}  // namespace

void check_program(const Program& p) {
  std::set<std::string> declared;
  for (const auto& v : p.vars) {
    if (v.empty() || !(v[0] >= 'a' && v[0] <= 'z'))
      throw TypeError({}, "program variable '" + v + "' must start with a lowercase letter");
    if (!declared.insert(v).second) throw TypeError({}, "duplicate declaration of '" + v + "'");
  }
  if ((p.pre == nullptr) != (p.post == nullptr))
    throw TypeError({}, "pre and post annotations must be given together");
  if (p.pre) {
    if (check_expr(p.pre, declared, true) != Kind::BoolK)
      throw TypeError(p.pre->pos, "precondition must be boolean");
    if (check_expr(p.post, declared, true) != Kind::BoolK)
      throw TypeError(p.post->pos, "postcondition must be boolean");
  }
  check_stmt(p.body, declared);
}

}  // namespace gclwb
