#include "gclwb/wp.hpp"

namespace gclwb {

ExprPtr defined(const ExprPtr& e) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit> ||
                      std::is_same_v<T, Var>) {
          return mk_bool(true);
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, Abs>) {
          return defined(x.arg);
        } else if constexpr (std::is_same_v<T, Arith>) {
          ExprPtr sub = simp_and(defined(x.lhs), defined(x.rhs));
          if (x.op == ArithOp::Div || x.op == ArithOp::Mod)
            sub = simp_and(sub, mk_cmp(CmpOp::Ne, x.rhs, mk_int(0)));
          return sub;
        } else {
          return simp_and(defined(x.lhs), defined(x.rhs));
        }
      },
      e->node);
}

namespace {

ExprPtr disjoin_guards(const std::vector<GuardedCommand>& arms) {
  ExprPtr any = arms[0].guard;
  for (std::size_t i = 1; i < arms.size(); ++i) any = simp_or(any, arms[i].guard);
  return any;
}

}  // namespace

ExprPtr wp(const StmtPtr& s, const ExprPtr& post) {
  return std::visit(
      [&](const auto& x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Skip>) {
          return post;
        } else if constexpr (std::is_same_v<T, AbortStmt>) {
          return mk_bool(false);
        } else if constexpr (std::is_same_v<T, Assign>) {
          return simp_and(defined(x.value), subst(post, x.target, x.value));
        } else if constexpr (std::is_same_v<T, MultiAssign>) {
          ExprPtr def = mk_bool(true);
          std::vector<std::pair<std::string, ExprPtr>> bindings;
          for (std::size_t i = 0; i < x.targets.size(); ++i) {
            def = simp_and(def, defined(x.values[i]));
            bindings.emplace_back(x.targets[i], x.values[i]);
          }
          return simp_and(def, subst(post, bindings));
        } else if constexpr (std::is_same_v<T, Seq>) {
          ExprPtr r = post;
          for (auto it = x.steps.rbegin(); it != x.steps.rend(); ++it) r = wp(*it, r);
          return r;
        } else if constexpr (std::is_same_v<T, IfFi>) {
          ExprPtr def = mk_bool(true);
          for (const auto& arm : x.arms) def = simp_and(def, defined(arm.guard));
          ExprPtr result = simp_and(def, disjoin_guards(x.arms));
          for (const auto& arm : x.arms)
            result = simp_and(result, simp_implies(arm.guard, wp(arm.body, post)));
          return result;
        } else {
          static_assert(std::is_same_v<T, DoOd>);
          throw TypeError(s->pos, "wp is defined for loop-free statements; use verify_loop");
        }
      },
      s->node);
}

namespace {

struct LoopShape {
  std::vector<StmtPtr> init;  // loop-free prefix
  const DoOd* loop = nullptr;
  SourcePos loop_pos;
};

LoopShape split_body(const Program& p) {
  LoopShape shape;
  const StmtPtr& body = p.body;
  if (auto* d = std::get_if<DoOd>(&body->node)) {
    shape.loop = d;
    shape.loop_pos = body->pos;
  } else if (auto* seq = std::get_if<Seq>(&body->node)) {
    const StmtPtr& last = seq->steps.back();
    auto* d = std::get_if<DoOd>(&last->node);
    if (!d) throw TypeError(last->pos, "program body must end in an annotated do-od");
    shape.loop = d;
    shape.loop_pos = last->pos;
    shape.init.assign(seq->steps.begin(), seq->steps.end() - 1);
  } else {
    throw TypeError(body->pos, "program body must be a single annotated do-od");
  }
  for (const auto& st : shape.init)
    if (contains_loop(st))
      throw TypeError(st->pos, "initialization before the loop must be loop-free");
  for (const auto& arm : shape.loop->arms)
    if (contains_loop(arm.body)) throw TypeError(shape.loop_pos, "nested loops are not supported");
  return shape;
}

std::string fresh_snapshot(const Program& p, const LoopShape& shape) {
  std::set<std::string> used(p.vars.begin(), p.vars.end());
  if (p.pre) collect_vars(p.pre, used);
  if (p.post) collect_vars(p.post, used);
  collect_vars(shape.loop->spec->invariant, used);
  collect_vars(shape.loop->spec->bound, used);
  for (const auto& arm : shape.loop->arms) collect_vars(arm.guard, used);
  std::string name = "T";
  int suffix = 0;
  while (used.count(name)) name = "T" + std::to_string(suffix++);
  return name;
}

}  // namespace

std::string bound_snapshot_name(const Program& p) {
  return fresh_snapshot(p, split_body(p));
}

std::vector<VerificationCondition> verify_loop(const Program& p) {
  if (!p.pre || !p.post)
    throw TypeError({}, "verify_loop requires { pre: ... } { post: ... } annotations");
  LoopShape shape = split_body(p);
  if (!shape.loop->spec)
    throw TypeError(shape.loop_pos, "do-od must carry { inv: ..., bound: ... }");

  const ExprPtr& inv = shape.loop->spec->invariant;
  const ExprPtr& bound = shape.loop->spec->bound;
  const auto& arms = shape.loop->arms;

  auto wp_through_init = [&](ExprPtr target) {
    for (auto it = shape.init.rbegin(); it != shape.init.rend(); ++it) target = wp(*it, target);
    return target;
  };

  std::vector<VerificationCondition> vcs;
  using Kind = VerificationCondition::Kind;

  vcs.push_back({Kind::PreEstablishesInvariant, "pre-establishes-invariant",
                 simp_implies(p.pre, wp_through_init(inv))});

  for (std::size_t i = 0; i < arms.size(); ++i)
    vcs.push_back({Kind::InvariantPreserved,
                   "invariant-preserved[" + std::to_string(i + 1) + "]",
                   simp_implies(simp_and(inv, arms[i].guard), wp(arms[i].body, inv))});

  ExprPtr any_guard = disjoin_guards(arms);
  vcs.push_back({Kind::PostconditionOnExit, "postcondition-on-exit",
                 simp_implies(simp_and(inv, simp_not(any_guard)), p.post)});

  vcs.push_back({Kind::BoundPositive, "bound-positive",
                 simp_implies(simp_and(inv, any_guard),
                              mk_cmp(CmpOp::Gt, bound, mk_int(0)))});

  std::string snap = fresh_snapshot(p, shape);
  ExprPtr decreases = mk_bool(true);
  for (const auto& arm : arms)
    decreases = simp_and(
        decreases,
        simp_implies(arm.guard, wp(arm.body, mk_cmp(CmpOp::Lt, bound, mk_var(snap)))));
  vcs.push_back({Kind::BoundDecreases, "bound-decreases",
                 simp_implies(simp_and(inv, mk_cmp(CmpOp::Eq, bound, mk_var(snap))), decreases)});

  return vcs;
}

}  // namespace gclwb
