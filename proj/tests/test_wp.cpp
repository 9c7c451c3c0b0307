#include "doctest.h"
#include "gclwb/check.hpp"
#include "gclwb/parser.hpp"
#include "gclwb/printer.hpp"
#include "gclwb/wp.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace gclwb;

namespace {

StmtPtr stmt_of(const std::string& body) {
  return parse_program("var x, y; " + body).body;
}

const char* kAnnotatedGcd =
    "var x, y;\n"
    "{ pre: x = X and y = Y and x >= 1 and y >= 1 }\n"
    "{ post: x = y and x = gcd(X, Y) }\n"
    "do { inv: gcd(x, y) = gcd(X, Y) and x >= 1 and y >= 1, bound: x + y }\n"
    "   x > y -> x := x - y\n"
    "[] y > x -> y := y - x\n"
    "od\n";

// wp membership must match "every resolution terminates in a state
// satisfying r" over every state of the domain.
void check_agreement(const StmtPtr& s, const ExprPtr& r, int lo, int hi) {
  Program p{{"x", "y"}, nullptr, nullptr, s};
  ExprPtr w = wp(s, r);
  for (int x = lo; x <= hi; ++x) {
    for (int y = lo; y <= hi; ++y) {
      State s0{{"x", x}, {"y", y}};
      bool in_wp = eval_pred(w, s0);
      bool all_ok = true;
      for (const auto& o : run_all(p, s0, 1000)) {
        const State* t = o.state();
        all_ok = all_ok && t && eval_pred(r, *t);
      }
      CAPTURE(print_stmt(s));
      CAPTURE(print_expr(r));
      CAPTURE(x);
      CAPTURE(y);
      CHECK(in_wp == all_ok);
    }
  }
}

}  // namespace

TEST_CASE("wp base rules") {
  ExprPtr r = parse_expression("x > 0");
  CHECK(equal(wp(stmt_of("skip"), r), r));
  CHECK(equal(wp(stmt_of("abort"), r), mk_bool(false)));
  CHECK(equal(wp(stmt_of("x := x - y"), r), parse_expression("x - y > 0")));
  CHECK_THROWS_AS(wp(stmt_of("do true -> skip od"), r), TypeError);
}

TEST_CASE("assignment rule carries a definedness conjunct") {
  ExprPtr w = wp(stmt_of("x := x div y"), parse_expression("x = 1"));
  CHECK(equal(w, parse_expression("y != 0 and x div y = 1")));
}

TEST_CASE("if rule: coverage plus one implication per arm") {
  // the spec's worked example, checked semantically against run_all
  StmtPtr s = stmt_of("if x > y -> x := x - y [] y > x -> y := y - x fi");
  ExprPtr r = parse_expression("x >= 1 and y >= 1");
  ExprPtr expected = parse_expression(
      "(x > y or y > x) and (x > y => x - y >= 1 and y >= 1)"
      " and (y > x => x >= 1 and y - x >= 1)");
  ExprPtr w = wp(s, r);
  for (int x = 0; x <= 10; ++x)
    for (int y = 0; y <= 10; ++y) {
      State s0{{"x", x}, {"y", y}};
      CHECK(eval_pred(w, s0) == eval_pred(expected, s0));
    }
  check_agreement(s, r, 0, 10);
}

TEST_CASE("sequence rule composes right to left") {
  StmtPtr s = stmt_of("x := x + 1; y := y + x");
  ExprPtr w = wp(s, parse_expression("y = 3"));
  CHECK(equal(w, parse_expression("y + (x + 1) = 3")));
}

TEST_CASE("simultaneous swap substitutes both targets at once") {
  StmtPtr s = stmt_of("x, y := y, x");
  ExprPtr w = wp(s, parse_expression("x = 1 and y = 2"));
  CHECK(equal(w, parse_expression("y = 1 and x = 2")));
}

TEST_CASE("wp/exec agreement over generated loop-free programs") {
  testing::GenOptions opt;
  opt.allow_loops = false;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    testing::Rng rng(seed + 5);
    StmtPtr s = testing::gen_stmt(rng, opt, 2);
    testing::GenOptions pred_opt;
    pred_opt.allow_div_mod = false;  // postconditions stay total
    ExprPtr r = testing::gen_bool_expr(rng, pred_opt, 2);
    check_agreement(s, r, 0, 3);
  }
}

TEST_CASE("conjunctivity, monotonicity, excluded miracle") {
  testing::GenOptions opt;
  opt.allow_loops = false;
  testing::GenOptions pred_opt;
  pred_opt.allow_div_mod = false;
  CheckDomain dom = parse_domain("x=0..4,y=0..4");

  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    testing::Rng rng(seed + 17);
    StmtPtr s = testing::gen_stmt(rng, opt, 2);
    ExprPtr q = testing::gen_bool_expr(rng, pred_opt, 2);
    ExprPtr r = testing::gen_bool_expr(rng, pred_opt, 2);

    ExprPtr both = wp(s, mk_conn(BoolConn::And, q, r));
    ExprPtr split = mk_conn(BoolConn::And, wp(s, q), wp(s, r));
    CHECK(is_valid(check_vc(mk_conn(BoolConn::Iff, both, split), dom)));

    if (is_valid(check_vc(mk_conn(BoolConn::Implies, q, r), dom))) {
      CHECK(is_valid(check_vc(mk_conn(BoolConn::Implies, wp(s, q), wp(s, r)), dom)));
    }

    ExprPtr miracle = wp(s, mk_bool(false));
    CHECK(is_valid(check_vc(mk_not(miracle), dom)));
  }
}

TEST_CASE("check_vc finds the least counterexample") {
  CheckDomain dom = parse_domain("x=-5..5");
  CHECK(is_valid(check_vc(parse_expression("x = x"), dom)));

  CheckDomain dom2 = parse_domain("x=-10..10,y=-10..10");
  CHECK(is_valid(check_vc(parse_expression("x > y => x - y > 0"), dom2)));

  auto r = check_vc(parse_expression("x >= y => x - y > 0"), dom2);
  auto* cex = std::get_if<Counterexample>(&r);
  REQUIRE(cex != nullptr);
  CHECK(cex->assignment.at("x") == -10);
  CHECK(cex->assignment.at("y") == -10);
}

TEST_CASE("check_vc guards its domain") {
  CHECK_THROWS_AS(check_vc(parse_expression("x = y"), parse_domain("x=0..1")), CheckError);
  CheckOptions tight;
  tight.cap = 10;
  CHECK_THROWS_AS(check_vc(parse_expression("x = x"), parse_domain("x=0..100"), tight),
                  CheckError);
  // an unguarded partial operator on the domain is an error, not a verdict
  CHECK_THROWS_AS(check_vc(parse_expression("1 div x = 1"), parse_domain("x=0..1")), CheckError);
  // ... but a definedness conjunct to the left shields it
  CHECK(is_valid(check_vc(parse_expression("x != 0 => 1 div x = 1"), parse_domain("x=0..1"))));
}

TEST_CASE("annotated gcd program emits six VCs, all valid on 1..20") {
  Program p = parse_program(kAnnotatedGcd);
  auto vcs = verify_loop(p);
  REQUIRE(vcs.size() == 6);

  CheckDomain dom = parse_domain("x=1..20,y=1..20,X=1..20,Y=1..20");
  std::string snap = bound_snapshot_name(p);
  CHECK(snap == "T");
  Interval t_range = value_range(std::get<DoOd>(p.body->node).spec->bound, dom);
  CHECK(t_range.lo == 2);
  CHECK(t_range.hi == 40);

  for (const auto& vc : vcs) {
    CheckDomain d = dom;
    if (free_vars(vc.formula).count(snap)) d[snap] = t_range;
    CAPTURE(vc.label);
    CHECK(is_valid(check_vc(vc.formula, d)));
  }
}

TEST_CASE("invariant mutations produce failing VCs with counterexamples") {
  // Domains for mutation hunting include 0 so the dropped conjunct matters.
  auto check_all = [](const Program& p, const CheckDomain& dom) {
    auto vcs = verify_loop(p);
    std::string snap = bound_snapshot_name(p);
    Interval t_range = value_range(std::get<DoOd>(p.body->node).spec->bound, dom);
    std::vector<std::string> failing;
    for (const auto& vc : vcs) {
      CheckDomain d = dom;
      if (free_vars(vc.formula).count(snap)) d[snap] = t_range;
      if (!is_valid(check_vc(vc.formula, d))) failing.push_back(vc.label);
    }
    return failing;
  };

  CheckDomain dom = parse_domain("x=0..8,y=0..8,X=0..8,Y=0..8");

  // dropping y >= 1 lets the loop stall at y = 0
  Program drop_y = parse_program(
      "var x, y;\n"
      "{ pre: x = X and y = Y and x >= 1 and y >= 1 }\n"
      "{ post: x = y and x = gcd(X, Y) }\n"
      "do { inv: gcd(x, y) = gcd(X, Y) and x >= 1, bound: x + y }\n"
      "   x > y -> x := x - y\n"
      "[] y > x -> y := y - x\n"
      "od\n");
  auto failing = check_all(drop_y, dom);
  CHECK(!failing.empty());

  // bound x is not decreased by the second arm
  Program bound_x = parse_program(
      "var x, y;\n"
      "{ pre: x = X and y = Y and x >= 1 and y >= 1 }\n"
      "{ post: x = y and x = gcd(X, Y) }\n"
      "do { inv: gcd(x, y) = gcd(X, Y) and x >= 1 and y >= 1, bound: x }\n"
      "   x > y -> x := x - y\n"
      "[] y > x -> y := y - x\n"
      "od\n");
  failing = check_all(bound_x, parse_domain("x=1..8,y=1..8,X=1..8,Y=1..8"));
  CHECK(std::find(failing.begin(), failing.end(), "bound-decreases") != failing.end());

  // a post the invariant cannot deliver
  Program wrong_post = parse_program(
      "var x, y;\n"
      "{ pre: x = X and y = Y and x >= 1 and y >= 1 }\n"
      "{ post: x = y and x = X }\n"
      "do { inv: gcd(x, y) = gcd(X, Y) and x >= 1 and y >= 1, bound: x + y }\n"
      "   x > y -> x := x - y\n"
      "[] y > x -> y := y - x\n"
      "od\n");
  failing = check_all(wrong_post, parse_domain("x=1..8,y=1..8,X=1..8,Y=1..8"));
  CHECK(std::find(failing.begin(), failing.end(), "postcondition-on-exit") != failing.end());
}

TEST_CASE("a false guard makes its per-guard VC vacuously valid") {
  Program p = parse_program(
      "var x;\n"
      "{ pre: x = X and x >= 0 }\n"
      "{ post: x = 0 }\n"
      "do { inv: x >= 0, bound: x }\n"
      "   x > 0 -> x := x - 1\n"
      "[] false -> x := x + 1\n"
      "od\n");
  auto vcs = verify_loop(p);
  CheckDomain dom = parse_domain("x=0..10,X=0..10,T=0..10");
  for (const auto& vc : vcs) {
    CAPTURE(vc.label);
    CHECK(is_valid(check_vc(vc.formula, dom)));
  }
}

TEST_CASE("verify_loop rejects malformed programs") {
  CHECK_THROWS_AS(verify_loop(parse_program("var x; do x > 0 -> x := x - 1 od")), TypeError);
  CHECK_THROWS_AS(verify_loop(parse_program(
                      "var x;\n{ pre: x = X }\n{ post: true }\n"
                      "do x > 0 -> x := x - 1 od")),
                  TypeError);  // missing inv/bound
  CHECK_THROWS_AS(verify_loop(parse_program(
                      "var x;\n{ pre: x = X }\n{ post: true }\n"
                      "do { inv: true, bound: x }\n"
                      "   x > 0 -> do x > 1 -> x := x - 1 od\nod")),
                  TypeError);  // nested loop
  CHECK_THROWS_AS(verify_loop(parse_program("var x;\n{ pre: x = X }\n{ post: true }\nskip")),
                  TypeError);  // no loop at all
}

TEST_CASE("valid VCs imply the loop really computes gcd (cross-check)") {
  Program p = parse_program(kAnnotatedGcd);
  for (int x = 1; x <= 12; ++x)
    for (int y = 1; y <= 12; ++y) {
      auto outcomes = run_all(p, State{{"x", x}, {"y", y}}, 10000);
      REQUIRE(outcomes.size() == 1);
      Int g = testing::euclid_gcd(x, y);
      CHECK(*outcomes.begin() == Outcome{Terminated{State{{"x", g}, {"y", g}}}});
    }
}
