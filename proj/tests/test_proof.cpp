#include "doctest.h"
#include "gclwb/parser.hpp"
#include "gclwb/poly.hpp"
#include "gclwb/proof.hpp"
#include "generators.hpp"

using namespace gclwb;

namespace {

const char* kEwd1318 =
    "let s = (a + b + c)/2\n"
    "  s*(s-b)*(s-c) + s*(s-c)*(s-a)\n"
    "=   { algebra }\n"
    "  s*(s-c)*(2*s - a - b)\n"
    "=   { definition of s }\n"
    "  s*(s-c)*c\n";

}  // namespace

TEST_CASE("polynomial normal form basics") {
  ExprPtr e = parse_expression("(x + y)*(x - y) - x*x + y*y", true);
  CHECK(to_rational_fn(e).num.is_zero());

  ExprPtr half = parse_expression("x/2 + x/2 - x", true);
  CHECK(to_rational_fn(half).num.is_zero());

  CHECK_THROWS_AS(to_rational_fn(parse_expression("gcd(x, y)", true)), NonPolynomial);
  CHECK_THROWS_AS(to_rational_fn(parse_expression("x div 2", true)), NonPolynomial);
  CHECK_THROWS_AS(to_rational_fn(parse_expression("x / (y - y)", true)), GclError);

  Poly p = Poly::variable("a").pow(3) - Poly::constant(Rat(1, 2));
  CHECK(p.str() == "a^3 - 1/2");
}

TEST_CASE("cross-multiplied equality handles nonconstant denominators") {
  // x/y = x*x/(x*y) holds as a cross-multiplied identity
  RationalFn l = to_rational_fn(parse_expression("x/y", true));
  RationalFn r = to_rational_fn(parse_expression("(x*x)/(x*y)", true));
  CHECK(normalizes_equal(l, r));
  RationalFn r2 = to_rational_fn(parse_expression("(x*x + 1)/(x*y)", true));
  CHECK(!normalizes_equal(l, r2));
}

TEST_CASE("EWD1318 chain parses to two steps concluding =") {
  ProofChain chain = parse_proof(kEwd1318);
  REQUIRE(chain.definitions.size() == 1);
  CHECK(chain.definitions[0].first == "s");
  REQUIRE(chain.steps.size() == 2);
  CHECK(chain.steps[0].hint == "algebra");
  CHECK(chain.steps[1].hint == "definition of s");
  CHECK(chain.conclusion == Relation::Eq);
  CHECK(equal(chain.steps[0].rhs, chain.steps[1].lhs));
}

TEST_CASE("EWD1318 chain checks valid by normalization") {
  ProofChain chain = parse_proof(kEwd1318);
  ChainVerdict verdict = check_chain(chain, std::nullopt);
  REQUIRE(verdict.steps.size() == 2);
  CHECK(verdict.steps[0].status == StepStatus::ValidByNormalization);
  CHECK(verdict.steps[1].status == StepStatus::ValidByNormalization);
  CHECK(verdict.valid);
  CHECK(verdict.conclusion == Relation::Eq);
}

TEST_CASE("collapsed claim without the definition is refuted with a witness") {
  ProofChain chain = parse_proof(
      "  s*(s-b)*(s-c) + s*(s-c)*(s-a)\n"
      "=   { algebra }\n"
      "  s*(s-c)*c\n");
  ChainVerdict verdict = check_chain(chain, std::nullopt);
  CHECK(!verdict.valid);
  REQUIRE(verdict.steps.size() == 1);
  CHECK(verdict.steps[0].status == StepStatus::Invalid);
  REQUIRE(!verdict.steps[0].counterexample.empty());
  // replay the witness: sides must really differ there
  std::map<std::string, Rat> a;
  for (const auto& [name, value] : verdict.steps[0].counterexample) a[name] = Rat(value);
  Rat l = std::get<Rat>(eval_proof_expr(chain.steps[0].lhs, a));
  Rat r = std::get<Rat>(eval_proof_expr(chain.steps[0].rhs, a));
  CHECK(l != r);
}

TEST_CASE("keeping the hint but dropping the let is a missing-definition error") {
  ProofChain chain = parse_proof(
      "  s*(s-c)*(2*s - a - b)\n"
      "=   { definition of s }\n"
      "  s*(s-c)*c\n");
  CHECK_THROWS_AS(check_chain(chain, std::nullopt), CheckError);
}

TEST_CASE("single inline step") {
  ProofChain chain = parse_proof("x + 0 = { algebra } x\n");
  REQUIRE(chain.steps.size() == 1);
  ChainVerdict verdict = check_chain(chain, std::nullopt);
  CHECK(verdict.steps[0].status == StepStatus::ValidByNormalization);
}

TEST_CASE("broken chain is a parse error") {
  CHECK_THROWS_AS(parse_proof("  x + 0\n=   { algebra }\n  x\n  y\n=  { algebra }\n  y\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_proof("x = { a } y\nz = { a } w\n"), ParseError);
  // verbatim repetition of the intermediate, though, is the stacked format
  ProofChain ok = parse_proof("x + 0 = { algebra } x\nx\n=   { algebra }\nx * 1\n");
  CHECK(ok.steps.size() == 2);
}

TEST_CASE("unknown relation and malformed hints are parse errors") {
  CHECK_THROWS_AS(parse_proof("x ~ { a } y\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("x { no relation } y\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("x = { unterminated y\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("let s = s + 1\n  s = { algebra } s\n"), ParseError);
}

TEST_CASE("domain-checked inequalities compose to a strict conclusion") {
  ProofChain chain = parse_proof(
      "  x\n"
      "<=  { dom }\n"
      "  x + 1\n"
      "<   { dom }\n"
      "  x + 3\n");
  CHECK(chain.conclusion == Relation::Lt);
  CheckDomain dom = parse_domain("x=-5..5");
  ChainVerdict verdict = check_chain(chain, dom);
  CHECK(verdict.valid);
  CHECK(verdict.steps[0].status == StepStatus::ValidOnDomain);
  CHECK(verdict.steps[1].status == StepStatus::ValidOnDomain);
}

TEST_CASE("one invalid step sinks the chain") {
  ProofChain chain = parse_proof(
      "  x\n"
      "<=  { dom }\n"
      "  x + 1\n"
      "<   { dom }\n"
      "  x\n");
  CheckDomain dom = parse_domain("x=-5..5");
  ChainVerdict verdict = check_chain(chain, dom);
  CHECK(!verdict.valid);
  CHECK(verdict.steps[1].status == StepStatus::Invalid);
  CHECK(verdict.steps[1].counterexample.at("x") == -5);
}

TEST_CASE("non-mechanizable hint without a domain stays unchecked") {
  ProofChain chain = parse_proof("x*2 = { arithmetic } x + x\n");
  ChainVerdict verdict = check_chain(chain, std::nullopt);
  CHECK(verdict.steps[0].status == StepStatus::Unchecked);
  CHECK(!verdict.valid);
}

TEST_CASE("incompatible relations do not compose") {
  CHECK_THROWS_AS(parse_proof("x <= { d } y >= { d } z\n"), ParseError);
  CHECK_THROWS_AS(parse_proof("x = { d } y => { d } z\n"), ParseError);
  CHECK(compose(Relation::Le, Relation::Lt) == Relation::Lt);
  CHECK(compose(Relation::Eq, Relation::Ge) == Relation::Ge);
  CHECK(compose(Relation::Iff, Relation::Implies) == Relation::Implies);
  CHECK(!compose(Relation::Gt, Relation::Lt).has_value());
}

TEST_CASE("composition is associative where defined") {
  const Relation rels[] = {Relation::Eq, Relation::Le,      Relation::Ge, Relation::Lt,
                           Relation::Gt, Relation::Implies, Relation::Iff};
  for (Relation a : rels)
    for (Relation b : rels)
      for (Relation c : rels) {
        auto ab = compose(a, b);
        auto bc = compose(b, c);
        auto left = ab ? compose(*ab, c) : std::nullopt;
        auto right = bc ? compose(a, *bc) : std::nullopt;
        CHECK(left == right);
      }
}

TEST_CASE("normalization-valid equalities survive random rational sampling") {
  ProofChain chain = parse_proof(kEwd1318);
  // substitute the definition so both steps become closed in a, b, c
  std::vector<ProofStep> steps = chain.steps;
  testing::Rng rng(2024);
  int samples = 0;
  while (samples < 1000) {
    std::map<std::string, Rat> a;
    for (const char* v : {"a", "b", "c"})
      a[v] = Rat(rng.below(41) - 20, 1 + rng.below(7));
    a["s"] = (a["a"] + a["b"] + a["c"]) / 2;
    for (const auto& step : steps) {
      Rat l = std::get<Rat>(eval_proof_expr(step.lhs, a));
      Rat r = std::get<Rat>(eval_proof_expr(step.rhs, a));
      CHECK(l == r);
    }
    ++samples;
  }
}

TEST_CASE("proof chains round-trip through pretty-printing") {
  for (const char* text :
       {kEwd1318, "x + 0 = { algebra } x\n",
        "  x\n<=  { dom }\n  x + 1\n<   { dom }\n  x + 3\n",
        "a*a - b*b\n=   { algebra }\n(a-b)*(a+b)\n"}) {
    ProofChain chain = parse_proof(text);
    std::string printed = print_proof(chain);
    ProofChain back = parse_proof(printed);
    REQUIRE(back.steps.size() == chain.steps.size());
    CHECK(back.conclusion == chain.conclusion);
    CHECK(back.definitions.size() == chain.definitions.size());
    for (std::size_t i = 0; i < chain.definitions.size(); ++i) {
      CHECK(back.definitions[i].first == chain.definitions[i].first);
      CHECK(equal(back.definitions[i].second, chain.definitions[i].second));
    }
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      CHECK(equal(back.steps[i].lhs, chain.steps[i].lhs));
      CHECK(equal(back.steps[i].rhs, chain.steps[i].rhs));
      CHECK(back.steps[i].rel == chain.steps[i].rel);
      CHECK(back.steps[i].hint == chain.steps[i].hint);
    }
  }
}

TEST_CASE("domain verdicts are reproducible") {
  ProofChain chain = parse_proof("x*x mod 7 = { try it } x*x mod 7\n");
  CheckDomain dom = parse_domain("x=0..6");
  ChainVerdict v1 = check_chain(chain, dom);
  ChainVerdict v2 = check_chain(chain, dom);
  CHECK(v1.steps[0].status == v2.steps[0].status);
  CHECK(v1.steps[0].status == StepStatus::ValidOnDomain);
}
