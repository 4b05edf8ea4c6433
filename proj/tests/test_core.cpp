#include <gtest/gtest.h>

#include "oracles/naive_eval.hpp"
#include "oracles/term_gen.hpp"
#include "prm/eval.hpp"
#include "prm/syntax.hpp"
#include "prm/term_library.hpp"

using namespace prm;

namespace {

Term add_term() { return parse_term("R(P(1,1);C(S;P(3,3)))"); }

EvalOutcome ev(const Term& t, std::vector<Natural> xs) { return eval(t, xs); }

}  // namespace

TEST(Arity, BasisAndSchemes) {
  EXPECT_EQ(Term::succ().arity(), 1u);
  EXPECT_EQ(add_term().arity(), 2u);
  EXPECT_EQ(Term::comp(Term::succ(), {Term::succ()}).arity(), 1u);
}

TEST(Arity, MalformedTermNamesThePath) {
  Term bad = Term::comp(lib::add(), {Term::succ(), Term::proj(1, 2)});
  EXPECT_FALSE(bad.well_formed());
  Term nested = Term::comp(Term::succ(), {Term::prim_rec(Term::proj(1, 1), bad)});
  try {
    nested.validate();
    FAIL() << "validate accepted mixed inner arities";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path().rfind("inner[0]/step", 0), 0u) << e.path();
  }
  Term bad_rec = Term::prim_rec(Term::proj(1, 1), Term::succ());
  EXPECT_THROW(bad_rec.validate(), ValidationError);
  EXPECT_THROW(ev(bad_rec, {1, 2}), ValidationError);
}

TEST(Eval, Examples) {
  EXPECT_EQ(ev(parse_term("C(S;S)"), {3}).value, 5);
  EXPECT_EQ(ev(Term::zero(1), {Natural(1'000'000'000)}).value, 0);
  EXPECT_THROW(ev(Term::succ(), {1, 2}), ValidationError);
}

// Frames for R(P(1,1); C(S;P(3,3))) on (2, 3): the R node (1), its base
// P(1,1) (1), and three step evaluations of C(S;P(3,3)) at 3 frames each
// (C, P(3,3), S), so 1 + 1 + 9.
TEST(Eval, AdditionGolden) {
  auto out = ev(add_term(), {2, 3});
  EXPECT_EQ(out.value, 5);
  EXPECT_EQ(out.steps, 11);
  EXPECT_EQ(oracle::naive_eval(add_term(), {2, 3}).frames, 11);
}

TEST(EvalBounded, Examples) {
  const Term ss = parse_term("C(S;S)");
  const Natural three = 3;
  EXPECT_FALSE(eval1_bounded(ss, three, Budget{1}));
  EXPECT_EQ(eval1(ss, three).steps, 3);
  auto z = eval1_bounded(Term::zero(1), Natural(7), Budget{1'000'000});
  ASSERT_TRUE(z);
  EXPECT_EQ(z->value, 0);
}

TEST(EvalBounded, ExceededConsumesTheBudget) {
  const Term t = add_term();
  std::vector<Natural> xs{4, 6};
  for (Natural b = 0; b < 30; ++b) {
    BoundedRun run = run_bounded(t, xs, Budget{b});
    if (!run.outcome) EXPECT_EQ(run.consumed, b);
  }
}

TEST(Parse, GrammarAndErrors) {
  EXPECT_EQ(parse_term("C(S; S)"), Term::comp(Term::succ(), {Term::succ()}));
  EXPECT_EQ(print_term(parse_term(" R( P(1,1) ; C( S ; P(3,3) ) ) ")), "R(P(1,1);C(S;P(3,3)))");
  EXPECT_THROW(parse_term("P(3,2)"), ValidationError);
  EXPECT_THROW(parse_term("C(S;"), ParseError);
  EXPECT_THROW(parse_term("Q"), ParseError);
  try {
    parse_term("C(S;\n  X)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

// Library terms against plain arithmetic.
TEST(Semantics, ArithmeticCorpus) {
  for (std::uint64_t a = 0; a <= 8; ++a) {
    EXPECT_EQ(eval1(lib::zero1(), Natural(a)).value, 0);
    EXPECT_EQ(eval1(Term::succ(), Natural(a)).value, a + 1);
    EXPECT_EQ(eval1(lib::identity(), Natural(a)).value, a);
    EXPECT_EQ(eval1(lib::sg(), Natural(a)).value, a > 0 ? 1 : 0);
    EXPECT_EQ(eval1(lib::sgbar(), Natural(a)).value, a > 0 ? 0 : 1);
    EXPECT_EQ(eval1(lib::pred(), Natural(a)).value, a > 0 ? a - 1 : 0);
    EXPECT_EQ(eval1(lib::parity(), Natural(a)).value, a % 2);
    EXPECT_EQ(eval1(lib::half(), Natural(a)).value, a / 2);
    EXPECT_EQ(eval1(lib::twice(), Natural(a)).value, 2 * a);
    for (std::uint64_t b = 0; b <= 8; ++b) {
      EXPECT_EQ(ev(lib::add(), {a, b}).value, a + b);
      EXPECT_EQ(ev(lib::mult(), {a, b}).value, a * b);
      EXPECT_EQ(ev(lib::monus(), {a, b}).value, a > b ? a - b : 0);
      EXPECT_EQ(ev(Term::proj(1, 2), {a, b}).value, a);
      EXPECT_EQ(ev(Term::proj(2, 2), {a, b}).value, b);
      EXPECT_EQ(ev(lib::or2(), {a, b}).value, (a || b) ? 1 : 0);
      EXPECT_EQ(ev(lib::and2(), {a, b}).value, (a && b) ? 1 : 0);
    }
  }
}

// Every unary term up to six nodes, arguments up to 5: the evaluator agrees
// with the second interpreter on value and frames, is deterministic, and the
// budgeted run returns exactly when the budget covers the frames.
TEST(Semantics, SmallTermsAgreeWithNaiveInterpreter) {
  oracle::TermGen gen(8);
  const auto terms = gen.up_to(6, 1);
  ASSERT_GT(terms.size(), 1000u);
  for (const Term& t : terms) {
    for (std::uint64_t x = 0; x <= 5; ++x) {
      const EvalOutcome a = eval1(t, Natural(x));
      const oracle::Run b = oracle::naive_eval1(t, Natural(x));
      ASSERT_EQ(a.value, b.value) << print_term(t) << " at " << x;
      ASSERT_EQ(a.steps, b.frames) << print_term(t) << " at " << x;
      ASSERT_EQ(eval1(t, Natural(x)), a);
      EXPECT_FALSE(eval1_bounded(t, Natural(x), Budget{a.steps - 1}));
      auto at = eval1_bounded(t, Natural(x), Budget{a.steps});
      ASSERT_TRUE(at);
      EXPECT_EQ(*at, a);
      EXPECT_EQ(eval1_bounded(t, Natural(x), Budget{a.steps + 1}), at);
    }
  }
}

TEST(Parse, RoundTripOnGeneratedTerms) {
  oracle::TermGen gen(8);
  for (std::size_t arity = 1; arity <= 3; ++arity)
    for (const Term& t : gen.up_to(5, arity)) {
      const std::string s = print_term(t);
      EXPECT_EQ(parse_term(s), t) << s;
      EXPECT_EQ(print_term(parse_term(s)), s);
    }
}
