#include "prm/term_library.hpp"

namespace prm::lib {

namespace {

Term P(std::size_t i, std::size_t n) { return Term::proj(i, n); }
Term Z(std::size_t n) { return Term::zero(n); }
Term S() { return Term::succ(); }
Term C(Term outer, std::vector<Term> inners) { return Term::comp(std::move(outer), std::move(inners)); }
Term R(Term base, Term step) { return Term::prim_rec(std::move(base), std::move(step)); }

// x -> F(x, x)
Term diagonal(const Term& binary) { return C(binary, {P(1, 1), P(1, 1)}); }

}  // namespace

Term zero1() { return Z(1); }
Term identity() { return P(1, 1); }

Term add() { return R(P(1, 1), C(S(), {P(3, 3)})); }

Term mult() { return R(Z(1), C(add(), {P(3, 3), P(1, 3)})); }

Term pred() { return diagonal(R(Z(1), P(2, 3))); }

Term monus() { return R(P(1, 1), C(pred(), {P(3, 3)})); }

Term sg() { return diagonal(R(Z(1), C(S(), {Z(3)}))); }

Term sgbar() { return diagonal(R(C(S(), {Z(1)}), Z(3))); }

Term ite() { return R(P(2, 2), P(1, 4)); }

Term or2() {
  return C(ite(), {C(S(), {Z(2)}), C(sg(), {P(1, 2)}), C(sg(), {P(2, 2)})});
}

Term and2() { return C(ite(), {C(sg(), {P(1, 2)}), Z(2), C(sg(), {P(2, 2)})}); }

Term unary_rec(const Term& base, const Term& step2) {
  return diagonal(R(base, C(step2, {P(2, 3), P(3, 3)})));
}

Term parity() { return unary_rec(Z(1), C(sgbar(), {P(2, 2)})); }

Term half() {
  // half(y + 1) = half(y) + parity(y)
  return unary_rec(Z(1), C(add(), {P(2, 2), C(parity(), {P(1, 2)})}));
}

Term twice() { return diagonal(add()); }

Term constant(const Natural& c, std::size_t arity) {
  require_natural(c, "constant");
  Term unary = Z(1);
  if (c > 0) {
    // binary expansion keeps the term depth logarithmic in c
    const std::size_t bits = bit_length(c);
    unary = C(S(), {Z(1)});
    for (std::size_t b = bits - 1; b-- > 0;) {
      unary = C(twice(), {unary});
      if (boost::multiprecision::bit_test(c, static_cast<unsigned>(b))) unary = C(S(), {unary});
    }
  }
  if (arity == 1) return unary;
  return C(unary, {P(1, arity)});
}

Term leq_const(const Natural& c) {
  // [x <= c] = sgbar(x - c)
  return C(sgbar(), {C(monus(), {P(1, 1), constant(c)})});
}

Term eq_const(const Natural& c) {
  // [x <= c] & [c <= x]
  Term ge = C(sgbar(), {C(monus(), {constant(c), P(1, 1)})});
  return C(and2(), {leq_const(c), ge});
}

Term after(const Term& outer, const Term& inner) { return C(outer, {inner}); }

Term characteristic(const Term& unary) { return C(sg(), {unary}); }

}  // namespace prm::lib
