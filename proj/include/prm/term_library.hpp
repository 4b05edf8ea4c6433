#ifndef PRM_TERM_LIBRARY_HPP
#define PRM_TERM_LIBRARY_HPP

#include "prm/natural.hpp"
#include "prm/term.hpp"

// Ready-made primitive recursive terms used to build index combinators and
// reduction witnesses. All recursions use the last argument as recursion
// variable (see Term).
namespace prm::lib {

Term zero1();
Term identity();

Term add();       // (a, b) -> a + b
Term mult();      // (a, b) -> a * b
Term pred();      // x -> x - 1, 0 -> 0
Term monus();     // (a, b) -> max(a - b, 0)
Term sg();        // x -> min(x, 1)
Term sgbar();     // x -> 1 - min(x, 1)
Term ite();       // (u, v, b) -> b != 0 ? u : v
Term or2();       // (a, b) -> sg(a) | sg(b)
Term and2();      // (a, b) -> sg(a) & sg(b)
Term parity();    // x -> x mod 2
Term half();      // x -> floor(x / 2)
Term twice();     // x -> 2x

// Constant function of the given arity (>= 1).
Term constant(const Natural& c, std::size_t arity = 1);

// x -> [x <= c], x -> [x == c]
Term leq_const(const Natural& c);
Term eq_const(const Natural& c);

// Unary function x -> F(x, x) where F(x, 0) = base(x), F(x, y+1) = step2(y, F(x, y)).
Term unary_rec(const Term& base, const Term& step2);

// C(outer; inners...) with a single inner.
Term after(const Term& outer, const Term& inner);

// x -> min(t(x), 1) for a unary t.
Term characteristic(const Term& unary);

}  // namespace prm::lib

#endif  // PRM_TERM_LIBRARY_HPP
