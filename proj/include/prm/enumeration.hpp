#ifndef PRM_ENUMERATION_HPP
#define PRM_ENUMERATION_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "prm/eval.hpp"
#include "prm/natural.hpp"
#include "prm/term.hpp"

namespace prm {

// Index into the total numbering of unary terms. The same index names the
// function p_e and the set X_e = { x : p_e(x) > 0 }.
struct GodelIndex {
  Natural value;

  GodelIndex() = default;
  GodelIndex(Natural v) : value(std::move(v)) { require_natural(value, "index"); }  // NOLINT

  friend auto operator<=>(const GodelIndex&, const GodelIndex&) = default;
};

// Pairing N x N -> N used by the term numbering. Reading naturals as bit
// strings, pair(a, b) is a length-prefixed concatenation, so code length grows
// additively. Injective; code_unpair is total and inverts code_pair on its
// image (codes outside it are repaired to (0, 0)).
Natural code_pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> code_unpair(const Natural& z);

// Numbering of terms of a fixed arity n. A code is 4 * body + tag; the tag
// selects the constructor
//   n = 1 : S, P, C, Z
//   n > 1 : P, C, R, Z
// C bodies are pair(k - 1, pair(outer, inners)) where the k inner codes are
// nested right-associated pairs; R bodies are pair(base, step). Atom bodies
// carry no information except the projection index, which is clamped to n.
// decode is total; encode(decode(c)) == c exactly on canonical codes.
Term decode_at_arity(const Natural& code, std::size_t arity);
Natural encode_at_arity(const Term& term);

// Unary numbering. encode rejects terms whose arity is not 1.
Term decode(const GodelIndex& e);
GodelIndex encode(const Term& term);

// p_e(x), with its step count.
EvalOutcome p_outcome(const GodelIndex& e, const Natural& x);
Natural p(const GodelIndex& e, const Natural& x);
Natural p_steps(const GodelIndex& e, const Natural& x);

// Time bounds. e = -1 is the sentinel with r_{-1} = 0.
// r(e, x) = max_{d <= e} (p_steps(d, x) + p(d, x) + x)
Natural r(std::int64_t e, const Natural& x);
// Declared cost of computing r(e, x): sum_{d <= e} p_steps(d, x) + 1.
Natural r_steps(std::int64_t e, const Natural& x);
// r_steps(e, x) if it is <= budget, else nothing; never evaluates past the budget.
std::optional<Natural> r_steps_within(std::int64_t e, const Natural& x, const Natural& budget);

// Stage-s approximation: p_e(x) if it converges within s frames.
std::optional<Natural> phi_approx(const GodelIndex& e, const Natural& x, const Natural& s);

// Characteristic bit of X_e.
bool set_char(const GodelIndex& e, const Natural& x);

GodelIndex index_union(const GodelIndex& i, const GodelIndex& j);
GodelIndex index_intersect(const GodelIndex& i, const GodelIndex& j);
GodelIndex index_complement(const GodelIndex& i);

// Index of a 0/1-valued set term (convenience wrappers over encode).
GodelIndex omega_index();  // constant 1
GodelIndex empty_index();  // constant 0

}  // namespace prm

#endif  // PRM_ENUMERATION_HPP
