#ifndef PRM_BA_HPP
#define PRM_BA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prm/setops.hpp"
#include "prm/sparse.hpp"

namespace prm {

// The set A & X_e, relative to one sparse trace (identified by its hash).
struct AlgebraElement {
  GodelIndex e;
  std::string trace_ref;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

class TraceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

AlgebraElement make_element(const GodelIndex& e, const SparseTrace& trace);
AlgebraElement elem_join(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement elem_meet(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement elem_compl(const AlgebraElement& a);
// Membership of x in A & X_e; empty beyond the prefix.
std::optional<bool> elem_member(const AlgebraElement& a, const SparseTrace& trace,
                                const Natural& x);

enum class EquivVerdict { Consistent, Refuted, Inconclusive };
std::string to_string(EquivVerdict v);

// Bounded evidence for i ~ j with witness k: for x <= checked_up_to,
// X_k(x) = A(x) * (X_i(x) xor X_j(x)).
struct EquivEvidence {
  GodelIndex i, j, k;
  std::uint64_t checked_up_to = 0;
  EquivVerdict verdict = EquivVerdict::Consistent;
  std::optional<std::uint64_t> at;  // refuting / unanswerable point
};

EquivEvidence approx_equiv(const GodelIndex& i, const GodelIndex& j, const GodelIndex& k,
                           const SetOracle& a, std::uint64_t up_to);
// First candidate k giving consistent evidence, if any.
std::optional<EquivEvidence> find_equiv_witness(const GodelIndex& i, const GodelIndex& j,
                                                const std::vector<GodelIndex>& candidates,
                                                const SetOracle& a, std::uint64_t up_to);
// Indices 0..n-1 followed by the singletons {0}, ..., {n-1}.
std::vector<GodelIndex> small_witness_candidates(std::uint64_t n);

Json evidence_to_json(const EquivEvidence& ev);
EquivEvidence evidence_from_json(const Json& j);

// From g : A <= B join C, the set X = {x : g(x) even} and the two derived
// reductions A & X <= B and A & ~X <= C. Off their side, the derived maps
// send x to a fixed non-member of the target.
struct JoinSplit {
  GodelIndex x_index;
  ReductionWitness to_b;
  ReductionWitness to_c;
};
JoinSplit split_from_join_reduction(const ReductionWitness& g, const Natural& non_member_b,
                                    const Natural& non_member_c);

// chi_D(x) for D with p : D <= A & X and q : D <= A & ~X, computed by the
// range test / index recovery / budgeted lookup procedure. Empty when the
// answer needs data outside the trace.
std::optional<bool> meet_zero_decide(const ReductionWitness& p, const ReductionWitness& q,
                                     const GodelIndex& x_index, const SparseTrace& trace,
                                     const Natural& x);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// h(x) = c on A & (X \ Y), d off X, x otherwise: a reduction A & X <= A & Y.
// Backed by trace replay, so not a pure term.
ReductionWitness cone_reduction_witness(const GodelIndex& x_index, const GodelIndex& y_index,
                                        const Natural& c, const Natural& d,
                                        const SparseTrace& trace);

}  // namespace prm

#endif  // PRM_BA_HPP
