#ifndef PRM_SETOPS_HPP
#define PRM_SETOPS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prm/enumeration.hpp"
#include "prm/json_util.hpp"
#include "prm/term.hpp"

namespace prm {

// A query outside the part of a set that is actually known.
class OutOfPrefix : public std::runtime_error {
 public:
  explicit OutOfPrefix(const Natural& x)
      : std::runtime_error("query at " + x.str() + " is beyond the defined prefix"), at_(x) {}
  const Natural& at() const noexcept { return at_; }

 private:
  Natural at_;
};

// Membership oracle for a set of naturals. Backed by an explicit prefix
// table, by a set index, or by a replay function. member() returns nothing
// for points the backing data does not cover; it never guesses.
class SetOracle {
 public:
  using Replay = std::function<std::optional<bool>(const Natural&)>;

  static SetOracle from_prefix(std::vector<bool> bits, std::string kind = "prefix");
  static SetOracle from_index(const GodelIndex& e);
  // defined_length empty means total.
  static SetOracle from_replay(Replay fn, std::optional<Natural> defined_length,
                               std::string kind);

  std::optional<bool> member(const Natural& x) const;
  bool member_or_throw(const Natural& x) const;

  // Number of points covered ([0, n)); empty for total oracles.
  const std::optional<Natural>& defined_length() const noexcept { return length_; }
  const std::string& kind() const noexcept { return kind_; }

  // Materialize [0, n) (throws OutOfPrefix if not covered).
  std::vector<bool> prefix_bits(std::uint64_t n) const;

 private:
  SetOracle() = default;
  std::string kind_;
  std::optional<Natural> length_;
  std::shared_ptr<const std::vector<bool>> table_;
  Replay replay_;
};

// {kind, defined_up_to, bits}
Json prefix_to_json(const std::string& kind, const std::vector<bool>& bits);
SetOracle prefix_from_json(const Json& j);

// Graph of a strictly increasing function, known on its first entries.
// (x, y) is in the graph iff x is covered and f(x) = y. Queries with y past
// the last known value cannot be answered.
class GraphOracle {
 public:
  explicit GraphOracle(std::vector<Natural> values);
  std::optional<bool> contains(const Natural& x, const Natural& y) const;
  const std::vector<Natural>& values() const noexcept { return values_; }

 private:
  std::vector<Natural> values_;
};

// Least x <= y with (x, y) in the graph. The scan stops once f(x) > y, which
// is sound for increasing f. Throws OutOfPrefix when the answer depends on
// values the oracle does not hold.
std::optional<std::uint64_t> graph_inverse(const GraphOracle& graph, const Natural& y);
bool graph_in_range(const GraphOracle& graph, const Natural& y);

// (B join C)(2x) = B(x), (B join C)(2x + 1) = C(x).
std::optional<bool> join_member(const SetOracle& b, const SetOracle& c, const Natural& z);

// A reducing function. Pure witnesses carry a unary term; the others are
// backed by trace replay and say so.
struct ReductionWitness {
  std::optional<Term> fn;
  std::function<std::optional<Natural>(const Natural&)> replay;
  std::optional<Natural> certified_up_to;
  std::string source;

  bool pure() const noexcept { return fn.has_value(); }
  std::optional<Natural> apply(const Natural& x) const;

  static ReductionWitness from_term(Term t, std::string source);
  static ReductionWitness from_replay(std::function<std::optional<Natural>(const Natural&)> f,
                                      std::string source);
};

// x -> x if x in X_e, c otherwise.
ReductionWitness restrict_reduction_witness(const GodelIndex& x_index, const Natural& c);
// x -> 2x if x in X_e, 2x + 1 otherwise.
ReductionWitness split_reduction_witness(const GodelIndex& x_index);

enum class VerdictKind { Pass, Fail, Inconclusive };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Pass;
  std::uint64_t checked_up_to = 0;  // Pass: every x <= checked_up_to verified
  std::uint64_t at = 0;             // Fail / Inconclusive: least offending x
  std::optional<bool> in_domain;    // membership of x in the source set
  std::optional<bool> in_codomain;  // membership of fn(x) in the target set
  bool passed() const noexcept { return kind == VerdictKind::Pass; }
};

// Checks x in A <=> w(x) in B for every x in [0, up_to]. On success the
// witness's certified_up_to is not touched; callers record it if they wish.
Verdict check_reduction(const ReductionWitness& w, const SetOracle& a, const SetOracle& b,
                        std::uint64_t up_to, bool parallel = true);

}  // namespace prm

#endif  // PRM_SETOPS_HPP
