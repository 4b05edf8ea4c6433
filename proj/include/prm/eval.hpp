#ifndef PRM_EVAL_HPP
#define PRM_EVAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "prm/natural.hpp"
#include "prm/term.hpp"

namespace prm {

// Cost model: every node evaluation enters one frame, plus the frames of the
// sub-evaluations it performs. A recursion node on argument y performs one
// base evaluation and y step evaluations. Bump kCostModelVersion whenever
// this accounting changes; serialized traces carry it.
inline constexpr int kCostModelVersion = 1;

struct EvalOutcome {
  Natural value;
  Natural steps;

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

struct Budget {
  Natural max_steps;
};

// Result of a budgeted run: outcome is empty iff the budget was exceeded, in
// which case consumed == budget.
struct BoundedRun {
  std::optional<EvalOutcome> outcome;
  Natural consumed;
};

// Throws ValidationError for malformed terms or an argument-count mismatch.
EvalOutcome eval(const Term& term, std::span<const Natural> args);
std::optional<EvalOutcome> eval_bounded(const Term& term, std::span<const Natural> args,
                                        const Budget& budget);
BoundedRun run_bounded(const Term& term, std::span<const Natural> args, const Budget& budget);

inline EvalOutcome eval1(const Term& term, const Natural& x) {
  return eval(term, std::span<const Natural>(&x, 1));
}

inline std::optional<EvalOutcome> eval1_bounded(const Term& term, const Natural& x,
                                                const Budget& budget) {
  return eval_bounded(term, std::span<const Natural>(&x, 1), budget);
}

}  // namespace prm

#endif  // PRM_EVAL_HPP
