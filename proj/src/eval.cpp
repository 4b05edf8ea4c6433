#include "prm/eval.hpp"

#include <limits>

namespace prm {

namespace {

struct Exhausted {};

class Machine {
 public:
  explicit Machine(std::uint64_t limit) : limit_(limit) {}

  Natural run(const Term& t, std::span<const Natural> args) {
    enter();
    switch (t.kind()) {
      case TermKind::Zero:
        return 0;
      case TermKind::Succ:
        return args[0] + 1;
      case TermKind::Proj:
        return args[t.proj_index() - 1];
      case TermKind::Comp: {
        std::vector<Natural> vals;
        vals.reserve(t.inners().size());
        for (const Term& inner : t.inners()) vals.push_back(run(inner, args));
        return run(t.outer(), vals);
      }
      case TermKind::PrimRec: {
        const std::size_t n = args.size() - 1;
        const Natural& y = args[n];
        Natural acc = run(t.base(), args.first(n));
        std::vector<Natural> step_args(args.begin(), args.begin() + n);
        step_args.emplace_back(0);
        step_args.emplace_back(0);
        for (Natural i = 0; i < y; ++i) {
          step_args[n] = i;
          step_args[n + 1] = std::move(acc);
          acc = run(t.step(), step_args);
        }
        return acc;
      }
    }
    return 0;
  }

  std::uint64_t used() const { return used_; }

 private:
  void enter() {
    if (used_ == limit_) throw Exhausted{};
    ++used_;
  }

  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

void check_call(const Term& term, std::span<const Natural> args) {
  const std::size_t n = term.arity();
  if (args.size() != n) {
    throw ValidationError("", "term of arity " + std::to_string(n) + " applied to " +
                                  std::to_string(args.size()) + " arguments");
  }
  for (const Natural& a : args) require_natural(a, "argument");
}

}  // namespace

EvalOutcome eval(const Term& term, std::span<const Natural> args) {
  check_call(term, args);
  Machine m(std::numeric_limits<std::uint64_t>::max());
  Natural v = m.run(term, args);
  return {std::move(v), Natural(m.used())};
}

BoundedRun run_bounded(const Term& term, std::span<const Natural> args, const Budget& budget) {
  check_call(term, args);
  require_natural(budget.max_steps, "budget");
  Machine m(to_u64_saturating(budget.max_steps));
  try {
    Natural v = m.run(term, args);
    return {EvalOutcome{std::move(v), Natural(m.used())}, Natural(m.used())};
  } catch (const Exhausted&) {
    return {std::nullopt, Natural(m.used())};
  }
}

std::optional<EvalOutcome> eval_bounded(const Term& term, std::span<const Natural> args,
                                        const Budget& budget) {
  return run_bounded(term, args, budget).outcome;
}

}  // namespace prm
