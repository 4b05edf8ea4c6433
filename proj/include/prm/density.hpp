#ifndef PRM_DENSITY_HPP
#define PRM_DENSITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prm/enumeration.hpp"
#include "prm/json_util.hpp"
#include "prm/report.hpp"
#include "prm/sparse.hpp"

namespace prm {

enum class ReqState { SatisfiedA, SatisfiedB, Pending };
enum class Phase { Copying, Flipped };
std::string to_string(ReqState s);
std::string to_string(Phase p);

// One R_i-stage.
struct RequirementStatus {
  std::uint64_t i = 0;
  ReqState state = ReqState::Pending;
  Phase phase = Phase::Copying;
  std::uint64_t m0 = 0;
  std::optional<std::uint64_t> m1;
  std::optional<std::uint64_t> y;   // case (a)
  std::optional<std::uint64_t> z;   // case (b)
  std::optional<std::uint64_t> z1;  // case (b), second witness
  std::uint64_t start_tick = 0;     // ticks elapsed before the stage
  std::uint64_t ticks_used = 0;

  friend bool operator==(const RequirementStatus&, const RequirementStatus&) = default;
};

// Tick model: at tick t the next undefined point x of Y is defined and the
// two slow computations p_i(x) and chi_{A&X}(x) are launched; then every
// running computation advances by one unit. A computation of cost c launched
// at tick t therefore completes at tick t + c - 1. Computations still running
// when their phase ends are abandoned (done tick empty).
struct ProcessRecord {
  std::uint64_t requirement = 0;
  Phase phase = Phase::Copying;
  std::uint64_t x = 0;
  std::uint64_t launch = 0;
  std::optional<std::uint64_t> p_done;
  std::optional<std::uint64_t> chi_done;

  friend bool operator==(const ProcessRecord&, const ProcessRecord&) = default;
};

struct SchedulerEvent {
  std::uint64_t tick = 0;
  std::uint64_t requirement = 0;
  std::string what;  // start | case-a | case-b | satisfied-b | stuck | budget
  std::uint64_t x = 0;

  friend bool operator==(const SchedulerEvent&, const SchedulerEvent&) = default;
};

struct DensityTrace {
  GodelIndex x_index;
  std::vector<bool> y_bits;         // Y on [0, y_bits.size())
  std::vector<std::uint64_t> h_table;
  std::vector<RequirementStatus> requirements;
  std::uint64_t d = 0;
  std::uint64_t max_requirements = 0;
  std::uint64_t tick_budget = 0;
  std::uint64_t ticks_used = 0;
  bool exhausted = false;  // stopped because the prefix ran out
  std::vector<SchedulerEvent> log;
  std::vector<ProcessRecord> processes;
  std::string sparse_ref;

  friend bool operator==(const DensityTrace&, const DensityTrace&) = default;
};

// Units the chi stream spends on x: the X-membership evaluation plus the
// sparse construction's cost of deciding A(x).
Natural chi_cost(const GodelIndex& x_index, const SparseTrace& trace, std::uint64_t x);

// Least non-member of A in the sparse prefix.
std::uint64_t least_non_member(const SparseTrace& trace);

DensityTrace build_dense_subset(const GodelIndex& x_index, const SparseTrace& trace,
                                std::uint64_t max_requirements, std::uint64_t tick_budget);

Report verify_density(const DensityTrace& dt, const SparseTrace& trace);

Json density_to_json(const DensityTrace& dt);
DensityTrace density_from_json(const Json& j);

}  // namespace prm

#endif  // PRM_DENSITY_HPP
