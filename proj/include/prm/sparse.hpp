#ifndef PRM_SPARSE_HPP
#define PRM_SPARSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prm/json_util.hpp"
#include "prm/natural.hpp"
#include "prm/report.hpp"
#include "prm/setops.hpp"

namespace prm {

// Frames one stage may spend evaluating p_0..p_s before the run is cut off.
inline constexpr std::uint64_t kDefaultResourceCap = 10'000'000;
// kDefaultResourceCap, or the value of PRM_RESOURCE_CAP if set.
std::uint64_t resource_cap_from_env();

// Bookkeeping of stage s + 1 (which fixes A(f(s)) and f(s + 1)).
struct StageRecord {
  std::vector<Natural> p_values;  // p_0(f(s)) .. p_s(f(s))
  Natural eval_frames;            // frames spent on those evaluations
  Natural replay_frames;          // account for recomputing f(0..s)
  Natural z;                      // 1 + max(f(s), p_j(f(s)))
  Natural N;                      // max(eval + replay + 1, z)
  Natural w;                      // f(s + 1)
  Natural nonrange_lo, nonrange_hi;  // declared open interval (lo, hi)

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

// A bit prefix [0, length) stored by its set positions. The sets built here
// are far sparser than their prefixes are long.
struct SparseBits {
  Natural length;
  std::vector<Natural> ones;  // strictly increasing, all < length

  bool at(const Natural& x) const;  // x < length required
  friend bool operator==(const SparseBits&, const SparseBits&) = default;
};

// Alternating run lengths, zeros first.
Json sparse_bits_to_rle(const SparseBits& b);
SparseBits sparse_bits_from_rle(const Json& j);

struct SparseTrace {
  std::vector<Natural> f_table;     // f(0..stages_completed)
  SparseBits a_bits;                // A on [0, f(stages_completed))
  std::vector<StageRecord> stages;  // stages[s] is stage s + 1
  std::uint64_t stages_requested = 0;
  std::uint64_t resource_cap = kDefaultResourceCap;
  bool truncated = false;
  std::string truncation_reason;

  std::uint64_t stages_completed() const noexcept { return stages.size(); }
  // Length of the region where A and range(f) are decided.
  const Natural& prefix_end() const { return f_table.back(); }

  std::optional<bool> a_member(const Natural& x) const;
  // k with f(k) = x, for x inside the decided region.
  std::optional<std::uint64_t> f_index(const Natural& x) const;
  // Greatest m with f(m) <= x, provided f(m + 1) is known.
  std::optional<std::uint64_t> stage_of(const Natural& x) const;

  // Frames the construction's own procedure needs to decide A at x: the
  // stage account N for points of range(f), a single range test otherwise.
  std::optional<Natural> a_decision_cost(const Natural& x) const;
  // A(x) if it can be decided within the given number of frames.
  std::optional<bool> a_member_within(const Natural& x, const Natural& budget) const;

  SetOracle a_oracle() const;
  GraphOracle f_graph() const;

  friend bool operator==(const SparseTrace&, const SparseTrace&) = default;
};

SparseTrace build_sparse(std::uint64_t stages, std::uint64_t resource_cap = kDefaultResourceCap);

// Independent checks of a trace: the defining conditions, the stage
// invariants, and a replay of the construction compared field by field.
Report verify_sparse(const SparseTrace& trace);

Json sparse_to_json(const SparseTrace& t);
SparseTrace sparse_from_json(const Json& j);
// Content hash of the canonical serialization.
std::string sparse_ref(const SparseTrace& t);

}  // namespace prm

#endif  // PRM_SPARSE_HPP
