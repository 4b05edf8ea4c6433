#ifndef PRM_IDEAL_HPP
#define PRM_IDEAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prm/enumeration.hpp"
#include "prm/json_util.hpp"
#include "prm/report.hpp"
#include "prm/setops.hpp"
#include "prm/sparse.hpp"

namespace prm {

// <i, j> = 2^i (2j + 1), a bijection N x N -> N \ {0}.
Natural pair(std::uint64_t i, const Natural& j);
// Throws std::domain_error for 0.
std::pair<std::uint64_t, Natural> unpair(const Natural& n);

// psi1(e, s): an approximation settling to psi(e). Fixtures:
//   constant:U          psi1(e, s) = U
//   eventually:U0:U1:S  psi1(e, s) = U0 for s < S, U1 afterwards
//   table:U0,U1,...     psi1(e, s) = U_min(e, k-1)
// Only the approximation is consumed; whether its limit enumerates the
// indices of an ideal is not checked.
struct PsiFixture {
  std::string kind;
  std::vector<Natural> values;
  std::uint64_t settle = 0;

  static PsiFixture parse(const std::string& text);
  std::string to_string() const;

  GodelIndex psi1(const Natural& e, const Natural& s) const;
  GodelIndex psi(const Natural& e) const;
  // psi1(e, s) = psi(e) for every s >= settle_bound(e).
  std::uint64_t settle_bound(const Natural& e) const;

  friend bool operator==(const PsiFixture&, const PsiFixture&) = default;
};

struct CodingLocation {
  std::uint64_t e = 0;
  Natural l;
  std::uint64_t m = 0;
  Natural n;

  friend bool operator==(const CodingLocation&, const CodingLocation&) = default;
};

// m if n is an R_e-coding location for f(m): n = <e, l> with l >= e,
// f(m) <= n < f(m + 1), and the time account of r_{e-1}(f(m)) fits in
// n - 1 steps. Throws OutOfPrefix when f(m + 1) is not known.
std::optional<std::uint64_t> is_coding_location(std::uint64_t e, const Natural& n,
                                                const SparseTrace& trace);

struct CodingLocationScan {
  std::vector<Natural> locations;
  // f(m + 1) > 3 * 2^(e+1) + r_steps(e - 1, f(m)) and m > <e, e>: enough
  // room for a location of the right residue.
  bool bound_holds = false;
};
CodingLocationScan coding_locations_for(std::uint64_t e, std::uint64_t m,
                                        const SparseTrace& trace);

struct IdealTrace {
  std::vector<std::uint64_t> g_table;  // g on [0, prefix_end)
  std::vector<bool> ci_bits;           // C_I on the same range
  std::vector<CodingLocation> locations;
  PsiFixture psi;
  std::string sparse_ref;

  friend bool operator==(const IdealTrace&, const IdealTrace&) = default;
};

// g(x) by the three-step definition, and C_I(x) = A(g(x)). Throw OutOfPrefix
// beyond the sparse prefix.
Natural g_value(const Natural& x, const PsiFixture& psi, const SparseTrace& trace);
bool ci_member(const Natural& x, const PsiFixture& psi, const SparseTrace& trace);

IdealTrace build_ideal(const PsiFixture& psi, const SparseTrace& trace);
Report verify_ideal(const IdealTrace& it, const SparseTrace& trace);

Json ideal_to_json(const IdealTrace& it);
IdealTrace ideal_from_json(const Json& j);

// Step account L(y) = p_steps(psi(e), y) + r_steps(e - 1, y) + 1.
Natural coding_account(std::uint64_t e, const PsiFixture& psi, const Natural& y);
// Second coordinate used by h at y: the least l >= max(e, L(y)) with
// <e, l> >= y, so that <e, l> lands in y's own interval of range(f).
Natural coding_slot(std::uint64_t e, const PsiFixture& psi, const Natural& y);

// Least y0 = f(m0) such that psi1(e, .) is settled from y0 on and, for each
// m >= m0 with f(m + 1) known, f(m) has an R_e-coding location and
// f(m + 1) > <e, coding_slot(f(m))>.
std::optional<Natural> find_threshold(std::uint64_t e, const IdealTrace& it,
                                      const SparseTrace& trace);

struct CodingReduction {
  std::uint64_t e = 0;
  std::optional<Natural> y0;  // empty: threshold not reached
  std::vector<Natural> h_table;  // h on [0, prefix_end); 0 below y0
  Verdict certificate;           // y in A & X_psi(e) <=> h(y) in C_I on [y0, prefix_end)
  bool reached() const noexcept { return y0.has_value(); }
};
CodingReduction coding_reduction(std::uint64_t e, const IdealTrace& it, const SparseTrace& trace);

// Least element of A & X_psi(0) in the prefix; throws std::runtime_error if
// there is none.
Natural least_a0(const PsiFixture& psi, const SparseTrace& trace);

// The join of A & X_psi(c) for c <= k, coded so that component c's element a
// is (k + 1) a + c.
std::optional<bool> psi_join_member(const Natural& target, const Natural& k,
                                    const PsiFixture& psi, const SparseTrace& trace);

enum class DecodeRoute { Rejected, Case1, Case2, Inconclusive, Anomaly };
std::string to_string(DecodeRoute r);

struct DecodedTarget {
  DecodeRoute route = DecodeRoute::Rejected;
  Natural target;                    // element of the join
  std::optional<std::uint64_t> component;
  bool psi_settled = false;          // psi1(c, x) settled for c <= <i, j>
  std::optional<bool> rj_bound;      // f(m + 1) > r_j(f(m)) at x = f(m)
  std::string note;
};

// Routes x through y = pj(x) and g(y) to a point of the join of
// A & X_psi(c), c <= <i, j>.
DecodedTarget h_requirement_decode(std::uint64_t i, const Natural& j, const ReductionWitness& pj,
                                   const IdealTrace& it, const SparseTrace& trace,
                                   const Natural& x, const Natural& a0);

}  // namespace prm

#endif  // PRM_IDEAL_HPP
