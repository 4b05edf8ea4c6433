#ifndef PRM_TEST_IDEAL_STRAIGHT_HPP
#define PRM_TEST_IDEAL_STRAIGHT_HPP

// g by the three numbered steps, written out longhand: linear search for m,
// division by two for the pair decomposition, the time account of r_{e-1}
// summed with the second interpreter.

#include <vector>

#include "naive_eval.hpp"
#include "prm/enumeration.hpp"
#include "prm/ideal.hpp"

namespace oracle {

inline prm::Natural straight_g(std::uint64_t x, const std::vector<prm::Natural>& f,
                               const prm::PsiFixture& psi) {
  using prm::Natural;
  // (1) greatest m with f(m) <= x; f(m + 1) must exist
  std::size_t m = 0;
  while (m + 1 < f.size() && f[m + 1] <= x) ++m;
  if (m + 1 >= f.size()) throw std::out_of_range("x beyond the f table");
  if (x == 0) return 0;
  std::uint64_t e = 0, odd = x;
  while (odd % 2 == 0) {
    odd /= 2;
    ++e;
  }
  const std::uint64_t l = (odd - 1) / 2;
  // (2) coding location test
  if (l < e) return 0;
  Natural account = 1;
  for (std::uint64_t d = 0; d + 1 <= e; ++d)
    account += naive_eval1(prm::decode(prm::GodelIndex(Natural(d))), f[m]).frames;
  if (account > Natural(x - 1)) return 0;
  // (3) x frames for chi_{X_u}(f(m))
  const prm::GodelIndex u = psi.psi1(Natural(e), Natural(x));
  Run r = naive_eval1(prm::decode(u), f[m]);
  if (r.frames > Natural(x) || r.value == 0) return 0;
  return f[m];
}

}  // namespace oracle

#endif
