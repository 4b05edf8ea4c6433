#ifndef PRM_TEST_TERM_GEN_HPP
#define PRM_TEST_TERM_GEN_HPP

// Every well-formed term of a given arity and exact node count, by brute
// force over the grammar.

#include <map>
#include <utility>
#include <vector>

#include "prm/term.hpp"

namespace oracle {

class TermGen {
 public:
  explicit TermGen(std::size_t max_arity) : max_arity_(max_arity) {}

  const std::vector<prm::Term>& exact(std::size_t size, std::size_t arity) {
    auto key = std::make_pair(size, arity);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<prm::Term> out;
    if (arity >= 1 && arity <= max_arity_) {
      if (size == 1) {
        out.push_back(prm::Term::zero(arity));
        if (arity == 1) out.push_back(prm::Term::succ());
        for (std::size_t i = 1; i <= arity; ++i) out.push_back(prm::Term::proj(i, arity));
      } else {
        // C(outer of arity k; k inners of arity `arity`)
        for (std::size_t k = 1; k + 1 <= size - 1 && k <= max_arity_; ++k)
          for (std::size_t so = 1; so + k <= size - 1; ++so)
            for (const auto& o : exact(so, k)) inners(size - 1 - so, k, arity, {}, o, out);
        // R(base of arity - 1; step of arity + 1)
        if (arity >= 2)
          for (std::size_t sb = 1; sb + 1 <= size - 1; ++sb)
            for (const auto& b : exact(sb, arity - 1))
              for (const auto& s : exact(size - 1 - sb, arity + 1))
                out.push_back(prm::Term::prim_rec(b, s));
      }
    }
    return memo_[key] = std::move(out);
  }

  std::vector<prm::Term> up_to(std::size_t size, std::size_t arity) {
    std::vector<prm::Term> out;
    for (std::size_t s = 1; s <= size; ++s) {
      const auto& v = exact(s, arity);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

 private:
  void inners(std::size_t budget, std::size_t left, std::size_t arity, std::vector<prm::Term> acc,
              const prm::Term& outer, std::vector<prm::Term>& out) {
    if (left == 0) {
      if (budget == 0) out.push_back(prm::Term::comp(outer, acc));
      return;
    }
    for (std::size_t s = 1; s + (left - 1) <= budget; ++s)
      for (const auto& g : exact(s, arity)) {
        auto next = acc;
        next.push_back(g);
        inners(budget - s, left - 1, arity, std::move(next), outer, out);
      }
  }

  std::size_t max_arity_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<prm::Term>> memo_;
};

}  // namespace oracle

#endif
