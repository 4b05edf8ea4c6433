#ifndef PRM_TEST_MUTATION_HPP
#define PRM_TEST_MUTATION_HPP

// Single-bit mutations of a trace document. Only construction output is
// mutated: the kind tag, the cost model version and the construction's
// inputs (listed per call) are left alone.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "prm/json_util.hpp"
#include "prm/natural.hpp"

namespace mutation {

using prm::Json;

inline void collect_leaves(const Json& j, const std::string& at,
                           const std::set<std::string>& skip, std::vector<std::string>& out) {
  if (skip.count(at)) return;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      collect_leaves(it.value(), at + "/" + it.key(), skip, out);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      collect_leaves(j[k], at + "/" + std::to_string(k), skip, out);
  } else if (j.is_number_unsigned() || j.is_number_integer() || j.is_boolean() ||
             (j.is_string() && !j.get<std::string>().empty())) {
    out.push_back(at);
  }
}

struct Mutant {
  Json doc;
  std::string where;
};

// Flips one bit of one leaf. Numbers flip a bit at or below their top bit, so
// values stay within a factor of two; strings flip a low bit of one character.
inline Mutant flip_one(const Json& doc, const std::vector<std::string>& leaves,
                       std::mt19937_64& rng) {
  Mutant m{doc, leaves[rng() % leaves.size()]};
  Json& leaf = m.doc[Json::json_pointer(m.where)];
  if (leaf.is_boolean()) {
    leaf = !leaf.get<bool>();
  } else if (leaf.is_string()) {
    std::string s = leaf.get<std::string>();
    const std::size_t pos = rng() % s.size();
    s[pos] = static_cast<char>(s[pos] ^ (1 << (rng() % 6)));
    leaf = s;
  } else {
    const std::uint64_t v = leaf.get<std::uint64_t>();
    const std::uint64_t width = prm::bit_length(prm::Natural(v)) + 1;
    leaf = v ^ (std::uint64_t{1} << (rng() % std::min<std::uint64_t>(width, 63)));
  }
  return m;
}

struct Outcome {
  int tried = 0;
  int caught = 0;
  std::vector<std::string> missed;
};

// verify(doc) returns true when the document is accepted. Exceptions while
// loading count as a reported failure.
inline Outcome run(const Json& golden, const std::set<std::string>& skip, int count,
                   std::uint64_t seed, const std::function<bool(const Json&)>& verify) {
  std::set<std::string> all = skip;
  all.insert("/kind");
  all.insert("/cost_model_version");
  std::vector<std::string> leaves;
  collect_leaves(golden, "", all, leaves);
  std::mt19937_64 rng(seed);
  Outcome out;
  for (int k = 0; k < count; ++k) {
    Mutant m = flip_one(golden, leaves, rng);
    ++out.tried;
    bool accepted;
    try {
      accepted = verify(m.doc);
    } catch (const std::exception&) {
      accepted = false;
    }
    if (accepted)
      out.missed.push_back(m.where);
    else
      ++out.caught;
  }
  return out;
}

}  // namespace mutation

#endif
