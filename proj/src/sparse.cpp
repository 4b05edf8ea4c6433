#include "prm/sparse.hpp"

#include <algorithm>
#include <cstdlib>

#include "prm/eval.hpp"

namespace prm {

std::uint64_t resource_cap_from_env() {
  const char* v = std::getenv("PRM_RESOURCE_CAP");
  if (v == nullptr || *v == '\0') return kDefaultResourceCap;
  Natural n = parse_natural(v);
  if (n == 0) throw std::invalid_argument("PRM_RESOURCE_CAP must be positive");
  return to_u64_saturating(n);
}

bool SparseBits::at(const Natural& x) const {
  if (x < 0 || x >= length) throw OutOfPrefix(x);
  return std::binary_search(ones.begin(), ones.end(), x);
}

Json sparse_bits_to_rle(const SparseBits& b) {
  Json runs = Json::array();
  if (b.length == 0) return runs;
  Natural pos = 0;
  std::size_t i = 0;
  while (i < b.ones.size()) {
    runs.push_back(natural_to_json(b.ones[i] - pos));
    std::size_t j = i;
    while (j + 1 < b.ones.size() && b.ones[j + 1] == b.ones[j] + 1) ++j;
    runs.push_back(natural_to_json(Natural(j - i + 1)));
    pos = b.ones[j] + 1;
    i = j + 1;
  }
  if (pos < b.length) runs.push_back(natural_to_json(b.length - pos));
  return runs;
}

SparseBits sparse_bits_from_rle(const Json& j) {
  const auto runs = naturals_from_json(j, "a_bits_rle");
  SparseBits b;
  b.length = 0;
  bool one = false;
  for (const Natural& r : runs) {
    if (one) {
      if (r > 1'000'000) throw FormatError("a_bits_rle: run of ones too long");
      for (Natural k = 0; k < r; ++k) b.ones.push_back(b.length + k);
    }
    b.length += r;
    one = !one;
  }
  return b;
}

std::optional<bool> SparseTrace::a_member(const Natural& x) const {
  if (x < 0 || x >= a_bits.length) return std::nullopt;
  return a_bits.at(x);
}

std::optional<std::uint64_t> SparseTrace::f_index(const Natural& x) const {
  if (x < 0 || x >= prefix_end()) return std::nullopt;
  auto it = std::lower_bound(f_table.begin(), f_table.end(), x);
  if (it == f_table.end() || *it != x) return std::nullopt;
  return static_cast<std::uint64_t>(it - f_table.begin());
}

std::optional<std::uint64_t> SparseTrace::stage_of(const Natural& x) const {
  if (x < 0 || x >= prefix_end()) return std::nullopt;
  auto it = std::upper_bound(f_table.begin(), f_table.end(), x);
  return static_cast<std::uint64_t>(it - f_table.begin()) - 1;
}

std::optional<Natural> SparseTrace::a_decision_cost(const Natural& x) const {
  if (x < 0 || x >= prefix_end()) return std::nullopt;
  if (auto k = f_index(x)) return stages[*k].N;
  return Natural(1);
}

std::optional<bool> SparseTrace::a_member_within(const Natural& x, const Natural& budget) const {
  auto cost = a_decision_cost(x);
  if (!cost || *cost > budget) return std::nullopt;
  return a_member(x);
}

SetOracle SparseTrace::a_oracle() const {
  auto bits = std::make_shared<const SparseBits>(a_bits);
  return SetOracle::from_replay(
      [bits](const Natural& x) -> std::optional<bool> { return bits->at(x); }, a_bits.length,
      "sparse-A");
}

GraphOracle SparseTrace::f_graph() const { return GraphOracle(f_table); }

SparseTrace build_sparse(std::uint64_t stages, std::uint64_t resource_cap) {
  if (stages < 1) throw std::invalid_argument("build_sparse: stages must be >= 1");
  if (resource_cap < 1) throw std::invalid_argument("build_sparse: resource cap must be >= 1");
  SparseTrace t;
  t.stages_requested = stages;
  t.resource_cap = resource_cap;
  t.f_table = {Natural(0)};
  t.a_bits.length = 0;

  Natural replay = 0;
  for (std::uint64_t s = 0; s < stages; ++s) {
    const Natural fs = t.f_table.back();
    StageRecord rec;
    rec.eval_frames = 0;
    bool cut = false;
    for (std::uint64_t j = 0; j <= s; ++j) {
      const Natural left = Natural(resource_cap) - rec.eval_frames;
      BoundedRun run =
          run_bounded(decode(GodelIndex(j)), std::span<const Natural>(&fs, 1), Budget{left});
      if (!run.outcome) {
        cut = true;
        break;
      }
      rec.eval_frames += run.outcome->steps;
      rec.p_values.push_back(std::move(run.outcome->value));
    }
    if (cut) {
      t.truncated = true;
      t.truncation_reason = "stage " + std::to_string(s + 1) + " exceeded the resource cap of " +
                            std::to_string(resource_cap) + " frames";
      break;
    }
    rec.z = 1 + std::max(fs, *std::max_element(rec.p_values.begin(), rec.p_values.end()));
    rec.replay_frames = replay;
    // +1 for the comparison producing z.
    const Natural own = rec.eval_frames + 1;
    rec.N = std::max(replay + own, rec.z);
    // Everything in (f(s), N) was declared while the slow work ran, so N is
    // the least undeclared candidate.
    rec.w = rec.N;
    rec.nonrange_lo = fs;
    rec.nonrange_hi = rec.w;
    replay += own;

    if (rec.p_values.back() == 0) t.a_bits.ones.push_back(fs);
    t.a_bits.length = rec.w;
    t.f_table.push_back(rec.w);
    t.stages.push_back(std::move(rec));
  }
  return t;
}

namespace {

std::string idx(std::uint64_t v) { return std::to_string(v); }

}  // namespace

Report verify_sparse(const SparseTrace& t) {
  Report rep;
  const std::size_t S = t.stages.size();

  const bool shape = !t.f_table.empty() && t.f_table.size() == S + 1;
  rep.add("shape", shape,
          shape ? "" : "f_table must hold exactly one more entry than there are stage records");
  if (!shape) return rep;

  rep.add("f(0)=0", t.f_table[0] == 0, t.f_table[0] == 0 ? "" : "f(0) = " + t.f_table[0].str());

  {
    std::string bad;
    for (std::size_t k = 0; k + 1 < t.f_table.size() && bad.empty(); ++k)
      if (t.f_table[k + 1] <= t.f_table[k]) bad = "f(" + idx(k + 1) + ") <= f(" + idx(k) + ")";
    rep.add("f strictly increasing", bad.empty(), bad);
  }

  {
    bool ok = t.a_bits.length == t.prefix_end();
    std::string bad = ok ? "" : "A prefix length " + t.a_bits.length.str() + " != f(last)";
    for (std::size_t i = 0; ok && i < t.a_bits.ones.size(); ++i) {
      if ((i > 0 && t.a_bits.ones[i] <= t.a_bits.ones[i - 1]) || t.a_bits.ones[i] < 0 ||
          t.a_bits.ones[i] >= t.a_bits.length) {
        ok = false;
        bad = "A positions not increasing or outside the prefix";
      }
    }
    rep.add("A prefix well-formed", ok, bad);
    if (!ok) return rep;
  }

  {
    const bool complete = t.truncated || S == t.stages_requested;
    rep.add("completion", complete && S <= t.stages_requested,
            complete ? "" : "untruncated trace stops before the requested stage count");
  }

  // Independent recomputation of p_j(f(s)).
  // Budgeted, so a corrupted f value cannot stall verification.
  std::vector<std::vector<Natural>> pv(S);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t j = 0; j <= s; ++j) {
      auto o = eval1_bounded(decode(GodelIndex(j)), t.f_table[s], Budget{Natural(t.resource_cap)});
      if (!o) {
        rep.add("stage values", false,
                "p_" + idx(j) + "(f(" + idx(s) + ")) exceeds the resource cap");
        return rep;
      }
      pv[s].push_back(std::move(o->value));
    }
  }

  {
    std::string bad;
    for (const Natural& x : t.a_bits.ones)
      if (!std::binary_search(t.f_table.begin(), t.f_table.end(), x)) {
        bad = "A contains " + x.str() + " which is not in range(f)";
        break;
      }
    rep.add("(*) A within range(f)", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t tt = 1; tt <= S && bad.empty(); ++tt)
      for (std::size_t j = 0; j < tt; ++j)
        if (!(t.f_table[tt] > pv[tt - 1][j])) {
          bad = "f(" + idx(tt) + ") <= p_" + idx(j) + "(f(" + idx(tt - 1) + "))";
          break;
        }
    rep.add("(**) f(t) > p_j(f(t-1))", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t n = 1; n + 1 <= S && bad.empty(); ++n)
      for (std::size_t i = 0; i < n; ++i)
        if (!(t.f_table[n + 1] > pv[n][i])) {
          bad = "f(" + idx(n + 1) + ") <= p_" + idx(i) + "(f(" + idx(n) + "))";
          break;
        }
    rep.add("(d) domination", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t s = 0; s < S && bad.empty(); ++s) {
      const bool a = t.a_bits.at(t.f_table[s]);
      if (a == (pv[s][s] > 0)) bad = "A(f(" + idx(s) + ")) equals the bit of X_" + idx(s);
    }
    rep.add("(a) diagonal witnesses", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t s = 0; s < S && bad.empty(); ++s) {
      const StageRecord& r = t.stages[s];
      if (r.nonrange_lo != t.f_table[s] || r.nonrange_hi != t.f_table[s + 1])
        bad = "stage " + idx(s + 1) + " declares (" + r.nonrange_lo.str() + ", " +
              r.nonrange_hi.str() + ")";
    }
    rep.add("(b) declared intervals tile the non-range", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t s = 0; s < S && bad.empty(); ++s) {
      const StageRecord& r = t.stages[s];
      if (!(r.N <= t.f_table[s + 1])) bad = "stage " + idx(s + 1) + ": N > f(s+1)";
      else if (r.w != t.f_table[s + 1]) bad = "stage " + idx(s + 1) + ": w != f(s+1)";
      else if (!(r.w >= r.z)) bad = "stage " + idx(s + 1) + ": w < z";
      else if (!(r.N >= r.z)) bad = "stage " + idx(s + 1) + ": N < z";
    }
    rep.add("(c) N <= f(s+1)", bad.empty(), bad);
  }

  {
    std::string bad;
    for (std::size_t s = 0; s < S && bad.empty(); ++s) {
      const StageRecord& r = t.stages[s];
      Natural z = t.f_table[s];
      for (const Natural& v : pv[s]) z = std::max(z, v);
      if (r.p_values != pv[s]) bad = "stage " + idx(s + 1) + ": recorded p-values differ";
      else if (r.z != z + 1) bad = "stage " + idx(s + 1) + ": z differs";
    }
    rep.add("stage values", bad.empty(), bad);
  }

  {
    // Replay from scratch; every field must agree.
    std::string bad;
    if (t.stages_requested >= 1 && t.resource_cap >= 1 && t.stages_requested <= 64) {
      const SparseTrace again = build_sparse(t.stages_requested, t.resource_cap);
      if (again.f_table != t.f_table) bad = "f_table";
      else if (again.a_bits != t.a_bits) bad = "a_bits";
      else if (again.stages != t.stages) bad = "stage records";
      else if (again.truncated != t.truncated) bad = "truncation marker";
      else if (again.truncation_reason != t.truncation_reason) bad = "truncation reason";
      if (!bad.empty()) bad = "replay disagrees on " + bad;
    } else {
      bad = "configuration out of range";
    }
    rep.add("replay", bad.empty(), bad);
  }
  return rep;
}

Json sparse_to_json(const SparseTrace& t) {
  Json j;
  j["kind"] = "sparse";
  j["cost_model_version"] = kCostModelVersion;
  j["config"] = {{"stages", t.stages_requested}, {"resource_cap", t.resource_cap}};
  j["f_table"] = naturals_to_json(t.f_table);
  j["a_bits_rle"] = sparse_bits_to_rle(t.a_bits);
  j["a_defined_up_to"] = natural_to_json(t.a_bits.length);
  Json recs = Json::array();
  for (const StageRecord& r : t.stages) {
    recs.push_back({{"p_values", naturals_to_json(r.p_values)},
                    {"eval_frames", natural_to_json(r.eval_frames)},
                    {"replay_frames", natural_to_json(r.replay_frames)},
                    {"z", natural_to_json(r.z)},
                    {"N", natural_to_json(r.N)},
                    {"w", natural_to_json(r.w)},
                    {"declared_nonrange",
                     {natural_to_json(r.nonrange_lo), natural_to_json(r.nonrange_hi)}}});
  }
  j["stage_records"] = recs;
  j["stages_completed"] = t.stages.size();
  j["truncated"] = t.truncated;
  if (t.truncated) j["truncation_reason"] = t.truncation_reason;
  return j;
}

SparseTrace sparse_from_json(const Json& j) {
  if (field(j, "kind") != "sparse") throw FormatError("not a sparse trace");
  require_cost_model_version(j);
  SparseTrace t;
  const Json& cfg = field(j, "config");
  t.stages_requested = field(cfg, "stages").get<std::uint64_t>();
  t.resource_cap = field(cfg, "resource_cap").get<std::uint64_t>();
  t.f_table = naturals_from_json(field(j, "f_table"), "f_table");
  t.a_bits = sparse_bits_from_rle(field(j, "a_bits_rle"));
  if (natural_from_json(field(j, "a_defined_up_to"), "a_defined_up_to") != t.a_bits.length)
    throw FormatError("a_defined_up_to disagrees with a_bits_rle");
  for (const Json& r : field(j, "stage_records")) {
    StageRecord rec;
    rec.p_values = naturals_from_json(field(r, "p_values"), "p_values");
    rec.eval_frames = natural_from_json(field(r, "eval_frames"), "eval_frames");
    rec.replay_frames = natural_from_json(field(r, "replay_frames"), "replay_frames");
    rec.z = natural_from_json(field(r, "z"), "z");
    rec.N = natural_from_json(field(r, "N"), "N");
    rec.w = natural_from_json(field(r, "w"), "w");
    const Json& d = field(r, "declared_nonrange");
    if (!d.is_array() || d.size() != 2) throw FormatError("declared_nonrange must be a pair");
    rec.nonrange_lo = natural_from_json(d[0], "declared_nonrange");
    rec.nonrange_hi = natural_from_json(d[1], "declared_nonrange");
    t.stages.push_back(std::move(rec));
  }
  if (field(j, "stages_completed").get<std::uint64_t>() != t.stages.size())
    throw FormatError("stages_completed disagrees with stage_records");
  t.truncated = field(j, "truncated").get<bool>();
  if (t.truncated) t.truncation_reason = field(j, "truncation_reason").get<std::string>();
  if (t.f_table.empty()) throw FormatError("f_table is empty");
  return t;
}

std::string sparse_ref(const SparseTrace& t) { return sha256_hex(canonical_dump(sparse_to_json(t))); }

}  // namespace prm
