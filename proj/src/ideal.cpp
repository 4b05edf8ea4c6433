#include "prm/ideal.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/algorithm/string.hpp>

#include "prm/kernels.hpp"

namespace prm {

Natural pair(std::uint64_t i, const Natural& j) {
  require_natural(j, "pair argument");
  Natural out = 2 * j + 1;
  out <<= static_cast<unsigned>(i);
  return out;
}

std::pair<std::uint64_t, Natural> unpair(const Natural& n) {
  if (n <= 0) throw std::domain_error("unpair: 0 is not of the form 2^i (2j + 1)");
  const auto i = static_cast<std::uint64_t>(boost::multiprecision::lsb(n));
  Natural odd = n >> static_cast<unsigned>(i);
  return {i, (odd - 1) / 2};
}

// --- psi fixtures -----------------------------------------------------------

namespace {

Natural parse_value(const std::string& s, const std::string& text) {
  try {
    return parse_natural(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "' in psi fixture '" + text + "'");
  }
}

}  // namespace

PsiFixture PsiFixture::parse(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(":"));
  PsiFixture p;
  p.kind = parts[0];
  if (p.kind == "constant" && parts.size() == 2) {
    p.values = {parse_value(parts[1], text)};
  } else if (p.kind == "eventually" && parts.size() == 4) {
    p.values = {parse_value(parts[1], text), parse_value(parts[2], text)};
    p.settle = to_u64(parse_value(parts[3], text));
  } else if (p.kind == "table" && parts.size() == 2 && !parts[1].empty()) {
    std::vector<std::string> items;
    boost::split(items, parts[1], boost::is_any_of(","));
    for (const auto& s : items) p.values.push_back(parse_value(s, text));
  } else {
    throw std::invalid_argument("psi fixture '" + text +
                                "' is not constant:U, eventually:U0:U1:S or table:U0,U1,...");
  }
  return p;
}

std::string PsiFixture::to_string() const {
  if (kind == "constant") return "constant:" + values.at(0).str();
  if (kind == "eventually")
    return "eventually:" + values.at(0).str() + ":" + values.at(1).str() + ":" +
           std::to_string(settle);
  std::string out = "table:";
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + values[k].str();
  return out;
}

GodelIndex PsiFixture::psi1(const Natural& e, const Natural& s) const {
  if (kind == "eventually") return GodelIndex(s < settle ? values[0] : values[1]);
  return psi(e);
}

GodelIndex PsiFixture::psi(const Natural& e) const {
  if (kind == "constant") return GodelIndex(values[0]);
  if (kind == "eventually") return GodelIndex(values[1]);
  const Natural last = values.size() - 1;
  return GodelIndex(values[to_u64(e < last ? e : last)]);
}

std::uint64_t PsiFixture::settle_bound(const Natural&) const { return settle; }

// --- coding locations -------------------------------------------------------

std::optional<std::uint64_t> is_coding_location(std::uint64_t e, const Natural& n,
                                                const SparseTrace& trace) {
  if (n <= 0) return std::nullopt;
  const auto [ei, l] = unpair(n);
  if (ei != e || l < e) return std::nullopt;
  const auto m = trace.stage_of(n);
  if (!m) throw OutOfPrefix(n);
  const auto te = static_cast<std::int64_t>(e) - 1;
  if (!r_steps_within(te, trace.f_table[*m], n - 1)) return std::nullopt;
  return m;
}

CodingLocationScan coding_locations_for(std::uint64_t e, std::uint64_t m,
                                        const SparseTrace& trace) {
  if (m + 1 > trace.stages_completed()) throw OutOfPrefix(trace.prefix_end());
  const Natural& lo = trace.f_table[m];
  const Natural& hi = trace.f_table[m + 1];
  CodingLocationScan scan;
  // Only the residue class of <e, .> can qualify.
  const Natural step = pair(e + 1, 0);  // 2^(e+1)
  Natural n = pair(e, 0);
  if (n < lo) n += ((lo - n + step - 1) / step) * step;
  for (; n < hi; n += step) {
    if (is_coding_location(e, n, trace)) scan.locations.push_back(n);
  }
  const Natural q = 3 * step + r_steps(static_cast<std::int64_t>(e) - 1, lo);
  scan.bound_holds = hi > q && Natural(m) > pair(e, e);
  return scan;
}

// --- g and C_I --------------------------------------------------------------

Natural g_value(const Natural& x, const PsiFixture& psi, const SparseTrace& trace) {
  const auto m = trace.stage_of(x);
  if (!m) throw OutOfPrefix(x);
  if (x == 0) return 0;
  const std::uint64_t e = unpair(x).first;
  if (!is_coding_location(e, x, trace)) return 0;
  const Natural& fm = trace.f_table[*m];
  const GodelIndex u = psi.psi1(e, x);
  auto out = eval1_bounded(decode(u), fm, Budget{x});
  if (out && out->value > 0) return fm;
  return 0;
}

bool ci_member(const Natural& x, const PsiFixture& psi, const SparseTrace& trace) {
  const Natural g = g_value(x, psi, trace);
  return g != 0 && *trace.a_member(g);
}

namespace {

std::uint64_t prefix_u64(const SparseTrace& trace) {
  const Natural& end = trace.prefix_end();
  if (end > Natural(1) << 24) throw std::length_error("sparse prefix too long for a g table");
  return to_u64(end);
}

void same_ref(const IdealTrace& it, const SparseTrace& trace) {
  if (it.sparse_ref != sparse_ref(trace))
    throw std::invalid_argument("ideal trace was built over a different sparse trace");
}

std::vector<CodingLocation> scan_locations(const SparseTrace& trace) {
  std::vector<CodingLocation> out;
  const std::uint64_t end = prefix_u64(trace);
  for (std::uint64_t n = 1; n < end; ++n) {
    const auto [e, l] = unpair(n);
    if (auto m = is_coding_location(e, n, trace)) out.push_back({e, l, *m, n});
  }
  return out;
}

}  // namespace

IdealTrace build_ideal(const PsiFixture& psi, const SparseTrace& trace) {
  IdealTrace it;
  const std::uint64_t end = prefix_u64(trace);
  it.psi = psi;
  it.sparse_ref = sparse_ref(trace);
  it.g_table.resize(end);
  it.ci_bits.resize(end);
  for (std::uint64_t x = 0; x < end; ++x) {
    const Natural g = g_value(x, psi, trace);
    it.g_table[x] = to_u64(g);
    it.ci_bits[x] = g != 0 && *trace.a_member(g);
  }
  it.locations = scan_locations(trace);
  return it;
}

Report verify_ideal(const IdealTrace& it, const SparseTrace& trace) {
  Report rep;
  rep.add("sparse-ref", it.sparse_ref == sparse_ref(trace), "trace hash " + it.sparse_ref);
  const Natural& end = trace.prefix_end();
  const bool shape = Natural(it.g_table.size()) == end && Natural(it.ci_bits.size()) == end;
  rep.add("shape", shape, "g_table and ci_bits must cover [0, " + end.str() + ")");
  if (!shape) return rep;
  const std::uint64_t n = it.g_table.size();

  std::string bad;
  for (std::uint64_t x = 0; x < n && bad.empty(); ++x) {
    const Natural g = it.g_table[x];
    if (g != 0 && (!trace.f_index(g) || g > x)) bad = "g(" + std::to_string(x) + ") = " + g.str();
  }
  rep.add("g-range", bad.empty(), bad.empty() ? "g takes values in {0} + range(f)" : bad);

  bad.clear();
  for (std::uint64_t x = 0; x < n && bad.empty(); ++x) {
    const Natural g = it.g_table[x];
    const bool want = g != 0 && trace.f_index(g) && trace.a_member(g).value_or(false);
    if (it.ci_bits[x] != want) bad = "C_I(" + std::to_string(x) + ") differs from A(g(x))";
  }
  rep.add("ci-is-preimage", bad.empty(), bad);
  rep.add("zero-not-in-ci", n == 0 || !it.ci_bits[0], "0 must lie outside C_I");

  bad.clear();
  std::vector<CodingLocation> expect;
  try {
    expect = scan_locations(trace);
  } catch (const std::exception& ex) {
    bad = ex.what();
  }
  if (bad.empty() && expect != it.locations) {
    bad = "recorded coding locations differ from a scan (" + std::to_string(it.locations.size()) +
          " recorded, " + std::to_string(expect.size()) + " found)";
  }
  rep.add("coding-locations", bad.empty(), bad);

  bad.clear();
  for (std::uint64_t x = 0; x < n && bad.empty(); ++x) {
    if (it.g_table[x] == 0) continue;
    auto hit = std::find_if(expect.begin(), expect.end(),
                            [&](const CodingLocation& c) { return c.n == x; });
    if (hit == expect.end() || trace.f_table[hit->m] != it.g_table[x])
      bad = "g(" + std::to_string(x) + ") != 0 but x is not a coding location for g(x)";
  }
  rep.add("g-at-locations", bad.empty(), bad);

  bad.clear();
  for (std::uint64_t x = 0; x < n && bad.empty(); ++x) {
    const Natural g = g_value(x, it.psi, trace);
    if (g != it.g_table[x])
      bad = "g(" + std::to_string(x) + "): recorded " + std::to_string(it.g_table[x]) +
            ", replay " + g.str();
  }
  rep.add("replay", bad.empty(), bad);
  return rep;
}

Json ideal_to_json(const IdealTrace& it) {
  Json j;
  j["kind"] = "ideal";
  j["cost_model_version"] = kCostModelVersion;
  j["psi_fixture"] = it.psi.to_string();
  j["sparse_ref"] = it.sparse_ref;
  j["g_table"] = it.g_table;
  j["ci_bits_rle"] = rle_encode(it.ci_bits);
  Json locs = Json::array();
  for (const auto& c : it.locations)
    locs.push_back({natural_to_json(c.n), c.e, natural_to_json(c.l), c.m});
  j["coding_locations"] = locs;
  return j;
}

IdealTrace ideal_from_json(const Json& j) {
  if (field(j, "kind") != "ideal") throw FormatError("not an ideal trace");
  require_cost_model_version(j);
  IdealTrace it;
  try {
    it.psi = PsiFixture::parse(field(j, "psi_fixture").get<std::string>());
  } catch (const std::invalid_argument& ex) {
    throw FormatError(ex.what());
  }
  it.sparse_ref = field(j, "sparse_ref").get<std::string>();
  it.g_table = field(j, "g_table").get<std::vector<std::uint64_t>>();
  it.ci_bits = rle_decode(field(j, "ci_bits_rle").get<std::vector<std::uint64_t>>());
  for (const Json& c : field(j, "coding_locations")) {
    if (!c.is_array() || c.size() != 4) throw FormatError("coding location must be [n, e, l, m]");
    it.locations.push_back({c[1].get<std::uint64_t>(), natural_from_json(c[2], "l"),
                            c[3].get<std::uint64_t>(), natural_from_json(c[0], "n")});
  }
  return it;
}

// --- the R_e reduction ------------------------------------------------------

Natural coding_account(std::uint64_t e, const PsiFixture& psi, const Natural& y) {
  return p_steps(psi.psi(e), y) + r_steps(static_cast<std::int64_t>(e) - 1, y) + 1;
}

Natural coding_slot(std::uint64_t e, const PsiFixture& psi, const Natural& y) {
  const Natural unit = pair(e, 0);
  const Natural q = (y + unit - 1) / unit;  // need 2l + 1 >= q
  return std::max({Natural(e), coding_account(e, psi, y), Natural(q / 2)});
}

std::optional<Natural> find_threshold(std::uint64_t e, const IdealTrace& it,
                                      const SparseTrace& trace) {
  same_ref(it, trace);
  const std::uint64_t stages = trace.stages_completed();
  // good[m]: bullets two and three at f(m).
  std::vector<bool> good(stages);
  for (std::uint64_t m = 0; m < stages; ++m) {
    const Natural& fm = trace.f_table[m];
    good[m] = !coding_locations_for(e, m, trace).locations.empty() &&
              trace.f_table[m + 1] > pair(e, coding_slot(e, it.psi, fm));
  }
  for (std::uint64_t m0 = 0; m0 < stages; ++m0) {
    if (Natural(it.psi.settle_bound(e)) > trace.f_table[m0]) continue;
    if (std::all_of(good.begin() + m0, good.end(), [](bool b) { return b; }))
      return trace.f_table[m0];
  }
  return std::nullopt;
}

CodingReduction coding_reduction(std::uint64_t e, const IdealTrace& it, const SparseTrace& trace) {
  CodingReduction out;
  out.e = e;
  out.y0 = find_threshold(e, it, trace);
  const std::uint64_t end = prefix_u64(trace);
  out.h_table.assign(end, Natural(0));
  if (!out.y0) {
    out.certificate.kind = VerdictKind::Inconclusive;
    return out;
  }
  const std::uint64_t y0 = to_u64(*out.y0);
  const GodelIndex target = it.psi.psi(e);
  for (std::uint64_t y = y0; y < end; ++y) {
    if (!trace.f_index(y) || !set_char(target, y)) continue;
    out.h_table[y] = pair(e, coding_slot(e, it.psi, y));
  }

  enum { kOk = 0, kMismatch = 1, kUnknown = 2 };
  auto in_ci = [&](const Natural& h) -> std::optional<bool> {
    if (h >= it.ci_bits.size()) return std::nullopt;
    return it.ci_bits[to_u64(h)];
  };
  auto flagged = kernels::first_flagged(y0, end, [&](std::uint64_t y) {
    const bool lhs = *trace.a_member(y) && set_char(target, y);
    auto rhs = in_ci(out.h_table[y]);
    if (!rhs) return static_cast<int>(kUnknown);
    return static_cast<int>(lhs == *rhs ? kOk : kMismatch);
  });
  Verdict& v = out.certificate;
  v.checked_up_to = end - 1;
  if (flagged) {
    v.kind = flagged->status == kMismatch ? VerdictKind::Fail : VerdictKind::Inconclusive;
    v.at = flagged->x;
    v.checked_up_to = flagged->x == y0 ? y0 : flagged->x - 1;
    v.in_domain = *trace.a_member(flagged->x) && set_char(target, flagged->x);
    v.in_codomain = in_ci(out.h_table[flagged->x]);
  }
  return out;
}

// --- the H requirement ------------------------------------------------------

Natural least_a0(const PsiFixture& psi, const SparseTrace& trace) {
  const GodelIndex x0 = psi.psi(0);
  for (const Natural& a : trace.a_bits.ones)
    if (set_char(x0, a)) return a;
  throw std::runtime_error("A & X_psi(0) has no element in the sparse prefix");
}

std::optional<bool> psi_join_member(const Natural& target, const Natural& k,
                                    const PsiFixture& psi, const SparseTrace& trace) {
  const Natural width = k + 1;
  const Natural c = target % width;
  const Natural a = target / width;
  auto in_a = trace.a_member(a);
  if (!in_a) return std::nullopt;
  return *in_a && set_char(psi.psi(c), a);
}

std::string to_string(DecodeRoute r) {
  switch (r) {
    case DecodeRoute::Rejected: return "rejected";
    case DecodeRoute::Case1: return "case-1";
    case DecodeRoute::Case2: return "case-2";
    case DecodeRoute::Inconclusive: return "inconclusive";
    case DecodeRoute::Anomaly: return "anomaly";
  }
  return "?";
}

DecodedTarget h_requirement_decode(std::uint64_t i, const Natural& j, const ReductionWitness& pj,
                                   const IdealTrace& it, const SparseTrace& trace,
                                   const Natural& x, const Natural& a0) {
  DecodedTarget out;
  const Natural k_top = pair(i, j);
  // The fixtures' settling bounds do not depend on the argument.
  out.psi_settled = Natural(it.psi.settle_bound(0)) <= x;
  auto inconclusive = [&](std::string why) {
    out.route = DecodeRoute::Inconclusive;
    out.note = std::move(why);
    return out;
  };
  if (x >= trace.prefix_end()) return inconclusive("x beyond the sparse prefix");

  const auto m = trace.f_index(x);
  if (!m || !set_char(GodelIndex(Natural(i)), x)) {
    out.note = "x outside range(f) & X_i";
    return out;
  }
  if (*m + 1 <= trace.stages_completed() && j <= 4096) {
    out.rj_bound = trace.f_table[*m + 1] > r(static_cast<std::int64_t>(j), x);
  }

  const auto y = pj.apply(x);
  if (!y) return inconclusive("p_j(x) unavailable");
  if (*y >= it.g_table.size()) return inconclusive("p_j(x) beyond the g table");
  const Natural gy = it.g_table[to_u64(*y)];
  const auto k = gy == 0 ? std::nullopt : trace.f_index(gy);
  if (!k) {
    out.note = "g(y) outside range(f) - {0}";
    return out;
  }

  if (*k < *m) {
    out.route = DecodeRoute::Case1;
    auto in_a = trace.a_member_within(gy, x);
    if (!in_a) return inconclusive("A(g(y)) not decided within x frames");
    if (*in_a) {
      out.target = k_top + 1;
      out.target *= a0;
      out.component = 0;
    }
    return out;
  }
  if (*k > *m) {
    out.route = DecodeRoute::Anomaly;
    out.note = "g(y) = f(k) with k > m: p_j(x) >= f(m + 1), x is not large enough";
    return out;
  }

  const std::uint64_t e = unpair(*y).first;
  if (Natural(e) > k_top) {
    out.route = DecodeRoute::Anomaly;
    out.note = "y is a coding location for e = " + std::to_string(e) + " > <i, j>";
    return out;
  }
  out.route = DecodeRoute::Case2;
  auto chi = eval1_bounded(decode(it.psi.psi(e)), gy, Budget{*y});
  if (chi) {
    out.target = (k_top + 1) * gy + e;
    out.component = e;
  } else {
    out.note = "X_psi(e)(g(y)) not computed within y frames";
  }
  return out;
}

}  // namespace prm
