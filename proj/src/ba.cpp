#include "prm/ba.hpp"

#include "prm/kernels.hpp"
#include "prm/term_library.hpp"

namespace prm {

namespace {

void same_trace(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.trace_ref != b.trace_ref)
    throw TraceMismatch("elements belong to different sparse traces (" + a.trace_ref + " vs " +
                        b.trace_ref + ")");
}

// 1 - parity(g(x)) for a unary g.
Term even_test(const Term& g) {
  return lib::after(lib::sgbar(), lib::after(lib::parity(), g));
}

}  // namespace

AlgebraElement make_element(const GodelIndex& e, const SparseTrace& trace) {
  return {e, sparse_ref(trace)};
}

AlgebraElement elem_join(const AlgebraElement& a, const AlgebraElement& b) {
  same_trace(a, b);
  return {index_union(a.e, b.e), a.trace_ref};
}

AlgebraElement elem_meet(const AlgebraElement& a, const AlgebraElement& b) {
  same_trace(a, b);
  return {index_intersect(a.e, b.e), a.trace_ref};
}

AlgebraElement elem_compl(const AlgebraElement& a) {
  return {index_complement(a.e), a.trace_ref};
}

std::optional<bool> elem_member(const AlgebraElement& a, const SparseTrace& trace,
                                const Natural& x) {
  if (sparse_ref(trace) != a.trace_ref)
    throw TraceMismatch("element was built over trace " + a.trace_ref);
  auto in_a = trace.a_member(x);
  if (!in_a) return std::nullopt;
  return *in_a && set_char(a.e, x);
}

std::string to_string(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::Consistent: return "consistent";
    case EquivVerdict::Refuted: return "refuted";
    case EquivVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

EquivEvidence approx_equiv(const GodelIndex& i, const GodelIndex& j, const GodelIndex& k,
                           const SetOracle& a, std::uint64_t up_to) {
  enum { kOk = 0, kRefuted = 1, kUnknown = 2 };
  auto flagged = kernels::first_flagged(0, up_to + 1, [&](std::uint64_t x) {
    const Natural nx(x);
    auto in_a = a.member(nx);
    if (!in_a) return static_cast<int>(kUnknown);
    const bool want = *in_a && (set_char(i, nx) != set_char(j, nx));
    return static_cast<int>(want == set_char(k, nx) ? kOk : kRefuted);
  });
  EquivEvidence ev{i, j, k, up_to, EquivVerdict::Consistent, std::nullopt};
  if (flagged) {
    ev.at = flagged->x;
    ev.checked_up_to = flagged->x == 0 ? 0 : flagged->x - 1;
    ev.verdict = flagged->status == kRefuted ? EquivVerdict::Refuted : EquivVerdict::Inconclusive;
  }
  return ev;
}

std::optional<EquivEvidence> find_equiv_witness(const GodelIndex& i, const GodelIndex& j,
                                                const std::vector<GodelIndex>& candidates,
                                                const SetOracle& a, std::uint64_t up_to) {
  for (const auto& k : candidates) {
    auto ev = approx_equiv(i, j, k, a, up_to);
    if (ev.verdict == EquivVerdict::Consistent) return ev;
  }
  return std::nullopt;
}

std::vector<GodelIndex> small_witness_candidates(std::uint64_t n) {
  std::vector<GodelIndex> out;
  out.reserve(2 * n);
  for (std::uint64_t e = 0; e < n; ++e) out.emplace_back(Natural(e));
  for (std::uint64_t c = 0; c < n; ++c) out.push_back(encode(lib::eq_const(Natural(c))));
  return out;
}

Json evidence_to_json(const EquivEvidence& ev) {
  Json j;
  j["i"] = natural_to_json(ev.i.value);
  j["j"] = natural_to_json(ev.j.value);
  j["k"] = natural_to_json(ev.k.value);
  j["checked_up_to"] = ev.checked_up_to;
  j["verdict"] = to_string(ev.verdict);
  j["at"] = ev.at ? Json(*ev.at) : Json(nullptr);
  return j;
}

EquivEvidence evidence_from_json(const Json& j) {
  EquivEvidence ev;
  ev.i = GodelIndex(natural_from_json(field(j, "i"), "i"));
  ev.j = GodelIndex(natural_from_json(field(j, "j"), "j"));
  ev.k = GodelIndex(natural_from_json(field(j, "k"), "k"));
  ev.checked_up_to = field(j, "checked_up_to").get<std::uint64_t>();
  const auto v = field(j, "verdict").get<std::string>();
  if (v == "consistent") ev.verdict = EquivVerdict::Consistent;
  else if (v == "refuted") ev.verdict = EquivVerdict::Refuted;
  else if (v == "inconclusive") ev.verdict = EquivVerdict::Inconclusive;
  else throw FormatError("unknown verdict '" + v + "'");
  const auto& at = field(j, "at");
  if (!at.is_null()) ev.at = at.get<std::uint64_t>();
  return ev;
}

JoinSplit split_from_join_reduction(const ReductionWitness& g, const Natural& non_member_b,
                                    const Natural& non_member_c) {
  if (!g.pure())
    throw PreconditionError("the join reduction must be a term to define X as a set index");
  const Term& gt = *g.fn;
  const Term even = even_test(gt);
  const Term g1 = lib::after(lib::half(), gt);
  JoinSplit out{encode(even),
                ReductionWitness::from_term(
                    Term::comp(lib::ite(), {g1, lib::constant(non_member_b), even}), "join-left"),
                ReductionWitness::from_term(
                    Term::comp(lib::ite(), {lib::constant(non_member_c), g1, even}),
                    "join-right")};
  return out;
}

std::optional<bool> meet_zero_decide(const ReductionWitness& p, const ReductionWitness& q,
                                     const GodelIndex& x_index, const SparseTrace& trace,
                                     const Natural& x) {
  const auto px = p.apply(x);
  const auto qx = q.apply(x);
  if (!px || !qx) return std::nullopt;
  const GraphOracle graph = trace.f_graph();
  std::optional<std::uint64_t> k, l;
  try {
    k = graph_inverse(graph, *px);
    l = graph_inverse(graph, *qx);
  } catch (const OutOfPrefix&) {
    return std::nullopt;
  }
  // Members of A lie in range(f); so do the images of members of D.
  if (!k || !l) return false;
  if (!set_char(x_index, *px) || set_char(x_index, *qx)) return false;
  // k != l: p(x) is in X and q(x) is not. The earlier of the two points is
  // decided by the construction within the later one's value.
  const auto& fk = trace.f_table[*k];
  const auto& fl = trace.f_table[*l];
  if (*k < *l) {
    auto a = trace.a_member_within(fk, fl);
    if (!a) return std::nullopt;
    return *a;  // p(x) in X already
  }
  auto a = trace.a_member_within(fl, fk);
  if (!a) return std::nullopt;
  return *a;  // q(x) outside X already
}

ReductionWitness cone_reduction_witness(const GodelIndex& x_index, const GodelIndex& y_index,
                                        const Natural& c, const Natural& d,
                                        const SparseTrace& trace) {
  auto c_in_a = trace.a_member(c);
  if (!c_in_a) throw PreconditionError("c = " + c.str() + " lies beyond the sparse prefix");
  if (!*c_in_a || !set_char(y_index, c))
    throw PreconditionError("c = " + c.str() + " is not in A & Y");
  auto d_in_a = trace.a_member(d);
  if (!d_in_a) throw PreconditionError("d = " + d.str() + " lies beyond the sparse prefix");
  if (*d_in_a) throw PreconditionError("d = " + d.str() + " is in A");

  const SetOracle a = trace.a_oracle();
  auto fn = [x_index, y_index, c, d, a](const Natural& x) -> std::optional<Natural> {
    if (!set_char(x_index, x)) return d;
    if (set_char(y_index, x)) return x;
    auto in_a = a.member(x);
    if (!in_a) return std::nullopt;
    return *in_a ? c : x;
  };
  auto w = ReductionWitness::from_replay(std::move(fn), "cone");
  w.certified_up_to = trace.prefix_end() - 1;
  return w;
}

}  // namespace prm
