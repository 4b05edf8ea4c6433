#include "prm/setops.hpp"

#include "prm/eval.hpp"
#include "prm/kernels.hpp"
#include "prm/term_library.hpp"

namespace prm {

SetOracle SetOracle::from_prefix(std::vector<bool> bits, std::string kind) {
  SetOracle o;
  o.kind_ = std::move(kind);
  o.length_ = Natural(bits.size());
  o.table_ = std::make_shared<const std::vector<bool>>(std::move(bits));
  return o;
}

SetOracle SetOracle::from_index(const GodelIndex& e) {
  SetOracle o;
  o.kind_ = "index";
  Term t = decode(e);
  o.replay_ = [t](const Natural& x) -> std::optional<bool> { return eval1(t, x).value > 0; };
  return o;
}

SetOracle SetOracle::from_replay(Replay fn, std::optional<Natural> defined_length,
                                 std::string kind) {
  SetOracle o;
  o.kind_ = std::move(kind);
  o.length_ = std::move(defined_length);
  o.replay_ = std::move(fn);
  return o;
}

std::optional<bool> SetOracle::member(const Natural& x) const {
  if (x < 0) throw std::invalid_argument("membership query on a negative number");
  if (length_ && x >= *length_) return std::nullopt;
  if (table_) return (*table_)[x.convert_to<std::size_t>()];
  return replay_(x);
}

bool SetOracle::member_or_throw(const Natural& x) const {
  auto m = member(x);
  if (!m) throw OutOfPrefix(x);
  return *m;
}

std::vector<bool> SetOracle::prefix_bits(std::uint64_t n) const {
  std::vector<bool> out(n);
  for (std::uint64_t x = 0; x < n; ++x) out[x] = member_or_throw(Natural(x));
  return out;
}

Json prefix_to_json(const std::string& kind, const std::vector<bool>& bits) {
  Json j;
  j["kind"] = kind;
  j["defined_up_to"] = bits.size();
  j["bits"] = rle_encode(bits);
  return j;
}

SetOracle prefix_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  const auto n = natural_from_json(field(j, "defined_up_to"), "defined_up_to");
  auto bits = rle_decode(field(j, "bits").get<std::vector<std::uint64_t>>());
  if (Natural(bits.size()) != n) throw FormatError("prefix length disagrees with its bits");
  return SetOracle::from_prefix(std::move(bits), kind);
}

GraphOracle::GraphOracle(std::vector<Natural> values) : values_(std::move(values)) {}

std::optional<bool> GraphOracle::contains(const Natural& x, const Natural& y) const {
  if (x < values_.size()) return values_[x.convert_to<std::size_t>()] == y;
  // f increasing with f(x) >= x: beyond the table every value exceeds the
  // last known one.
  if (!values_.empty() && y <= values_.back()) return false;
  return std::nullopt;
}

std::optional<std::uint64_t> graph_inverse(const GraphOracle& graph, const Natural& y) {
  const auto& v = graph.values();
  for (std::uint64_t x = 0; Natural(x) <= y; ++x) {
    auto hit = graph.contains(Natural(x), y);
    if (!hit) throw OutOfPrefix(y);
    if (*hit) return x;
    if (x < v.size() && v[x] > y) return std::nullopt;
  }
  return std::nullopt;
}

bool graph_in_range(const GraphOracle& graph, const Natural& y) {
  return graph_inverse(graph, y).has_value();
}

std::optional<bool> join_member(const SetOracle& b, const SetOracle& c, const Natural& z) {
  if (z < 0) throw std::invalid_argument("join_member on a negative number");
  const Natural x = z / 2;
  return (z % 2 == 0) ? b.member(x) : c.member(x);
}

std::optional<Natural> ReductionWitness::apply(const Natural& x) const {
  if (fn) return eval1(*fn, x).value;
  return replay(x);
}

ReductionWitness ReductionWitness::from_term(Term t, std::string source) {
  if (t.arity() != 1) throw ValidationError("", "reduction witnesses must be unary");
  ReductionWitness w;
  w.fn = std::move(t);
  w.source = std::move(source);
  return w;
}

ReductionWitness ReductionWitness::from_replay(
    std::function<std::optional<Natural>(const Natural&)> f, std::string source) {
  ReductionWitness w;
  w.replay = std::move(f);
  w.source = std::move(source);
  return w;
}

ReductionWitness restrict_reduction_witness(const GodelIndex& x_index, const Natural& c) {
  Term t = Term::comp(lib::ite(), {lib::identity(), lib::constant(c), decode(x_index)});
  return ReductionWitness::from_term(std::move(t), "restrict");
}

ReductionWitness split_reduction_witness(const GodelIndex& x_index) {
  Term t = Term::comp(lib::ite(), {lib::twice(), lib::after(Term::succ(), lib::twice()),
                                   decode(x_index)});
  return ReductionWitness::from_term(std::move(t), "split");
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Pass: return "pass";
    case VerdictKind::Fail: return "fail";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {
enum PointStatus { kOk = 0, kMismatch = 1, kUnknown = 2 };
}

Verdict check_reduction(const ReductionWitness& w, const SetOracle& a, const SetOracle& b,
                        std::uint64_t up_to, bool parallel) {
  auto at_point = [&](std::uint64_t x, std::optional<bool>* in_a, std::optional<bool>* in_b) {
    const Natural nx(x);
    *in_a = a.member(nx);
    if (!*in_a) return kUnknown;
    auto y = w.apply(nx);
    if (!y) return kUnknown;
    *in_b = b.member(*y);
    if (!*in_b) return kUnknown;
    return **in_a == **in_b ? kOk : kMismatch;
  };
  auto flagged = kernels::first_flagged(
      0, up_to + 1,
      [&](std::uint64_t x) {
        std::optional<bool> ia, ib;
        return static_cast<int>(at_point(x, &ia, &ib));
      },
      parallel);

  Verdict v;
  if (!flagged) {
    v.checked_up_to = up_to;
    return v;
  }
  v.at = flagged->x;
  v.checked_up_to = flagged->x == 0 ? 0 : flagged->x - 1;
  at_point(flagged->x, &v.in_domain, &v.in_codomain);
  v.kind = flagged->status == kMismatch ? VerdictKind::Fail : VerdictKind::Inconclusive;
  return v;
}

}  // namespace prm
