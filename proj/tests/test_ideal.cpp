#include <gtest/gtest.h>

#include <algorithm>

#include "mutation.hpp"
#include "oracles/ideal_straight.hpp"
#include "prm/ideal.hpp"
#include "prm/term_library.hpp"

using namespace prm;

namespace {

const SparseTrace& trace12() {
  static const SparseTrace t = build_sparse(12);
  return t;
}

const PsiFixture& psi0() {
  static const PsiFixture p = PsiFixture::parse("constant:0");
  return p;
}

const IdealTrace& ideal12() {
  static const IdealTrace it = build_ideal(psi0(), trace12());
  return it;
}

std::uint64_t P() { return to_u64(trace12().prefix_end()); }

}  // namespace

TEST(Pairing, ExhaustiveInverse) {
  for (std::uint64_t n = 1; n < (1u << 16); ++n) {
    const auto [i, j] = unpair(n);
    ASSERT_EQ(pair(i, j), n);
    // i is the 2-adic valuation
    ASSERT_EQ((n >> i) & 1u, 1u);
    ASSERT_EQ(pair(i, j + 1) - pair(i, j), Natural(1) << (i + 1));
  }
  for (std::uint64_t i = 0; i < 64; ++i)
    for (std::uint64_t j = 0; j < 64; ++j) {
      const auto [a, b] = unpair(pair(i, j));
      EXPECT_EQ(a, i);
      EXPECT_EQ(b, j);
    }
  EXPECT_THROW(unpair(0), std::domain_error);
  EXPECT_EQ(pair(0, 0), 1);
  EXPECT_EQ(pair(3, 2), 40);
}

TEST(Psi, Fixtures) {
  const auto c = PsiFixture::parse("constant:7");
  EXPECT_EQ(c.psi1(3, 0), GodelIndex(7));
  EXPECT_EQ(c.settle_bound(0), 0u);
  const auto ev = PsiFixture::parse("eventually:1:2:30");
  EXPECT_EQ(ev.psi1(0, 29), GodelIndex(1));
  EXPECT_EQ(ev.psi1(0, 30), GodelIndex(2));
  EXPECT_EQ(ev.psi(5), GodelIndex(2));
  EXPECT_EQ(ev.settle_bound(9), 30u);
  const auto tb = PsiFixture::parse("table:4,5,6");
  EXPECT_EQ(tb.psi(0), GodelIndex(4));
  EXPECT_EQ(tb.psi(2), GodelIndex(6));
  EXPECT_EQ(tb.psi(9), GodelIndex(6));
  for (const char* s : {"constant:0", "eventually:1:2:30", "table:4,5,6"})
    EXPECT_EQ(PsiFixture::parse(PsiFixture::parse(s).to_string()), PsiFixture::parse(s));
  EXPECT_ANY_THROW(PsiFixture::parse("sometimes:3"));
  EXPECT_ANY_THROW(PsiFixture::parse("table:"));
}

TEST(CodingLocations, StageThreeTable) {
  const SparseTrace s = build_sparse(3);
  // (n, e, m) by the definition: n = <e, l>, l >= e, the account of r_{e-1}
  // at f(m) fits in n - 1 frames.
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> want, got;
  for (std::uint64_t n = 1; n < 11; ++n) {
    const auto [e, l] = unpair(n);
    if (e > 2 || l < e) continue;
    std::uint64_t m = 0;
    while (s.f_table[m + 1] <= n) ++m;
    Natural account = 1;
    for (std::uint64_t d = 0; d < e; ++d)
      account += oracle::naive_eval1(decode(GodelIndex(d)), s.f_table[m]).frames;
    if (account <= n - 1) want.emplace_back(n, e, m);
  }
  const std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> golden = {
      {3, 0, 1}, {5, 0, 2}, {6, 1, 2}, {7, 0, 2}, {9, 0, 2}, {10, 1, 2}};
  EXPECT_EQ(want, golden);
  for (std::uint64_t n = 0; n < 11; ++n)
    for (std::uint64_t e = 0; e <= 2; ++e)
      if (auto m = is_coding_location(e, n, s)) got.emplace_back(n, e, *m);
  EXPECT_EQ(got, golden);
  EXPECT_THROW(is_coding_location(0, 11, s), OutOfPrefix);

  EXPECT_TRUE(coding_locations_for(0, 0, trace12()).locations.empty());
  EXPECT_EQ(coding_locations_for(0, 1, trace12()).locations, std::vector<Natural>{3});
  const auto m2 = coding_locations_for(0, 2, trace12());
  EXPECT_EQ(m2.locations, (std::vector<Natural>{5, 7, 9}));
  EXPECT_TRUE(m2.bound_holds);
}

TEST(Ideal, GMatchesStraightDefinition) {
  const auto& it = ideal12();
  ASSERT_EQ(it.g_table.size(), P());
  for (std::uint64_t x = 0; x < P(); ++x) {
    ASSERT_EQ(Natural(it.g_table[x]), oracle::straight_g(x, trace12().f_table, psi0())) << x;
    ASSERT_EQ(it.ci_bits[x], it.g_table[x] != 0 && trace12().a_bits.at(it.g_table[x])) << x;
  }
  const std::vector<std::uint64_t> head = {0, 0, 0, 2, 0, 5, 5, 5, 0, 5, 5};
  EXPECT_EQ(std::vector<std::uint64_t>(it.g_table.begin(), it.g_table.begin() + 11), head);
  EXPECT_EQ(it.locations.size(), 111u);
  EXPECT_EQ(std::count(it.ci_bits.begin(), it.ci_bits.end(), true), 35);
  EXPECT_FALSE(it.ci_bits[0]);
  EXPECT_THROW(g_value(P(), psi0(), trace12()), OutOfPrefix);

  const auto ev = PsiFixture::parse("eventually:0:110:40");
  const IdealTrace other = build_ideal(ev, trace12());
  for (std::uint64_t x = 0; x < P(); ++x)
    ASSERT_EQ(Natural(other.g_table[x]), oracle::straight_g(x, trace12().f_table, ev)) << x;
}

TEST(Ideal, Thresholds) {
  const auto& it = ideal12();
  EXPECT_EQ(find_threshold(0, it, trace12()), Natural(5));
  EXPECT_EQ(find_threshold(1, it, trace12()), Natural(18));
  EXPECT_EQ(find_threshold(2, it, trace12()), Natural(35));
  EXPECT_FALSE(find_threshold(3, it, trace12()).has_value());
  const IdealTrace late = build_ideal(PsiFixture::parse("eventually:0:0:500"), trace12());
  EXPECT_FALSE(find_threshold(0, late, trace12()).has_value());
}

TEST(Ideal, CodingReductionCertificates) {
  const auto& it = ideal12();
  for (std::uint64_t e = 0; e <= 2; ++e) {
    const CodingReduction cr = coding_reduction(e, it, trace12());
    ASSERT_TRUE(cr.reached());
    EXPECT_TRUE(cr.certificate.passed()) << e;
    EXPECT_EQ(cr.certificate.checked_up_to, P() - 1);
    const std::uint64_t y0 = to_u64(*cr.y0);
    for (std::uint64_t y = y0; y < P(); ++y) {
      if (!trace12().f_index(y)) {
        EXPECT_EQ(cr.h_table[y], 0);
        continue;
      }
      // h(y) codes f(m) = y in y's own interval
      const Natural h = cr.h_table[y];
      EXPECT_EQ(unpair(h).first, e);
      EXPECT_EQ(trace12().stage_of(h), trace12().f_index(y));
      EXPECT_GE(unpair(h).second, coding_account(e, psi0(), y));
      EXPECT_EQ(it.g_table[to_u64(h)], y);
    }
  }
  const CodingReduction none = coding_reduction(3, it, trace12());
  EXPECT_FALSE(none.reached());
  EXPECT_EQ(none.certificate.kind, VerdictKind::Inconclusive);
}

TEST(Ideal, VerifyAndJson) {
  const auto& it = ideal12();
  const Report r = verify_ideal(it, trace12());
  EXPECT_TRUE(r.ok()) << canonical_dump(r.to_json());
  const Json j = ideal_to_json(it);
  EXPECT_EQ(ideal_from_json(j), it);
  EXPECT_EQ(canonical_dump(j), canonical_dump(ideal_to_json(build_ideal(psi0(), trace12()))));

  IdealTrace bad = it;
  bad.g_table[13] = 0;
  EXPECT_FALSE(verify_ideal(bad, trace12()).ok());
  bad = it;
  bad.ci_bits[0] = true;
  EXPECT_FALSE(verify_ideal(bad, trace12()).ok());
  bad = it;
  bad.locations.pop_back();
  EXPECT_FALSE(verify_ideal(bad, trace12()).ok());
  EXPECT_FALSE(verify_ideal(build_ideal(psi0(), build_sparse(11)), trace12()).ok());
}

TEST(Ideal, RandomSingleBitMutations) {
  const Json golden = ideal_to_json(ideal12());
  auto out = mutation::run(golden, {"/psi_fixture"}, 150, 13, [](const Json& j) {
    return verify_ideal(ideal_from_json(j), trace12()).ok();
  });
  EXPECT_EQ(out.caught, out.tried) << (out.missed.empty() ? "" : out.missed.front());
}

TEST(Ideal, JoinMembership) {
  EXPECT_EQ(least_a0(psi0(), trace12()), 11);
  // component c of the join over c <= 3 sits at 4a + c
  EXPECT_EQ(psi_join_member(44, 3, psi0(), trace12()), true);
  EXPECT_EQ(psi_join_member(45, 3, psi0(), trace12()), true);
  EXPECT_EQ(psi_join_member(48, 3, psi0(), trace12()), false);
  EXPECT_FALSE(psi_join_member(4 * P(), 3, psi0(), trace12()).has_value());
}

namespace {

// Checks x in A & X_i <=> the decoded target is in the join, on [from, P).
void expect_pointwise(std::uint64_t i, const Natural& j, const ReductionWitness& pj,
                      std::uint64_t from, std::vector<DecodeRoute>& seen) {
  const Natural a0 = least_a0(psi0(), trace12());
  for (std::uint64_t x = from; x < P(); ++x) {
    const DecodedTarget d = h_requirement_decode(i, j, pj, ideal12(), trace12(), x, a0);
    seen.push_back(d.route);
    ASSERT_NE(d.route, DecodeRoute::Inconclusive) << x << " " << d.note;
    ASSERT_NE(d.route, DecodeRoute::Anomaly) << x << " " << d.note;
    const bool lhs = *trace12().a_member(x) && set_char(GodelIndex(i), x);
    EXPECT_EQ(psi_join_member(d.target, pair(i, j), psi0(), trace12()), lhs) << x;
    if (d.route != DecodeRoute::Rejected) EXPECT_TRUE(d.rj_bound.has_value()) << x;
    EXPECT_TRUE(d.psi_settled);
  }
}

}  // namespace

TEST(Ideal, RequirementDecodeThroughCodingMap) {
  const CodingReduction cr = coding_reduction(0, ideal12(), trace12());
  const auto h = ReductionWitness::from_replay(
      [h = cr.h_table](const Natural& x) -> std::optional<Natural> {
        if (x >= h.size()) return std::nullopt;
        return h[to_u64(x)];
      },
      "coding");
  std::vector<DecodeRoute> seen;
  expect_pointwise(0, 1, h, to_u64(*cr.y0), seen);
  EXPECT_NE(std::find(seen.begin(), seen.end(), DecodeRoute::Case2), seen.end());
}

TEST(Ideal, RequirementDecodeEarlierStage) {
  // A(x) ? 13 : 0, where g(13) = 11 = f(3).
  ASSERT_EQ(ideal12().g_table[13], 11u);
  const SetOracle a = trace12().a_oracle();
  const auto pj = ReductionWitness::from_replay(
      [a](const Natural& x) -> std::optional<Natural> {
        auto in = a.member(x);
        if (!in) return std::nullopt;
        return Natural(*in ? 13 : 0);
      },
      "fixed");
  std::vector<DecodeRoute> seen;
  expect_pointwise(0, 1, pj, 0, seen);
  EXPECT_EQ(std::count(seen.begin(), seen.end(), DecodeRoute::Case1), 2);  // 47 and 107
  const DecodedTarget d = h_requirement_decode(0, 1, pj, ideal12(), trace12(), 47, 11);
  EXPECT_EQ(d.route, DecodeRoute::Case1);
  EXPECT_EQ(d.target, 44);
  EXPECT_EQ(d.component, 0u);
}

TEST(Ideal, RequirementDecodeAnomalyAndLimits) {
  const auto& g = ideal12().g_table;
  const auto y47 = std::find(g.begin(), g.end(), 47u) - g.begin();
  ASSERT_LT(static_cast<std::uint64_t>(y47), P());
  // every point goes to a location of f(7) = 47, ahead of x = 11
  const auto ahead = ReductionWitness::from_term(lib::constant(y47), "const");
  const DecodedTarget d = h_requirement_decode(0, 1, ahead, ideal12(), trace12(), 11, 11);
  EXPECT_EQ(d.route, DecodeRoute::Anomaly);
  EXPECT_EQ(h_requirement_decode(0, 1, ahead, ideal12(), trace12(), 47, 11).route,
            DecodeRoute::Case2);
  EXPECT_EQ(h_requirement_decode(0, 1, ahead, ideal12(), trace12(), 12, 11).route,
            DecodeRoute::Rejected);
  EXPECT_EQ(h_requirement_decode(0, 1, ahead, ideal12(), trace12(), P(), 11).route,
            DecodeRoute::Inconclusive);
  const auto far = ReductionWitness::from_term(lib::constant(10 * P()), "const");
  EXPECT_EQ(h_requirement_decode(0, 1, far, ideal12(), trace12(), 47, 11).route,
            DecodeRoute::Inconclusive);
}
