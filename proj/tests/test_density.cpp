#include <gtest/gtest.h>

#include "mutation.hpp"
#include "oracles/density_ticks.hpp"
#include "prm/density.hpp"
#include "prm/term_library.hpp"

using namespace prm;

TEST(Density, GoldenOnThreeStages) {
  const SparseTrace s = build_sparse(3);
  const DensityTrace dt = build_dense_subset(omega_index(), s, 3, 1'000'000);
  EXPECT_EQ(dt.d, 0u);
  ASSERT_EQ(dt.requirements.size(), 3u);
  const std::uint64_t y[] = {0, 6, 10}, start[] = {0, 5, 10}, used[] = {5, 5, 4};
  for (int i = 0; i < 3; ++i) {
    const auto& r = dt.requirements[i];
    EXPECT_EQ(r.state, ReqState::SatisfiedA) << i;
    EXPECT_EQ(r.y, y[i]) << i;
    EXPECT_EQ(r.start_tick, start[i]) << i;
    EXPECT_EQ(r.ticks_used, used[i]) << i;
  }
  EXPECT_EQ(dt.ticks_used, 14u);
  EXPECT_EQ(dt.y_bits.size(), 11u);
}

TEST(Density, MatchesTickByTickScheduler) {
  const SparseTrace s = build_sparse(8);
  const GodelIndex xs[] = {omega_index(), encode(lib::leq_const(40)),
                           index_complement(encode(lib::eq_const(11)))};
  for (const auto& x : xs)
    for (std::uint64_t r : {1u, 3u, 5u})
      for (std::uint64_t b : {7u, 60u, 1'000'000u})
        EXPECT_EQ(build_dense_subset(x, s, r, b), oracle::tick_density(x, s, r, b))
            << x.value << " " << r << " " << b;
}

TEST(Density, CopyPhaseIsIdentity) {
  const SparseTrace s = build_sparse(8);
  const DensityTrace dt = build_dense_subset(encode(lib::leq_const(40)), s, 5, 1'000'000);
  for (const auto& st : dt.requirements) {
    const std::uint64_t end = st.m1 ? *st.m1 : st.m0 + st.ticks_used;
    for (std::uint64_t x = st.m0; x < end && x < dt.h_table.size(); ++x) {
      EXPECT_EQ(dt.h_table[x], x);
      EXPECT_EQ(dt.y_bits[x], set_char(dt.x_index, x));
    }
  }
}

TEST(Density, CaseBOnEightStages) {
  const SparseTrace s = build_sparse(8);
  const DensityTrace dt = build_dense_subset(omega_index(), s, 5, 1'000'000);
  ASSERT_EQ(dt.requirements.size(), 4u);
  const auto& r3 = dt.requirements[3];
  EXPECT_EQ(r3.state, ReqState::Pending);
  EXPECT_EQ(r3.phase, Phase::Flipped);
  EXPECT_EQ(r3.z, 47u);
  EXPECT_TRUE(dt.exhausted);
  // 47 is in A & X: the copy phase found p_3(47) != 1.
  EXPECT_TRUE(*s.a_member(47));
  EXPECT_NE(p(GodelIndex(3), 47), 1);
  for (std::uint64_t x = *r3.m1; x < dt.y_bits.size(); ++x) {
    EXPECT_FALSE(dt.y_bits[x]);
    EXPECT_EQ(dt.h_table[x], dt.d);
  }
  EXPECT_TRUE(verify_density(dt, s).ok());
}

TEST(Density, VerifyAndCorruption) {
  const SparseTrace s = build_sparse(8);
  const DensityTrace dt = build_dense_subset(omega_index(), s, 5, 1'000'000);
  const Report r = verify_density(dt, s);
  EXPECT_TRUE(r.ok()) << canonical_dump(r.to_json());
  for (std::uint64_t x : {0u, 6u, 30u}) {
    DensityTrace bad = dt;
    bad.y_bits[x] = !bad.y_bits[x];
    EXPECT_FALSE(verify_density(bad, s).ok()) << x;
  }
  DensityTrace bad = dt;
  bad.requirements[1].y = 7;
  EXPECT_FALSE(verify_density(bad, s).ok());
  EXPECT_FALSE(verify_density(dt, build_sparse(9)).ok());
}

TEST(Density, DeterministicAndSerializable) {
  const SparseTrace s = build_sparse(8);
  const DensityTrace a = build_dense_subset(omega_index(), s, 5, 1'000'000);
  const DensityTrace b = build_dense_subset(omega_index(), s, 5, 1'000'000);
  EXPECT_EQ(a, b);
  const Json j = density_to_json(a);
  EXPECT_EQ(canonical_dump(j), canonical_dump(density_to_json(b)));
  EXPECT_EQ(density_from_json(j), a);
}

TEST(Density, TightBudgetStops) {
  const SparseTrace s = build_sparse(3);
  const DensityTrace dt = build_dense_subset(omega_index(), s, 3, 7);
  EXPECT_LE(dt.ticks_used, 7u);
  EXPECT_FALSE(dt.exhausted);
  EXPECT_EQ(dt.log.back().what, "budget");
  EXPECT_TRUE(verify_density(dt, s).ok());
}

TEST(Density, RandomSingleBitMutations) {
  const SparseTrace s = build_sparse(8);
  const Json golden = density_to_json(build_dense_subset(omega_index(), s, 5, 1'000'000));
  auto out = mutation::run(golden,
                           {"/x_index", "/max_requirements", "/scheduler/tick_budget",
                            "/scheduler/granularity"},
                           150, 11, [&](const Json& j) {
                             return verify_density(density_from_json(j), s).ok();
                           });
  EXPECT_EQ(out.caught, out.tried) << (out.missed.empty() ? "" : out.missed.front());
}
