// Serial reference against the OpenMP kernels on the pointwise checks.

#include <benchmark/benchmark.h>

#include "prm/ideal.hpp"
#include "prm/kernels.hpp"
#include "prm/setops.hpp"
#include "prm/term_library.hpp"

using namespace prm;

namespace {

const SparseTrace& trace12() {
  static const SparseTrace t = build_sparse(12);
  return t;
}

void check_restrict(benchmark::State& st, bool parallel) {
  const std::uint64_t n = static_cast<std::uint64_t>(st.range(0));
  std::vector<bool> bits(n);
  for (std::uint64_t k = 0; k < n; ++k) bits[k] = (k * k) % 17 < 5;
  const SetOracle b = SetOracle::from_prefix(bits);
  const GodelIndex x = encode(lib::leq_const(40));
  std::vector<bool> meet(n);
  for (std::uint64_t k = 0; k < n; ++k) meet[k] = bits[k] && set_char(x, k);
  const SetOracle a = SetOracle::from_prefix(meet);
  const ReductionWitness w = restrict_reduction_witness(x, 3);  // 3 is not in B
  for (auto _ : st) benchmark::DoNotOptimize(check_reduction(w, a, b, n - 1, parallel));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

void BM_CheckReductionSerial(benchmark::State& st) { check_restrict(st, false); }
void BM_CheckReductionParallel(benchmark::State& st) { check_restrict(st, true); }
BENCHMARK(BM_CheckReductionSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckReductionParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void first_flagged_g(benchmark::State& st, bool parallel) {
  const auto& t = trace12();
  const auto psi = PsiFixture::parse("constant:0");
  const std::uint64_t end = to_u64(t.prefix_end());
  for (auto _ : st) {
    auto r = kernels::first_flagged(
        0, end, [&](std::uint64_t x) { return g_value(x, psi, t) > x ? 1 : 0; }, parallel);
    benchmark::DoNotOptimize(r);
  }
}

void BM_GScanSerial(benchmark::State& st) { first_flagged_g(st, false); }
void BM_GScanParallel(benchmark::State& st) { first_flagged_g(st, true); }
BENCHMARK(BM_GScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GScanParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
