// Serial reference path against the OpenMP path of the tensor engine.

#include <benchmark/benchmark.h>

#include "t3d/verify.hpp"

using namespace t3d;

namespace {

template <class C>
void run_side(benchmark::State& st, const EquationSpec& eq, const OccState& s, CoefOps<C> ops) {
  const int jobs = static_cast<int>(st.range(0));
  std::size_t kets = 0;
  for (auto _ : st) {
    TensorEngine<C> eng(eq.signature, ops);
    const auto v = eng.apply_product(eng.basis(s), eq.lhs, jobs);
    kets = v.size();
    benchmark::DoNotOptimize(kets);
  }
  st.counters["kets"] = static_cast<double>(kets);
}

void BM_tetrahedron(benchmark::State& st) {
  run_side<LaurentPoly>(st, tetrahedron_spec(), parse_state("314516"), {});
}

void BM_reflection_b(benchmark::State& st) {
  run_side<LaurentPoly>(st, reflection_b_spec(), parse_state("112111111"), {});
}

void BM_reflection_c_small(benchmark::State& st) {
  run_side<LaurentPoly>(st, reflection_c_spec(), parse_state("111012111"), {});
}

void BM_f4_truncated(benchmark::State& st) {
  run_side<TruncPoly>(st, f4_spec(), f4_reference_state(), CoefOps<TruncPoly>{6});
}

}  // namespace

// Arg 1 takes the serial path; larger values use OpenMP with that many threads.
BENCHMARK(BM_tetrahedron)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reflection_b)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reflection_c_small)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_f4_truncated)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
