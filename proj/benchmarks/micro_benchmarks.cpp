#include <benchmark/benchmark.h>

#include "oinv2/cnf.hpp"
#include "oinv2/evaluate.hpp"
#include "oinv2/invariance.hpp"
#include "oinv2/normal_form.hpp"
#include "oinv2/search.hpp"
#include "oinv2/shrink.hpp"

using namespace oinv2;

namespace {

const char* kWitnessMax = "exists x. (P(x) & forall y. (y <= x))";
const char* kTotality = "forall x. forall y. (x <= y | y <= x)";

Structure chain(int n) {
  Structure s;
  s.n = n;
  auto& r = s.binary["R"];
  for (int i = 0; i + 1 < n; ++i) r.insert({i, i + 1});
  s.unary["P"] = {0};
  s.unary["Q"] = {};
  std::vector<int> natural(n);
  for (int i = 0; i < n; ++i) natural[i] = i;
  s.rankings[0] = natural;
  return s;
}

Structure cycle(int n) {
  Structure s;
  s.n = n;
  auto& r = s.binary["R"];
  for (int i = 0; i < n; ++i) r.insert({i, (i + 1) % n});
  std::vector<int> rank0(n), rank1(n);
  for (int i = 0; i < n; ++i) {
    rank0[i] = i;
    rank1[i] = n - 1 - i;
  }
  s.rankings[1] = rank0;
  s.rankings[2] = rank1;
  return s;
}

NormalForm successor_nf() {
  NormalForm nf;
  nf.sig.predicates = {{"R", 2}};
  nf.sig.orders = {OrderSym::Leq0, OrderSym::Leq1};
  nf.gamma0.push_back(parse("R(x,y)"));
  return nf;
}

}  // namespace

static void BM_Parse(benchmark::State& state) {
  const std::string text =
      "forall x. (P(x) -> exists y. (R(x,y) & Q(y) & x <= y))";
  for (auto _ : state) {
    Formula f = parse(text);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_Parse);

static void BM_Render(benchmark::State& state) {
  const Formula f =
      parse("forall x. (P(x) -> exists y. (R(x,y) & Q(y) & x <= y))");
  for (auto _ : state) {
    std::string s = render(f);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Render);

static void BM_Normalize(benchmark::State& state) {
  const Formula f = parse(kWitnessMax);
  for (auto _ : state) {
    NormalForm nf = normalize(f);
    benchmark::DoNotOptimize(nf);
  }
}
BENCHMARK(BM_Normalize);

static void BM_Evaluate(benchmark::State& state) {
  const Formula f =
      parse("forall x. (P(x) -> exists y. (R(x,y) | y <= x))");
  const Structure s = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    bool v = evaluate(s, f);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(32)->Arg(128);

static void BM_FindModelHit(benchmark::State& state) {
  const NormalForm nf = normalize(parse(kWitnessMax));
  for (auto _ : state) {
    auto m = find_model(nf, 2);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_FindModelHit);

static void BM_FindModelMiss(benchmark::State& state) {
  const NormalForm nf = normalize(parse(kTotality));
  for (auto _ : state) {
    auto m = find_model(nf, 3);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_FindModelMiss);

static void BM_GroundToCnf(benchmark::State& state) {
  const NormalForm nf = normalize(parse(kWitnessMax));
  for (auto _ : state) {
    CnfInstance c = ground_to_cnf(nf, 3);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_GroundToCnf);

static void BM_SolveCnf(benchmark::State& state) {
  const NormalForm nf = normalize(parse(kWitnessMax));
  const CnfInstance c = ground_to_cnf(nf, 3);
  for (auto _ : state) {
    auto a = solve_cnf(c);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SolveCnf);

static void BM_CheckInvariance(benchmark::State& state) {
  const Formula f = parse(kWitnessMax);
  for (auto _ : state) {
    InvarianceVerdict v = check_order_invariance(f, 3);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CheckInvariance);

static void BM_Shrink(benchmark::State& state) {
  const NormalForm nf = successor_nf();
  const Structure s = cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ShrinkReport r = shrink(s, nf);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Shrink)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
