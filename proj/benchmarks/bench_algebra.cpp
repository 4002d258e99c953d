#include <benchmark/benchmark.h>

#include <random>

#include "cforge/contract.hpp"
#include "cforge/parser.hpp"
#include "cforge/polyhedral.hpp"

namespace {

using cforge::PolyhedralContract;

PolyhedralContract upstream() {
  return PolyhedralContract::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - i <= 0", "i - 2o <= 2"});
}
PolyhedralContract downstream() {
  return PolyhedralContract::from_strings({"o"}, {"o_p"}, {"o <= 0.2", "-o <= 1"}, {"o_p - o <= 0"});
}

void BM_ComposePair(benchmark::State& state) {
  const auto a = upstream();
  const auto b = downstream();
  for (auto _ : state) benchmark::DoNotOptimize(cforge::compose(a, b));
}
BENCHMARK(BM_ComposePair);

void BM_Quotient(benchmark::State& state) {
  const auto top = PolyhedralContract::from_strings({"i"}, {"o_p"}, {"|i| <= 1"}, {"o_p - 2i = 1"});
  const auto part = PolyhedralContract::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - 2i = 0"});
  for (auto _ : state) benchmark::DoNotOptimize(cforge::quotient(top, part));
}
BENCHMARK(BM_Quotient);

// Chain of n delay stages, each adding an offset to its input.
void BM_ComposeChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<PolyhedralContract> stages;
  for (int k = 0; k < n; ++k) {
    const std::string in = "x" + std::to_string(k);
    const std::string out = "x" + std::to_string(k + 1);
    stages.push_back(PolyhedralContract::from_strings({in}, {out}, {in + " <= 100"},
                                                      {out + " - " + in + " <= 1", in + " - " + out + " <= 0"}));
  }
  for (auto _ : state) {
    PolyhedralContract c = stages.front();
    for (int k = 1; k < n; ++k) c = cforge::compose(c, stages[static_cast<std::size_t>(k)]);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ComposeChain)->Arg(4)->Arg(16)->Arg(32);

void BM_EliminateRandom(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  const std::vector<std::string> vars = {"a", "b", "c", "d"};
  cforge::TermList rows;
  for (int k = 0; k < static_cast<int>(state.range(0)); ++k) {
    cforge::Coefficients c;
    for (const auto& v : vars) {
      if (const int x = coef(rng); x != 0) c[v] = x;
    }
    rows.push_back(cforge::LinearTerm(std::move(c), 10.0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(cforge::eliminate(rows, {"c", "d"}));
}
BENCHMARK(BM_EliminateRandom)->Arg(8)->Arg(16);

void BM_ParseRender(benchmark::State& state) {
  const std::vector<std::string> lines = {"|T_out - T_in| <= 10", "0.4 dT_1 - soc_0 <= 0", "w_ep - 1.01 * 133917 <= 0",
                                          "T_e >= 300", "2 x - 3y + z = 4.5"};
  for (auto _ : state) benchmark::DoNotOptimize(cforge::render(cforge::parse_constraints(lines)));
}
BENCHMARK(BM_ParseRender);

}  // namespace
