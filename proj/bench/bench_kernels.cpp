#include <benchmark/benchmark.h>

#include <random>

#include "rslat/decoding.hpp"
#include "rslat/kernels.hpp"
#include "rslat/lattice.hpp"

using namespace rslat;

namespace {

// Arguments: policy (0 serial, 1 parallel), then q and k of the syndrome space.
ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

std::vector<std::uint64_t> random_column(std::mt19937_64& rng, std::uint64_t q, std::size_t k) {
  std::vector<std::uint64_t> c(k);
  for (auto& v : c) v = rng() % q;
  return c;
}

void BM_MinPlusLayer(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  SyndromeSpace space(q, k);
  std::mt19937_64 rng(1);
  std::vector<Cost> residue(q), next(space.size()), out(space.size());
  for (auto& c : residue) c = static_cast<Cost>(rng() % 9);
  for (auto& c : next) c = static_cast<Cost>(rng() % 50);
  auto col = random_column(rng, q, k);
  for (auto _ : state) {
    kernels::min_plus_layer(space, col, residue, next, out, policy_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * space.size() * q));
}

void BM_CosetCountLayer(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  SyndromeSpace space(q, k);
  std::mt19937_64 rng(2);
  const std::size_t w = 3;
  std::vector<std::uint64_t> in((w + 1) * space.size()), out(in.size());
  for (auto& v : in) v = rng() % 100;
  auto col = random_column(rng, q, k);
  for (auto _ : state) {
    kernels::coset_count_layer(space, col, w, in, out, policy_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * in.size()));
}

void BM_SequenceCountStep(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  SyndromeSpace space(q, k);
  auto h = build_parity_check(q, k);
  std::vector<std::vector<std::uint64_t>> cols;
  for (std::size_t j = 0; j < h.length(); ++j) cols.push_back(h.column(j));
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> in(space.size()), out(space.size());
  for (auto& v : in) v = rng() % 1000;
  for (auto _ : state) {
    kernels::sequence_count_step(space, cols, in, out, policy_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * space.size() * cols.size()));
}

void BM_CharacterSumTable(benchmark::State& state) {
  SyndromeSpace space(static_cast<std::uint64_t>(state.range(1)),
                      static_cast<std::size_t>(state.range(2)));
  for (auto _ : state) {
    auto t = kernels::character_sum_table(space, policy_of(state));
    benchmark::DoNotOptimize(t.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * space.size()));
}

void BM_MinDistExact(benchmark::State& state) {
  auto h = build_parity_check(static_cast<std::uint64_t>(state.range(1)),
                              static_cast<std::size_t>(state.range(2)));
  for (auto _ : state) {
    auto r = min_dist_exact(h, 1, Rational(static_cast<std::int64_t>(h.modulus())), {},
                            policy_of(state));
    benchmark::DoNotOptimize(r);
  }
}

void spaces(benchmark::internal::Benchmark* b) {
  for (std::int64_t policy : {0, 1}) {
    b->Args({policy, 11, 3});
    b->Args({policy, 13, 4});
  }
}

}  // namespace

BENCHMARK(BM_MinPlusLayer)->Apply(spaces);
BENCHMARK(BM_CosetCountLayer)->Apply(spaces);
BENCHMARK(BM_SequenceCountStep)->Apply(spaces);
BENCHMARK(BM_CharacterSumTable)->Apply(spaces);
BENCHMARK(BM_MinDistExact)->Args({0, 13, 5})->Args({1, 13, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
