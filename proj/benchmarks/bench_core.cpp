#include <benchmark/benchmark.h>

#include <random>

#include "dgdef/bicomplex.hpp"
#include "dgdef/obstruction.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace dgdef;

namespace {

Matrix random_matrix(std::mt19937& rng, Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.set(r, c, Scalar(f, static_cast<long>(rng() % 11) - 5));
  return m;
}

void BM_RowReduce(benchmark::State& state, Field f) {
  std::mt19937 rng(1);
  const Matrix m = random_matrix(rng, f, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK_CAPTURE(BM_RowReduce, F101, Field::prime(101))->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_RowReduce, Q, Field::rationals())->Arg(8)->Arg(16)->Arg(24);

void BM_PairConeCohomology(benchmark::State& state) {
  std::mt19937 rng(2);
  const Field f = Field::prime(101);
  for (auto _ : state) {
    auto [l, n, m, h, g] = generators::random_pair(rng, f, 4);
    PairCone pc = pair_cone(l, n, m, h, g);
    benchmark::DoNotOptimize(cohomology(pc.complex, 1).dim() + cohomology(pc.complex, 2).dim());
  }
}
BENCHMARK(BM_PairConeCohomology);

void BM_ValidateDgla(benchmark::State& state) {
  const Dgla g = fixtures::gl2_semidirect(Field::rationals());
  for (auto _ : state) benchmark::DoNotOptimize(validate_dgla(g).all_passed());
}
BENCHMARK(BM_ValidateDgla);

void BM_EnumerateMc(benchmark::State& state) {
  const Field f = Field::prime(5);
  const PairDiagram pd = fixtures::identity_pair(fixtures::share(fixtures::heis(f)));
  const TensoredPair t(pd, curvilinear(f, static_cast<unsigned>(state.range(0)), "t").small);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_mc_triples(t).size());
}
BENCHMARK(BM_EnumerateMc)->Arg(1)->Arg(2);

void BM_OrbitPartition(benchmark::State& state) {
  const Field f = Field::prime(3);
  const PairDiagram pd = fixtures::identity_pair(fixtures::share(fixtures::heis(f)));
  const TensoredPair t(pd, curvilinear(f, 2, "t").small);
  const auto triples = enumerate_mc_triples(t);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_partition(triples, t).size());
}
BENCHMARK(BM_OrbitPartition);

// The obstruction class against the exhaustive oracle on the same lifting problem.
void BM_ObstructionClass(benchmark::State& state) {
  const Field f = Field::prime(5);
  const PairDiagram pd = fixtures::f2_pair(f);
  const SmallExtension e = curvilinear(f, 2, "t");
  const auto triples = enumerate_mc_triples(TensoredPair(pd, e.small));
  for (auto _ : state)
    for (const auto& xi : triples) benchmark::DoNotOptimize(obstruction_class(xi, e, pd).is_zero());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * triples.size()));
}
BENCHMARK(BM_ObstructionClass);

void BM_LiftBruteforce(benchmark::State& state) {
  const Field f = Field::prime(5);
  const PairDiagram pd = fixtures::f2_pair(f);
  const SmallExtension e = curvilinear(f, 2, "t");
  const auto triples = enumerate_mc_triples(TensoredPair(pd, e.small));
  for (auto _ : state)
    for (const auto& xi : triples) benchmark::DoNotOptimize(lift_exists_bruteforce(xi, e, pd));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * triples.size()));
}
BENCHMARK(BM_LiftBruteforce);

void BM_BuildHtp(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Field f = Field::rationals();
  for (auto _ : state) {
    const BigradedAlgebra a = random_bicomplex(f, rng, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(build_htp_dgla(a).dgla()->size());
  }
}
BENCHMARK(BM_BuildHtp)->Arg(4)->Arg(6);

void BM_DelDelbar(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Field f = Field::rationals();
  for (auto _ : state) {
    const BigradedAlgebra a = random_bicomplex(f, rng, 6);
    benchmark::DoNotOptimize(del_delbar_predicate(a).holds);
  }
}
BENCHMARK(BM_DelDelbar);

}  // namespace

BENCHMARK_MAIN();
