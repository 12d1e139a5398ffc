#include <benchmark/benchmark.h>

#include "cubaut/catalog.hpp"
#include "cubaut/singularity.hpp"

using namespace cubaut;

static void BM_GroebnerJ5aJacobian(benchmark::State& state) {
  const MultiPoly f = catalog_build("J5a").form;
  const Ideal jac = gradient(f);
  for (auto _ : state) benchmark::DoNotOptimize(groebner(jac));
}
BENCHMARK(BM_GroebnerJ5aJacobian)->Unit(benchmark::kMillisecond);

static void BM_CertifySegreLocus(benchmark::State& state) {
  const CatalogEntry e = catalog_build("J15");
  for (auto _ : state) benchmark::DoNotOptimize(certify_singular_locus(e.form, e.seed_points));
}
BENCHMARK(BM_CertifySegreLocus)->Unit(benchmark::kMillisecond);

static void BM_AutomorphismGroup(benchmark::State& state, const std::string& tag) {
  const CatalogEntry e = catalog_build(tag);
  for (auto _ : state) benchmark::DoNotOptimize(compute_automorphism_group(e.form, e.seed_points));
}
BENCHMARK_CAPTURE(BM_AutomorphismGroup, J5a, std::string("J5a"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AutomorphismGroup, J9a, std::string("J9a"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AutomorphismGroup, J15, std::string("J15"))->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_FingerprintSym6(benchmark::State& state) {
  const GroupHandle g = GroupHandle::from_perms({Perm::parse("(1,2)", 6), Perm::parse("(1,2,3,4,5,6)", 6)});
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint(g));
}
BENCHMARK(BM_FingerprintSym6)->Unit(benchmark::kMillisecond);

static void BM_ClassifyNode(benchmark::State& state) {
  const CatalogEntry e = catalog_build("J14");
  for (auto _ : state) benchmark::DoNotOptimize(classify_singularity(e.form, e.seed_points.front()));
}
BENCHMARK(BM_ClassifyNode)->Unit(benchmark::kMillisecond);

static void BM_FixedFlatsSym5(benchmark::State& state) {
  const CatalogEntry e = catalog_build("J5a");
  const GroupHandle g = compute_automorphism_group(e.form, e.seed_points);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_flats(g));
}
BENCHMARK(BM_FixedFlatsSym5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
