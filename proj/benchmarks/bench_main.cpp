#include <benchmark/benchmark.h>

#include "affbuild/building_morphisms.hpp"
#include "affbuild/weyl_extension.hpp"

using namespace affbuild;

namespace {

void BM_EnumerateWeyl(benchmark::State& state) {
  const RootSystem rs = RootSystem::standard(RootSystemTag::A, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_weyl_group(rs).size());
}
BENCHMARK(BM_EnumerateWeyl)->Arg(2)->Arg(3)->Arg(4);

void BM_TriangleDecision(benchmark::State& state) {
  const EmbeddedPair pair = named_embedding("b2-in-a3");
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_triangle(pair).passed);
}
BENCHMARK(BM_TriangleDecision);

void BM_ConstructSigma(benchmark::State& state) {
  const EmbeddedPair pair = named_embedding("a2-long-in-g2");
  for (auto _ : state) benchmark::DoNotOptimize(construct_sigma(pair).image_size);
}
BENCHMARK(BM_ConstructSigma);

void BM_CanonicalForm(benchmark::State& state) {
  const LatticeBuilding b(ValuationSpec{ValuationKind::Degree}, static_cast<std::size_t>(state.range(0)));
  LatticeSampler s(b, 1);
  std::vector<FieldMatrix> inputs;
  for (int i = 0; i < 16; ++i) inputs.push_back(s.sl());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(b.canonical_form(inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_CanonicalForm)->Arg(2)->Arg(3)->Arg(4);

void BM_CommonApartment(benchmark::State& state) {
  const LatticeBuilding b(ValuationSpec{ValuationKind::Degree}, 3);
  LatticeSampler s(b, 2);
  std::vector<std::pair<LatticeClass, LatticeClass>> inputs;
  for (int i = 0; i < 16; ++i) inputs.emplace_back(b.canonical_form(s.sl()), b.canonical_form(s.sl()));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [c1, c2] = inputs[i++ % inputs.size()];
    benchmark::DoNotOptimize(b.common_apartment(c1, c2));
  }
}
BENCHMARK(BM_CommonApartment);

void BM_FieldChangeCertificate(benchmark::State& state) {
  const MorphismInstance inst = instance_field_change(2);
  for (auto _ : state) benchmark::DoNotOptimize(check_conditions_baby(inst, 20, 1).valid());
}
BENCHMARK(BM_FieldChangeCertificate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
