#include <benchmark/benchmark.h>

#include "prodgeo/catalog.hpp"
#include "prodgeo/diagnostics.hpp"
#include "prodgeo/umbilical_family.hpp"

using namespace prodgeo;
using Eigen::VectorXd;

namespace {

VectorXd family_point() {
  VectorXd u(2);
  u << 1.3, 0.31;
  return u;
}

void BM_frame_at(benchmark::State& state) {
  const Chart c = Y_chart(FamilyParams(2.0, 1.5));
  const VectorXd u = family_point();
  for (auto _ : state) benchmark::DoNotOptimize(frame_at(c, u));
}
BENCHMARK(BM_frame_at);

void BM_fundamental_at(benchmark::State& state) {
  const Chart c = Y_chart(FamilyParams(2.0, 1.5));
  const VectorXd u = family_point();
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_at(c, u));
}
BENCHMARK(BM_fundamental_at);

void BM_compatibility(benchmark::State& state) {
  const Chart c = Y_chart(FamilyParams(2.0, 1.5));
  const VectorXd u = family_point();
  for (auto _ : state) benchmark::DoNotOptimize(compatibility_residuals(c, u));
}
BENCHMARK(BM_compatibility);

void BM_umbilicity_grid(benchmark::State& state) {
  const Chart c = Y_chart(FamilyParams(2.0, 1.5));
  const auto grid = offset_grid(c.domain, int(state.range(0)));
  for (auto _ : state) {
    double worst = 0.0;
    for (const auto& u : grid) worst = std::max(worst, umbilicity_residual(c, u));
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_umbilicity_grid)->Arg(5)->Arg(11);

void BM_sphere_image(benchmark::State& state) {
  const FamilyParams fp(2.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_image_check(fp, 9));
}
BENCHMARK(BM_sphere_image);

}  // namespace

BENCHMARK_MAIN();
