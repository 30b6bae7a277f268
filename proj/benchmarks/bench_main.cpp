#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "holonomic/holonomic.hpp"

namespace {

using namespace holonomic;

Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
  return Eigen::HouseholderQR<Matrix>(a).householderQ();
}

void BM_OperatorNorm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Matrix m = Matrix::Identity(n, n) - random_orthogonal(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(m));
}
BENCHMARK(BM_OperatorNorm)->Arg(2)->Arg(3)->Arg(4)->Arg(8)->Arg(16);

void BM_DistanceDiscrete(benchmark::State& state) {
  const HolonomicSpace s = build_fiber_holonomic_space(1.0, static_cast<std::size_t>(state.range(0)));
  Vector u(2), v(2);
  u << 10, 0;
  v << -10, 0;
  for (auto _ : state) benchmark::DoNotOptimize(holonomic_distance(s, u, v));
}
BENCHMARK(BM_DistanceDiscrete)->Arg(513)->Arg(10001);

void BM_FiberDistance(benchmark::State& state) {
  Vector u(2), v(2);
  u << 10, 0;
  v << -10, 0;
  for (auto _ : state) benchmark::DoNotOptimize(fiber_distance(1.0, u, v).distance);
}
BENCHMARK(BM_FiberDistance);

void BM_CounterexampleRadius(benchmark::State& state) {
  const HolonomicSpace s = counterexample_space(1e-6, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(convexity_radius(s).value.to_double());
}
BENCHMARK(BM_CounterexampleRadius)->Unit(benchmark::kMillisecond);

void BM_ManifoldRadius(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(manifold_holonomy_radius(1.0).value);
}
BENCHMARK(BM_ManifoldRadius)->Unit(benchmark::kMillisecond);

void BM_PropertyP(benchmark::State& state) {
  const HolonomicSpace s = build_fiber_holonomic_space(1.0, 513);
  const double r = 0.99 * holonomy_radius_origin(s).value.value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_property_p(s, Vector::Zero(2), r, static_cast<std::size_t>(state.range(0)), 7));
  }
}
BENCHMARK(BM_PropertyP)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TransportRotation(benchmark::State& state) {
  const LoopSpec loop = GeodesicCircle(1.0, std::numbers::pi / 3).loop();
  for (auto _ : state) benchmark::DoNotOptimize(transport_rotation(loop, static_cast<int>(state.range(0))).rotation);
}
BENCHMARK(BM_TransportRotation)->Arg(1024)->Arg(4096);

void BM_ExtrinsicTransport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sphere_extrinsic_transport(std::numbers::pi / 3, 4096));
}
BENCHMARK(BM_ExtrinsicTransport);

void BM_LengthNormNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(spaceform_length_norm_numeric(-1.0, 2.0).value);
}
BENCHMARK(BM_LengthNormNumeric);

void BM_ValidateGroupNorm(benchmark::State& state) {
  const HolonomicSpace s = build_fiber_holonomic_space(1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_group_norm(s.sample()).checked_pairs);
}
BENCHMARK(BM_ValidateGroupNorm)->Arg(65)->Arg(513)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
