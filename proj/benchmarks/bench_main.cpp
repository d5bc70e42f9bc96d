#include "bvhomeo/degree.hpp"
#include "bvhomeo/derivative.hpp"
#include "bvhomeo/graph_measure.hpp"
#include "bvhomeo/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace bvhomeo;

namespace {

std::vector<Point2d> points(std::size_t n) {
  Sampler s(99);
  std::vector<Point2d> out(n);
  for (auto& p : out) p = s.point(unit_box());
  return out;
}

void BM_FLevelEval(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto pts = points(4096);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(f_level_eval(k, pts[i++ & 4095]));
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_FLevelEval)->Arg(1)->Arg(6)->Arg(12);

void BM_FLevelEvalExact(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  std::vector<Point2q> pts;
  for (const auto& p : points(256)) pts.push_back({to_rational(p.x1), to_rational(p.x2)});
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(f_level_eval(k, pts[i++ & 255]));
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_FLevelEvalExact)->Arg(2)->Arg(6);

void BM_FGrad(benchmark::State& st) {
  const auto pts = points(4096);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(f_grad(6, pts[i++ & 4095], SeamPolicy::lenient));
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_FGrad);

void BM_TVTotal(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(tv_total(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_TVTotal)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_WindingDegree(benchmark::State& st) {
  const PlanarMap F = level_map(static_cast<int>(st.range(0)), Orientation::sense_preserving);
  const auto c = rectangle_curve(Rect2d({-0.7, -0.4}, {0.6, 0.5}));
  const Point2d y = F({0.1, 0.05});
  for (auto _ : st) benchmark::DoNotOptimize(winding_degree(F, c, y));
}
BENCHMARK(BM_WindingDegree)->Arg(2)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_ImageArea(benchmark::State& st) {
  const PlanarMap F = level_map(3, Orientation::sense_preserving);
  const Rect2d E({-0.45, -0.1}, {0.35, 0.6});
  for (auto _ : st) benchmark::DoNotOptimize(image_area(F, E, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ImageArea)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FundamentalRatio(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fundamental_ratio(4, {0.3, -0.2}, 0.125));
}
BENCHMARK(BM_FundamentalRatio)->Unit(benchmark::kMillisecond);

void BM_DetEqualsArea(benchmark::State& st) {
  const PlanarMap F = level_map(static_cast<int>(st.range(0)), Orientation::sense_preserving);
  for (auto _ : st) benchmark::DoNotOptimize(det_equals_area_check(F, Rect2d({-0.6, -0.3}, {0.2, 0.5})));
}
BENCHMARK(BM_DetEqualsArea)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
