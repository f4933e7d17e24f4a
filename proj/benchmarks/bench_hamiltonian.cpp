#include <benchmark/benchmark.h>

#include "lep/io.hpp"

namespace {

using namespace lep;

std::string fix(const char* name) { return std::string(LEP_FIXTURE_DIR) + "/" + name; }

void BM_gauge_closed_form(benchmark::State& state) {
  LepFile f = load_complex_file(fix("dihedral2_poly.lep"));
  HamiltonianFamily H = make_hamiltonian(f, "file");
  Vec2 x{0.4, 0.6}, q{0.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(H.gauge(0, x, q));
}
BENCHMARK(BM_gauge_closed_form);

void BM_gauge_numeric(benchmark::State& state) {
  LepFile f = load_complex_file(fix("square.lep"));
  HamiltonianFamily H = HamiltonianFamily::generic(
      f.complex, [](int, const Vec2&, const Vec2& p) { return sqnorm(p) - 2.0; });
  Vec2 x{0.4, 0.6}, q{0.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(H.gauge(0, x, q));
}
BENCHMARK(BM_gauge_numeric)->Unit(benchmark::kMillisecond);

void BM_legendre_numeric(benchmark::State& state) {
  LepFile f = load_complex_file(fix("square.lep"));
  HamiltonianFamily H = HamiltonianFamily::generic(
      f.complex, [](int, const Vec2&, const Vec2& p) { return sqnorm(p) - 2.0; });
  Vec2 x{0.4, 0.6}, q{1.3, -0.7};
  for (auto _ : state) benchmark::DoNotOptimize(H.lagrangian(0, x, q));
}
BENCHMARK(BM_legendre_numeric)->Unit(benchmark::kMicrosecond);

void BM_check_compatibility(benchmark::State& state) {
  LepFile f = load_complex_file(fix("cube.lep"));
  HamiltonianFamily H = make_hamiltonian(f, "const:1");
  for (auto _ : state) benchmark::DoNotOptimize(check_compatibility(f.complex, H, 8, 1).all_pass());
}
BENCHMARK(BM_check_compatibility)->Unit(benchmark::kMillisecond);

}  // namespace
