#include <benchmark/benchmark.h>

#include <memory>

#include "lep/dirichlet.hpp"
#include "lep/io.hpp"

namespace {

using namespace lep;

std::string fix(const char* name) { return std::string(LEP_FIXTURE_DIR) + "/" + name; }

struct Setup {
  LepFile file;
  HamiltonianFamily H;
  Setup(const char* name, const char* fspec)
      : file(load_complex_file(fix(name))), H(make_hamiltonian(file, fspec)) {}
};

void BM_build_graph_square(benchmark::State& state) {
  Setup s("square.lep", "const:1");
  double h = 1.0 / double(state.range(0));
  for (auto _ : state) {
    MetricGraph g = build_metric_graph(s.file.complex, s.H, {h, 1, 2});
    benchmark::DoNotOptimize(g.edges.size());
  }
}
BENCHMARK(BM_build_graph_square)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_build_graph_cube(benchmark::State& state) {
  Setup s("cube.lep", "const:1");
  for (auto _ : state) {
    MetricGraph g = build_metric_graph(s.file.complex, s.H, {1.0 / 16, 1, 2});
    benchmark::DoNotOptimize(g.edges.size());
  }
}
BENCHMARK(BM_build_graph_cube)->Unit(benchmark::kMillisecond);

void BM_distance_query(benchmark::State& state) {
  Setup s("book3.lep", "const:1");
  MetricGraph g = build_metric_graph(s.file.complex, s.H, {1.0 / 32, 1, 2});
  BranchPoint a{0, {0.3, 0.4}}, b{1, {0.5, 0.4}};
  for (auto _ : state) benchmark::DoNotOptimize(graph_distance(g, s.H, a, b));
}
BENCHMARK(BM_distance_query)->Unit(benchmark::kMillisecond);

void BM_solve_dirichlet(benchmark::State& state) {
  Setup s("dihedral2_poly.lep", "file");
  double h = 1.0 / double(state.range(0));
  MeshParams mesh{h, 1, 2};
  MetricGraph g = build_metric_graph(s.file.complex, s.H, mesh);
  DirichletProblem p;
  p.complex = &s.file.complex;
  p.hamiltonian = &s.H;
  p.g = BoundaryData::constant(0);
  p.mesh = mesh;
  for (auto _ : state) {
    SolveResult res = solve_dirichlet(p, g);
    benchmark::DoNotOptimize(res.field.values.data());
  }
}
BENCHMARK(BM_solve_dirichlet)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
