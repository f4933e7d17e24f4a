#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lep/dirichlet.hpp"
#include "lep/io.hpp"
#include "test_util.hpp"

using namespace lep;
using lep::testing::load_fixture;

namespace {

DirichletProblem make_problem(const LepFile& f, const HamiltonianFamily& H, BoundaryData g,
                              MeshParams mesh) {
  DirichletProblem p;
  p.complex = &f.complex;
  p.hamiltonian = &H;
  p.g = std::move(g);
  p.mesh = mesh;
  return p;
}

}  // namespace

TEST_CASE("strict subsolution hypothesis") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H1 = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  DirichletProblem p = make_problem(f, H1, BoundaryData::constant(0), {0.125, 1, 2});
  CHECK(check_h7(p).pass);

  // Weight vanishing at one vertex: fails and names a location.
  std::vector<double> vals{0.0, 1.0, 1.0, 1.0};
  HamiltonianFamily H0 =
      HamiltonianFamily::eikonal(f.complex, {WeightField::samples()}, vals);
  DirichletProblem p0 = make_problem(f, H0, BoundaryData::constant(0), {0.125, 1, 2});
  SolvabilityReport rep = check_h7(p0);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst == doctest::Approx(0.0));
  CHECK(rep.location.find("branch 0") != std::string::npos);

  // Generic evaluator with H(x,0) = 1 > 0.
  HamiltonianFamily Hg = HamiltonianFamily::generic(
      f.complex, [](int, const Vec2&, const Vec2& pp) { return sqnorm(pp) + 1.0; });
  DirichletProblem pg = make_problem(f, Hg, BoundaryData::constant(0), {0.125, 1, 2});
  SolvabilityReport repg = check_h7(pg);
  CHECK_FALSE(repg.pass);
  CHECK_FALSE(repg.conclusive);
}

TEST_CASE("boundary compatibility") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.125, 1, 2});

  DirichletProblem zero = make_problem(f, H, BoundaryData::constant(0), {0.125, 1, 2});
  CHECK(check_boundary_compat(zero, g).pass);
  DirichletProblem shift = make_problem(f, H, BoundaryData::constant(3.5), {0.125, 1, 2});
  CHECK(check_boundary_compat(shift, g).pass);

  LepFile g2x = load_fixture("square_g2x.lep");
  HamiltonianFamily H2 = make_hamiltonian(g2x, "file");
  MetricGraph gg = build_metric_graph(g2x.complex, H2, {0.125, 1, 2});
  DirichletProblem bad =
      make_problem(g2x, H2, make_boundary_data(g2x, "file"), {0.125, 1, 2});
  BoundaryCompatReport rep = check_boundary_compat(bad, gg);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst == doctest::Approx(1.0).epsilon(0.05));  // slope 2 against metric slope 1
  CHECK_THROWS_AS(solve_dirichlet(bad, gg), HypothesisError);
  bad.override_hypotheses = true;
  SolveResult forced = solve_dirichlet(bad, gg);
  CHECK_FALSE(forced.warnings.empty());
}

TEST_CASE("distance to the boundary on the unit square") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H1 = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MeshParams mesh{1.0 / 32, 1, 2};
  MetricGraph g = build_metric_graph(f.complex, H1, mesh);
  DirichletProblem p = make_problem(f, H1, BoundaryData::constant(0), mesh);
  SolveResult res = solve_dirichlet(p, g);
  double uc = field_value_at(g, H1, res.field.values, {0, {0.5, 0.5}});
  CHECK(uc == doctest::Approx(0.5).epsilon(0.05));

  // u = g exactly at boundary nodes.
  for (int n : g.boundary_node_ids()) CHECK(res.field.values[std::size_t(n)] == 0.0);

  // Quadrupling the weight doubles the solution.
  HamiltonianFamily H4 = HamiltonianFamily::eikonal_constant(f.complex, 4.0);
  MetricGraph g4 = build_metric_graph(f.complex, H4, mesh);
  DirichletProblem p4 = make_problem(f, H4, BoundaryData::constant(0), mesh);
  SolveResult res4 = solve_dirichlet(p4, g4);
  double uc4 = field_value_at(g4, H4, res4.field.values, {0, {0.5, 0.5}});
  CHECK(uc4 == doctest::Approx(1.0).epsilon(0.05));
  REQUIRE(res4.field.values.size() == res.field.values.size());
  for (std::size_t i = 0; i < res.field.values.size(); ++i)
    CHECK(std::abs(res4.field.values[i] - 2.0 * res.field.values[i]) <= 1e-12);
}

TEST_CASE("book solution equals the page distance to the nearest boundary") {
  LepFile f = load_fixture("book3.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MeshParams mesh{1.0 / 16, 1, 2};
  MetricGraph g = build_metric_graph(f.complex, H, mesh);
  DirichletProblem p = make_problem(f, H, BoundaryData::constant(0), mesh);
  SolveResult res = solve_dirichlet(p, g);
  // On the spine, the boundary is reached along a page side or the far edge;
  // every page gives the same value through the shared node.
  for (double s : {0.3, 0.5, 0.7}) {
    double expected = std::min({s, 1.0 - s, 1.0});
    double u0 = field_value_at(g, H, res.field.values, {0, {0.0, s}});
    double u1 = field_value_at(g, H, res.field.values, {1, {0.0, s}});
    CHECK(u0 == doctest::Approx(expected).epsilon(0.05));
    CHECK(u0 == doctest::Approx(u1).epsilon(1e-12));
  }
}

TEST_CASE("boundary data monotonicity and constant shifts") {
  LepFile f = load_fixture("dihedral2.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MeshParams mesh{0.125, 1, 2};
  MetricGraph g = build_metric_graph(f.complex, H, mesh);

  SolveResult lo = solve_dirichlet(make_problem(f, H, BoundaryData::constant(0), mesh), g);
  SolveResult hi = solve_dirichlet(make_problem(f, H, BoundaryData::constant(0.1), mesh), g);
  for (std::size_t i = 0; i < lo.field.values.size(); ++i) {
    CHECK(lo.field.values[i] <= hi.field.values[i]);  // exact on the graph
    CHECK(std::abs(hi.field.values[i] - (lo.field.values[i] + 0.1)) <= 1e-12);
  }

  // Vertex-sampled boundary data shifted by a constant.
  LepFile g2x = load_fixture("square_g2x.lep");
  HamiltonianFamily Hs = make_hamiltonian(g2x, "const:9");  // steep metric admits g = 2 x1
  MetricGraph gs = build_metric_graph(g2x.complex, Hs, mesh);
  BoundaryData base = make_boundary_data(g2x, "file");
  BoundaryData shifted = base;
  for (double& v : shifted.vertex_values) v += 0.25;
  SolveResult a = solve_dirichlet(make_problem(g2x, Hs, base, mesh), gs);
  SolveResult b = solve_dirichlet(make_problem(g2x, Hs, shifted, mesh), gs);
  for (std::size_t i = 0; i < a.field.values.size(); ++i)
    CHECK(std::abs(b.field.values[i] - (a.field.values[i] + 0.25)) <= 1e-12);
}

TEST_CASE("multi-source field equals the pointwise minimum over sources") {
  LepFile f = load_fixture("ynet.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MeshParams mesh{0.0625, 1, 2};
  MetricGraph g = build_metric_graph(f.complex, H, mesh);
  DirichletProblem p = make_problem(f, H, BoundaryData::constant(0), mesh);
  SolveResult res = solve_dirichlet(p, g);
  std::vector<int> bn = g.boundary_node_ids();
  REQUIRE(bn.size() == 3);
  std::vector<std::vector<double>> singles;
  for (int n : bn) singles.push_back(distance_field(g, {{n, 0.0}}));
  for (std::size_t i = 0; i < res.field.values.size(); ++i) {
    double mn = std::min({singles[0][i], singles[1][i], singles[2][i]});
    CHECK(std::abs(res.field.values[i] - mn) <= 1e-12);
  }
}

TEST_CASE("components cut off from the boundary become infinite with a warning") {
  LepFile f = load_fixture("disconnected.lep");
  Complex& c = f.complex;
  // Reclassify the far square's facets as unclassified walls so it carries no
  // boundary data at all.
  c.boundary_facets.erase(
      std::remove_if(c.boundary_facets.begin(), c.boundary_facets.end(),
                     [](const FacetRef& fr) { return fr.branch == 1; }),
      c.boundary_facets.end());
  for (Branch& b : c.branches) b.facet_class.clear();
  finalize_complex(c);
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(c, 1.0);
  MeshParams mesh{0.25, 1, 1};
  MetricGraph g = build_metric_graph(c, H, mesh);
  DirichletProblem p;
  p.complex = &c;
  p.hamiltonian = &H;
  p.g = BoundaryData::constant(0);
  p.mesh = mesh;
  SolveResult res = solve_dirichlet(p, g);
  CHECK_FALSE(res.warnings.empty());
  int infinite = 0;
  for (double v : res.field.values)
    if (!std::isfinite(v)) infinite++;
  CHECK(infinite > 0);
}

TEST_CASE("empty boundary is rejected") {
  LepFile f = load_fixture("cube_no_corner_exclusion.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MeshParams mesh{0.25, 1, 1};
  MetricGraph g = build_metric_graph(f.complex, H, mesh);
  DirichletProblem p;
  p.complex = &f.complex;
  p.hamiltonian = &H;
  p.g = BoundaryData::constant(0);
  p.mesh = mesh;
  CHECK_THROWS_AS(solve_dirichlet(p, g), std::invalid_argument);
}
