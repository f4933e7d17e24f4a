#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lep/dirichlet.hpp"
#include "lep/io.hpp"
#include "lep/viscosity.hpp"
#include "test_util.hpp"

using namespace lep;
using lep::testing::load_fixture;

namespace {

struct Solved {
  std::unique_ptr<LepFile> file;
  std::unique_ptr<HamiltonianFamily> H;
  MetricGraph graph;
  std::vector<double> u;
};

Solved solve_fixture(const std::string& name, double h, const std::string& fspec = "file") {
  Solved out;
  out.file = std::make_unique<LepFile>(load_fixture(name));
  out.H = std::make_unique<HamiltonianFamily>(make_hamiltonian(*out.file, fspec));
  MeshParams mesh{h, 1, 2};
  out.graph = build_metric_graph(out.file->complex, *out.H, mesh);
  DirichletProblem p;
  p.complex = &out.file->complex;
  p.hamiltonian = out.H.get();
  p.g = BoundaryData::constant(0);
  p.mesh = mesh;
  out.u = solve_dirichlet(p, out.graph).field.values;
  return out;
}

std::vector<double> scaled(const std::vector<double>& u, double s) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i];
  return out;
}

}  // namespace

TEST_CASE("solver output is a subsolution and an interior supersolution") {
  Solved s = solve_fixture("square.lep", 1.0 / 32);
  CheckReport sub = check_subsolution(s.graph, *s.H, s.u);
  INFO(sub.summary());
  CHECK(sub.all_pass());
  CHECK(sub.tol == doctest::Approx(10.0 * (1.0 / 32) * 2.0));

  CheckOptions interior;
  interior.exclude_sigma = true;
  CheckReport super = check_supersolution(s.graph, *s.H, s.u, interior);
  INFO(super.summary());
  CHECK(super.all_pass());
}

TEST_CASE("scaled fields violate the conditions in the expected direction") {
  Solved s = solve_fixture("square.lep", 1.0 / 32);

  CheckReport sub2 = check_subsolution(s.graph, *s.H, scaled(s.u, 2.0));
  CHECK_FALSE(sub2.all_pass());
  CHECK(sub2.max_residual == doctest::Approx(3.0).epsilon(0.2));  // |2 Du|^2 - 1

  CheckOptions interior;
  interior.exclude_sigma = true;
  CheckReport sup_half = check_supersolution(s.graph, *s.H, scaled(s.u, 0.5), interior);
  CHECK_FALSE(sup_half.all_pass());
  CHECK(sup_half.max_residual == doctest::Approx(0.75).epsilon(0.2));  // 1 - |Du/2|^2

  // A constant is always a subsolution of |Du|^2 = 1, never a supersolution.
  std::vector<double> flat(s.u.size(), 0.7);
  CheckReport sub_const = check_subsolution(s.graph, *s.H, flat);
  CHECK(sub_const.all_pass());
  CHECK(sub_const.max_residual == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_FALSE(check_supersolution(s.graph, *s.H, flat, interior).all_pass());
}

TEST_CASE("transition sites accept the solver field and reject scaled ones") {
  Solved s = solve_fixture("book3.lep", 1.0 / 16);
  CheckReport sub = check_subsolution(s.graph, *s.H, s.u);
  INFO(sub.summary());
  CHECK(sub.all_pass());
  int transition_sites = 0;
  for (const SiteRecord& r : sub.sites)
    if (r.cond == ConditionClass::TransitionSubsolution && !r.vacuous) transition_sites++;
  CHECK(transition_sites > 0);

  CheckReport sub2 = check_subsolution(s.graph, *s.H, scaled(s.u, 2.0));
  bool transition_failed = false;
  for (const SiteRecord& r : sub2.sites)
    if (r.cond == ConditionClass::TransitionSubsolution && !r.pass) transition_failed = true;
  CHECK(transition_failed);

  CheckReport super = check_supersolution(s.graph, *s.H, s.u);
  INFO(super.summary());
  CHECK(super.all_pass());  // best-effort transition supersolution
}

TEST_CASE("single-source distance fields are supersolutions away from the source") {
  Solved s = solve_fixture("book3.lep", 1.0 / 16);
  int src = nearest_node(s.graph, {0, {0.5, 0.5}});
  std::vector<double> field = distance_field(s.graph, {{src, 0.0}});
  CheckOptions opts;
  opts.exclude_near = {s.graph.nodes[std::size_t(src)].pos};
  opts.exclude_radius = 4.0 / 16;
  CheckReport super = check_supersolution(s.graph, *s.H, field, opts);
  INFO(super.summary());
  CHECK(super.all_pass());
  CheckReport sub = check_subsolution(s.graph, *s.H, field);
  CHECK(sub.all_pass());
}

TEST_CASE("checks reproduce analytic residuals on closed-form fields") {
  Solved s = solve_fixture("square.lep", 1.0 / 32);
  // Linear ramp u = 0.6 x1: residual is exactly 0.36 - 1 everywhere.
  std::vector<double> ramp(s.u.size());
  for (std::size_t i = 0; i < ramp.size(); ++i)
    ramp[i] = 0.6 * s.graph.local_of(0, int(i)).x;
  CheckReport sub = check_subsolution(s.graph, *s.H, ramp);
  CHECK(sub.all_pass());
  for (const SiteRecord& r : sub.sites)
    if (!r.vacuous) CHECK(r.residual == doctest::Approx(-0.64).epsilon(1e-6));
  CheckOptions interior;
  interior.exclude_sigma = true;
  CheckReport super = check_supersolution(s.graph, *s.H, ramp, interior);
  for (const SiteRecord& r : super.sites)
    if (!r.vacuous) CHECK(r.residual == doctest::Approx(0.64).epsilon(1e-6));
}

TEST_CASE("residuals shrink down the refinement ladder") {
  // The worst-site residual is noisy step to step (boundary-layer stencils),
  // so the trend is asserted across the ladder and against the tolerance law.
  CheckOptions opts;
  opts.tol = 1e9;  // measure residuals only
  std::vector<double> maxr;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    Solved s = solve_fixture("square.lep", h);
    double r = check_subsolution(s.graph, *s.H, s.u, opts).max_residual;
    CHECK(r <= 10.0 * h * 2.0);  // always within the tolerance law
    maxr.push_back(r);
  }
  CHECK(maxr.back() <= 2.0 * maxr.front() + 1e-12);
}

TEST_CASE("the Lipschitz bound holds with the metric slope") {
  Solved s1 = solve_fixture("square.lep", 1.0 / 32);
  LipschitzReport rep1 = check_lipschitz(s1.graph, s1.u, s1.H->lipschitz_bound());
  CHECK(rep1.pass);
  CHECK(rep1.max_ratio <= 1.0 + 10.0 / 32);

  Solved s4 = solve_fixture("square.lep", 1.0 / 32, "const:4");
  LipschitzReport rep4 = check_lipschitz(s4.graph, s4.u, s4.H->lipschitz_bound());
  CHECK(rep4.pass);
  CHECK(rep4.max_ratio <= 2.0 * (1.0 + 10.0 / 32));

  std::vector<double> flat(s1.u.size(), 3.0);
  CHECK(check_lipschitz(s1.graph, flat, 1.0).max_ratio == 0.0);
}

TEST_CASE("fields breaking the Lipschitz bound also break the subsolution test") {
  Solved s = solve_fixture("square.lep", 1.0 / 32);
  std::vector<double> triple = scaled(s.u, 3.0);
  LipschitzReport lip = check_lipschitz(s.graph, triple, s.H->lipschitz_bound() + 1.0);
  CHECK_FALSE(lip.pass);
  CHECK_FALSE(check_subsolution(s.graph, *s.H, triple).all_pass());
}

TEST_CASE("comparison principle on solver outputs") {
  Solved s = solve_fixture("dihedral2.lep", 1.0 / 16);
  DirichletProblem p;
  p.complex = &s.file->complex;
  p.hamiltonian = s.H.get();
  p.g = BoundaryData::constant(0.1);
  p.mesh = MeshParams{1.0 / 16, 1, 2};
  std::vector<double> v = solve_dirichlet(p, s.graph).field.values;

  CompareReport rep = compare_fields(s.graph, s.u, v);
  CHECK(rep.precondition_met);
  CHECK(rep.pass);

  // Scaled subsolutions stay below the solution.
  CompareReport theta = compare_fields(s.graph, scaled(s.u, 0.9), s.u);
  CHECK(theta.precondition_met);
  CHECK(theta.pass);

  // Boundary ordering violated: no verdict.
  std::vector<double> above(s.u.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) above[i] = s.u[i] + 0.1;
  CompareReport unmet = compare_fields(s.graph, above, s.u);
  CHECK_FALSE(unmet.precondition_met);
  CHECK(unmet.note.find("precondition unmet") != std::string::npos);
}

TEST_CASE("theta-scaled solutions pass the subsolution check and stay below") {
  Solved s = solve_fixture("square.lep", 1.0 / 32);
  for (double theta : {0.25, 0.5, 0.75}) {
    std::vector<double> tu = scaled(s.u, theta);
    CheckReport sub = check_subsolution(s.graph, *s.H, tu);
    INFO("theta = " << theta << ": " << sub.summary());
    CHECK(sub.all_pass());
    for (std::size_t i = 0; i < tu.size(); ++i) CHECK(tu[i] <= s.u[i] + 1e-15);
  }
}

TEST_CASE("segment networks run through the same harness") {
  Solved s = solve_fixture("fig1.lep", 1.0 / 32);
  CheckReport sub = check_subsolution(s.graph, *s.H, s.u);
  INFO(sub.summary());
  CHECK(sub.all_pass());
  CheckOptions interior;
  interior.exclude_sigma = true;
  CHECK(check_supersolution(s.graph, *s.H, s.u, interior).all_pass());
  CheckReport super = check_supersolution(s.graph, *s.H, s.u);
  INFO(super.summary());
  CHECK(super.all_pass());
}

TEST_CASE("mismatched field sizes are rejected") {
  Solved s = solve_fixture("square.lep", 0.25);
  std::vector<double> wrong(s.u.size() + 3, 0.0);
  CHECK_THROWS_AS(check_subsolution(s.graph, *s.H, wrong), std::invalid_argument);
  CHECK_THROWS_AS(compare_fields(s.graph, wrong, wrong), std::invalid_argument);
}
