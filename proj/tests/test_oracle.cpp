#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lep/oracle.hpp"
#include "test_util.hpp"

using namespace lep;
using lep::testing::crossing_length;
using lep::testing::load_fixture;

TEST_CASE("unfold distance matches the crossing formula on the book") {
  LepFile f = load_fixture("book3.lep");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (int t = 0; t < 30; ++t) {
    Vec2 a{unif(rng), unif(rng)}, b{unif(rng), unif(rng)};
    int j = int(rng() % 3);
    int k = (j + 1 + int(rng() % 2)) % 3;
    CHECK(unfold_distance(f.complex, 0, j, a, k, b) ==
          doctest::Approx(crossing_length(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("unfold chains reject unrealizable double crossings") {
  LepFile f = load_fixture("book3.lep");
  // Going page 0 -> page 2 -> page 1 folds the image back to the same side;
  // the straight segment never crosses the spine twice, so the minimum must
  // come from the direct crossing.
  double d = min_unfold_distance(f.complex, {0, {0.3, 0.4}}, {1, {0.5, 0.4}});
  CHECK(d == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("unfold chains across the cube") {
  LepFile f = load_fixture("cube.lep");
  double d = min_unfold_distance(f.complex, {0, {0.5, 0.5}}, {1, {0.5, 0.5}}, 3);
  CHECK(d == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("brute force on a single segment is the exact length") {
  Complex c;
  c.ambient_dim = 2;
  c.branch_dim = 1;
  c.vertices = {{0, 0, 0}, {0.75, 0, 0}};
  c.branches.resize(1);
  c.branches[0].id = 0;
  c.branches[0].vertex_ids = {0, 1};
  c.boundary_facets = {{0, 0}, {0, 1}};
  finalize_complex(c);
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(c, 1.0);
  double act = brute_force_action(c, H, {0, {0, 0}}, {0, {0.75, 0}});
  CHECK(act == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("brute force agrees with unfolding on the flat dihedral") {
  LepFile f = load_fixture("dihedral2.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  BruteForceOptions opts;
  opts.depth = 2;
  BranchPoint a{0, {0.4, 0.35}}, b{1, {0.5, 0.6}};
  double oracle = crossing_length(a.local, b.local);
  double act = brute_force_action(f.complex, H, a, b, opts);
  CHECK(act == doctest::Approx(oracle).epsilon(0.02));
  CHECK(act >= oracle - 1e-9);  // upper bound
}

TEST_CASE("scaling the weight by four doubles the action") {
  LepFile f = load_fixture("dihedral2.lep");
  HamiltonianFamily H1 = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  HamiltonianFamily H4 = HamiltonianFamily::eikonal_constant(f.complex, 4.0);
  BruteForceOptions opts;
  opts.depth = 1;
  BranchPoint a{0, {0.3, 0.3}}, b{1, {0.4, 0.6}};
  double a1 = brute_force_action(f.complex, H1, a, b, opts);
  double a4 = brute_force_action(f.complex, H4, a, b, opts);
  CHECK(a4 == doctest::Approx(2.0 * a1).epsilon(1e-6));
}

TEST_CASE("deeper searches never increase the bound") {
  LepFile f = load_fixture("dihedral2_poly.lep");
  HamiltonianFamily H = make_hamiltonian(f, "file");
  BranchPoint a{0, {0.5, 0.25}}, b{1, {0.5, 0.75}};
  BruteForceOptions d1;
  d1.depth = 1;
  BruteForceOptions d2;
  d2.depth = 2;
  double a1 = brute_force_action(f.complex, H, a, b, d1);
  double a2 = brute_force_action(f.complex, H, a, b, d2);
  CHECK(a2 <= a1 + 1e-6);
}

TEST_CASE("budget overruns raise with a partial bound") {
  LepFile f = load_fixture("dihedral2.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  BruteForceOptions opts;
  opts.depth = 2;
  opts.budget = 50;
  try {
    brute_force_action(f.complex, H, {0, {0.4, 0.35}}, {1, {0.5, 0.6}}, opts);
    FAIL("expected BruteForceBudgetExceeded");
  } catch (const BruteForceBudgetExceeded& e) {
    CHECK(e.partial_bound > 0);
    CHECK(std::isfinite(e.partial_bound));
  }
}

TEST_CASE("large complexes are out of the oracle's scope") {
  LepFile f = load_fixture("fig1.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  CHECK_THROWS_AS(brute_force_action(f.complex, H, {0, {0.1, 0}}, {5, {0.1, 0}}, {}),
                  std::invalid_argument);
}

TEST_CASE("brute force through a segment junction") {
  LepFile f = load_fixture("ynet.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  // Legs of length 1 joined at the center: 0.4 and 0.3 from the junction.
  double act = brute_force_action(f.complex, H, {0, {0.6, 0}}, {1, {0.7, 0}}, {});
  CHECK(act == doctest::Approx(1.3).epsilon(1e-6));
}
