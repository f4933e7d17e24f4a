#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lep/metric_graph.hpp"
#include "test_util.hpp"

using namespace lep;
using lep::testing::crossing_length;
using lep::testing::load_fixture;

TEST_CASE("mesh parameters are validated") {
  CHECK_THROWS_AS(MeshParams({-0.1, 1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(MeshParams({0.1, 0, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(MeshParams({0.1, 1, 0}).validate(), std::invalid_argument);
}

TEST_CASE("unit square at h=0.25 ring-1: node count and weight bounds") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.25, 1, 1});
  CHECK(g.nodes.size() >= 16);
  CHECK(g.nodes.size() <= 64);
  for (const GraphEdge& e : g.edges) {
    CHECK(e.w > 0.0);
    CHECK(e.w <= 0.5);
    CHECK(e.w == doctest::Approx(e.len).epsilon(1e-9));  // unit weight metric
  }
}

TEST_CASE("spine nodes are shared by all incident pages") {
  LepFile f = load_fixture("book3.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.25, 1, 2});
  int sigma_nodes = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!g.nodes[i].on_sigma()) continue;
    sigma_nodes++;
    for (int b = 0; b < 3; ++b) CHECK(g.branch_has_node(b, int(i)));
    // Fans from every page: edges into at least the three incident branches.
    std::set<int> branches;
    for (int k = g.adj_offset[i]; k < g.adj_offset[i + 1]; ++k)
      branches.insert(g.edges[std::size_t(g.adj_edge[std::size_t(k)])].branch);
    CHECK(branches.size() >= 3);
  }
  CHECK(sigma_nodes >= 4);
}

TEST_CASE("a single segment meshes into a path graph") {
  Complex c;
  c.ambient_dim = 2;
  c.branch_dim = 1;
  c.vertices = {{0, 0, 0}, {1, 0, 0}};
  c.branches.resize(1);
  c.branches[0].id = 0;
  c.branches[0].vertex_ids = {0, 1};
  c.boundary_facets = {{0, 0}, {0, 1}};
  finalize_complex(c);
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(c, 1.0);
  MetricGraph g = build_metric_graph(c, H, {0.25, 1, 1});
  CHECK(g.nodes.size() == 5);
  CHECK(g.edges.size() == 4);
  CHECK(graph_distance(g, H, {0, {0, 0}}, {0, {1, 0}}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat geodesics: square diagonal within 5 percent") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {1.0 / 32, 1, 2});
  double d = graph_distance(g, H, {0, {0, 0}}, {0, {1, 1}});
  CHECK(d == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(d >= std::sqrt(2.0) - 1e-9);  // graph paths are admissible connections
}

TEST_CASE("ramified geodesics through the book spine") {
  LepFile f = load_fixture("book3.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {1.0 / 32, 1, 2});
  BranchPoint a{0, {0.3, 0.4}}, b{1, {0.5, 0.4}};
  CHECK(graph_distance(g, H, a, b) == doctest::Approx(0.8).epsilon(0.05));
  BranchPoint c2{2, {0.25, 0.7}};
  CHECK(graph_distance(g, H, a, c2) ==
        doctest::Approx(crossing_length(a.local, c2.local)).epsilon(0.05));
}

TEST_CASE("distance between opposite cube face centers") {
  LepFile f = load_fixture("cube.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {1.0 / 16, 1, 2});
  double d = graph_distance(g, H, {0, {0.5, 0.5}}, {1, {0.5, 0.5}});
  CHECK(d == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("metric identities on graph nodes") {
  LepFile f = load_fixture("book3.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.125, 1, 2});
  std::mt19937_64 rng(31);
  std::vector<int> picks;
  for (int i = 0; i < 24; ++i) picks.push_back(int(rng() % g.nodes.size()));
  std::vector<std::vector<double>> dist;
  for (int p : picks) dist.push_back(distance_field(g, {{p, 0.0}}));
  for (std::size_t i = 0; i < picks.size(); ++i) {
    CHECK(dist[i][std::size_t(picks[i])] == 0.0);  // S(x,x) = 0 exactly
    for (std::size_t j = 0; j < picks.size(); ++j)
      CHECK(std::abs(dist[i][std::size_t(picks[j])] - dist[j][std::size_t(picks[i])]) <= 1e-12);
  }
  for (int t = 0; t < 400; ++t) {
    std::size_t i = rng() % picks.size(), j = rng() % picks.size(), k = rng() % picks.size();
    double xy = dist[i][std::size_t(picks[j])];
    double yz = dist[j][std::size_t(picks[k])];
    double xz = dist[i][std::size_t(picks[k])];
    CHECK(xz <= xy + yz + 1e-12);
  }
}

TEST_CASE("refinement keeps distances stable and improves lattice directions") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph coarse = build_metric_graph(f.complex, H, {0.125, 1, 2});
  MetricGraph fine = build_metric_graph(f.complex, H, {0.0625, 1, 2});
  // The node lattice refines in place, but boundary-layer triangulations may
  // shuffle long sliver edges, so non-increase holds only up to that noise;
  // the residual error in off-lattice directions is angular, not h-driven.
  std::vector<std::pair<BranchPoint, BranchPoint>> pairs{
      {{0, {0, 0}}, {0, {1, 1}}},
      {{0, {0, 0}}, {0, {1, 0.5}}},
      {{0, {0.5, 0}}, {0, {0.25, 1}}},
  };
  for (auto& [a, b] : pairs) {
    double dc = graph_distance(coarse, H, a, b);
    double df = graph_distance(fine, H, a, b);
    CHECK(df <= dc * (1.0 + 1e-2));
  }
  // Lattice-aligned direction: the error against the exact distance shrinks.
  double dc = graph_distance(coarse, H, {0, {0.5, 0}}, {0, {0.5, 1}});
  double df = graph_distance(fine, H, {0, {0.5, 0}}, {0, {0.5, 1}});
  CHECK(std::abs(df - 1.0) <= std::abs(dc - 1.0) + 1e-12);
}

TEST_CASE("multi-source fields") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.125, 1, 2});
  int s0 = nearest_node(g, {0, {0, 0.5}});
  int s1 = nearest_node(g, {0, {1, 0.5}});
  REQUIRE(s0 >= 0);
  REQUIRE(s1 >= 0);

  std::vector<double> single = distance_field(g, {{s0, 0.0}});
  // One source with offset zero reproduces plain distances.
  for (int t = 0; t < 10; ++t)
    CHECK(single[std::size_t((t * 37) % g.nodes.size())] ==
          distance_field(g, {{s0, 0.0}})[std::size_t((t * 37) % g.nodes.size())]);

  // Multi-source equals the pointwise minimum of per-source runs.
  std::vector<double> multi = distance_field(g, {{s0, 0.1}, {s1, 0.3}});
  std::vector<double> other = distance_field(g, {{s1, 0.3}});
  for (std::size_t i = 0; i < multi.size(); ++i)
    CHECK(multi[i] == doctest::Approx(std::min(single[i] + 0.1, other[i])).epsilon(1e-12));

  // Shifting every offset shifts the field by the same constant.
  std::vector<double> shifted = distance_field(g, {{s0, 0.1 + 0.7}, {s1, 0.3 + 0.7}});
  for (std::size_t i = 0; i < multi.size(); ++i)
    CHECK(shifted[i] == doctest::Approx(multi[i] + 0.7).epsilon(1e-12));

  // Source order never matters.
  std::vector<double> swapped = distance_field(g, {{s1, 0.3}, {s0, 0.1}});
  for (std::size_t i = 0; i < multi.size(); ++i) CHECK(swapped[i] == multi[i]);

  CHECK_THROWS_AS(distance_field(g, {}), std::invalid_argument);
}

TEST_CASE("symmetric sources on a symmetric network give a symmetric field") {
  // The Y network discretizes each leg identically, so the swap isometry of
  // legs 1 and 2 acts exactly on the graph.
  LepFile f = load_fixture("ynet.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.0625, 1, 2});
  int s1 = nearest_node(g, {1, {1, 0}});
  int s2 = nearest_node(g, {2, {1, 0}});
  std::vector<double> field = distance_field(g, {{s1, 0.0}, {s2, 0.0}});
  for (int id1 : g.branch_nodes[1]) {
    double u = g.local_of(1, id1).x;
    for (int id2 : g.branch_nodes[2])
      if (std::abs(g.local_of(2, id2).x - u) < 1e-12)
        CHECK(std::abs(field[std::size_t(id1)] - field[std::size_t(id2)]) <= 1e-12);
  }
}

TEST_CASE("fields are Lipschitz with the metric slope") {
  LepFile f = load_fixture("dihedral2.lep");
  HamiltonianFamily H4 = HamiltonianFamily::eikonal_constant(f.complex, 4.0);
  MetricGraph g4 = build_metric_graph(f.complex, H4, {0.125, 1, 2});
  HamiltonianFamily H1 = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g1 = build_metric_graph(f.complex, H1, {0.125, 1, 2});
  REQUIRE(g1.nodes.size() == g4.nodes.size());  // node layout is weight independent

  std::vector<double> u = distance_field(g4, {{0, 0.0}});
  std::vector<double> unit = distance_field(g1, {{0, 0.0}});
  double ck = H4.lipschitz_bound();
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    std::size_t i = rng() % g4.nodes.size();
    CHECK(std::abs(u[i] - u[0]) <= ck * unit[i] + 1e-9);
  }
}

TEST_CASE("off-complex query points are rejected") {
  LepFile f = load_fixture("square.lep");
  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(f.complex, 1.0);
  MetricGraph g = build_metric_graph(f.complex, H, {0.25, 1, 2});
  CHECK_THROWS_AS(graph_distance(g, H, {0, {2.0, 0.5}}, {0, {0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(graph_distance(g, H, {3, {0.5, 0.5}}, {0, {0.5, 0.5}}), std::invalid_argument);
}

TEST_CASE("coincident excluded facets stay walls") {
  // Branches A (z=0) and C (y=0) share the segment between vertices 0 and 1
  // as an excluded boundary facet on both sides; they connect only through
  // the bridge branch D (x=1). Paths must not tunnel through the shared
  // boundary facet.
  Complex c;
  c.ambient_dim = 3;
  c.branch_dim = 2;
  c.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                {1, 0, 1}, {0, 0, 1}, {1, 1, 1}};
  c.branches.resize(3);
  c.branches[0].id = 0;
  c.branches[0].vertex_ids = {0, 1, 2, 3};  // A, z=0
  c.branches[1].id = 1;
  c.branches[1].vertex_ids = {0, 1, 4, 5};  // C, y=0
  c.branches[2].id = 2;
  c.branches[2].vertex_ids = {1, 2, 6, 4};  // D, x=1
  c.ram_edges.resize(2);
  c.ram_edges[0].id = 0;
  c.ram_edges[0].incident = {{0, 1, {}}, {2, 0, {}}};  // A right edge (1,2) to D
  c.ram_edges[1].id = 1;
  c.ram_edges[1].incident = {{1, 1, {}}, {2, 3, {}}};  // C edge (1,4) to D
  for (int fc : {0, 2, 3}) c.boundary_facets.push_back({0, fc});
  for (int fc : {0, 2, 3}) c.boundary_facets.push_back({1, fc});
  for (int fc : {1, 2}) c.boundary_facets.push_back({2, fc});
  finalize_complex(c);
  REQUIRE(validate(c).valid);

  HamiltonianFamily H = HamiltonianFamily::eikonal_constant(c, 1.0);
  MetricGraph g = build_metric_graph(c, H, {0.125, 1, 2});
  // Mirror points just off the shared facet: tunneling would cost ~0.2, the
  // shortest legal route hugs the glued fan around vertex 1.
  double d = graph_distance(g, H, {0, {0.5, 0.1}}, {1, {0.5, 0.1}});
  CHECK(d > 1.0);
  double corner_route = 2.0 * std::hypot(0.5, 0.1);
  CHECK(d == doctest::Approx(corner_route).epsilon(0.06));
}
