#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lep/geom.hpp"

using namespace lep;

TEST_CASE("weighted least squares recovers linear gradients exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Vec2 grad{unif(rng), unif(rng)};
    std::vector<Vec2> deltas;
    std::vector<double> dvals, ws;
    for (int i = 0; i < 6; ++i) {
      Vec2 d{unif(rng), unif(rng)};
      deltas.push_back(d);
      dvals.push_back(dot(grad, d));
      ws.push_back(1.0 / (1e-6 + norm(d)));
    }
    auto fit = fit_gradient_2d(deltas, dvals, ws);
    REQUIRE(fit.has_value());
    CHECK(norm(*fit - grad) < 1e-9);
  }
}

TEST_CASE("rank-deficient stencils are rejected") {
  std::vector<Vec2> deltas{{1, 0}, {2, 0}, {-1, 0}};
  std::vector<double> dvals{1, 2, -1}, ws{1, 1, 1};
  CHECK_FALSE(fit_gradient_2d(deltas, dvals, ws).has_value());
  CHECK(fit_gradient_1d({1, 2, -1}, dvals, ws).has_value());
}

TEST_CASE("point in polygon with boundary tolerance") {
  std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(point_in_polygon(square, {0.5, 0.5}, 0));
  CHECK(point_in_polygon(square, {0, 0.4}, 1e-12));
  CHECK_FALSE(point_in_polygon(square, {1.1, 0.5}, 1e-12));
  CHECK(polygon_signed_area(square) == doctest::Approx(1.0));
}

TEST_CASE("segment containment in a concave polygon") {
  // L-shape: the diagonal across the notch leaves the polygon.
  std::vector<Vec2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK(polygon_is_simple(ell, 1e-12));
  CHECK(segment_in_polygon(ell, {0.5, 0.5}, {0.5, 1.5}, 1e-9));
  CHECK_FALSE(segment_in_polygon(ell, {1.8, 0.8}, {0.8, 1.8}, 1e-9));
}

TEST_CASE("self-intersecting polygons are not simple") {
  std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(polygon_is_simple(bowtie, 1e-12));
}

TEST_CASE("mean value coordinates: partition of unity and linear precision") {
  std::vector<Vec2> poly{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 1}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  Vec2 lin{0.3, -0.7};
  for (int t = 0; t < 50; ++t) {
    Vec2 p{unif(rng) * 2, unif(rng)};
    if (!point_in_polygon(poly, p, 0)) continue;
    auto w = mean_value_coordinates(poly, p);
    double sum = 0, fx = 0;
    Vec2 rec{0, 0};
    for (std::size_t i = 0; i < w.size(); ++i) {
      sum += w[i];
      rec = rec + poly[i] * w[i];
      fx += w[i] * dot(lin, poly[i]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(rec - p) < 1e-10);          // barycentric reproduction
    CHECK(fx == doctest::Approx(dot(lin, p)).epsilon(1e-9));
  }
}

TEST_CASE("mean value coordinates on edges and vertices") {
  std::vector<Vec2> tri{{0, 0}, {1, 0}, {0, 1}};
  auto w_edge = mean_value_coordinates(tri, {0.25, 0});
  CHECK(w_edge[0] == doctest::Approx(0.75));
  CHECK(w_edge[1] == doctest::Approx(0.25));
  CHECK(w_edge[2] == doctest::Approx(0.0));
  auto w_vert = mean_value_coordinates(tri, {0, 1});
  CHECK(w_vert[2] == doctest::Approx(1.0));
}

TEST_CASE("planar isometries compose and invert") {
  Iso2 rot = Iso2::from_rows({0, -1}, {1, 0}, {0.5, -2});
  Iso2 other = Iso2::from_rows({1, 0}, {0, -1}, {3, 1});
  Vec2 p{0.3, 0.7};
  Vec2 q = rot.compose(other).apply(p);
  CHECK(norm(q - rot.apply(other.apply(p))) < 1e-15);
  Vec2 back = rot.inverse().apply(rot.apply(p));
  CHECK(norm(back - p) < 1e-15);
}

TEST_CASE("golden section finds scalar minima") {
  double m = golden_min(-2, 5, 64, [](double x) { return (x - 1.3) * (x - 1.3) + 2; });
  CHECK(m == doctest::Approx(2.0).epsilon(1e-10));
}
