#include "lep/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lep {

std::optional<Vec2> fit_gradient_2d(const std::vector<Vec2>& deltas,
                                    const std::vector<double>& dvals,
                                    const std::vector<double>& weights) {
  // Normal equations A g = b with A = sum w d d^T.
  double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
  double scale = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const Vec2& d = deltas[i];
    double w = weights[i];
    a00 += w * d.x * d.x;
    a01 += w * d.x * d.y;
    a11 += w * d.y * d.y;
    b0 += w * d.x * dvals[i];
    b1 += w * d.y * dvals[i];
    scale += w * sqnorm(d);
  }
  double det = a00 * a11 - a01 * a01;
  if (deltas.size() < 2 || scale <= 0 || det <= 1e-10 * scale * scale) return std::nullopt;
  return Vec2{(a11 * b0 - a01 * b1) / det, (a00 * b1 - a01 * b0) / det};
}

std::optional<double> fit_gradient_1d(const std::vector<double>& deltas,
                                      const std::vector<double>& dvals,
                                      const std::vector<double>& weights) {
  double a = 0, b = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    a += weights[i] * deltas[i] * deltas[i];
    b += weights[i] * deltas[i] * dvals[i];
  }
  if (deltas.empty() || a <= 0) return std::nullopt;
  return b / a;
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
  double s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double len2 = sqnorm(ab);
  if (len2 == 0) return norm(p - a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

double dist_to_polygon_boundary(const std::vector<Vec2>& poly, const Vec2& p) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    d = std::min(d, dist_point_segment(p, poly[i], poly[(i + 1) % poly.size()]));
  return d;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p, double tol) {
  if (dist_to_polygon_boundary(poly, p) <= tol) return true;
  // Crossing-number test; boundary proximity already handled above.
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

namespace {

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                                 double tol) {
  double d1 = cross(b - a, c - a);
  double d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c);
  double d4 = cross(d - c, b - c);
  return ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
         ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol));
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& poly, double tol) {
  std::size_t m = poly.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (norm(poly[i] - poly[j]) <= tol) return false;
  for (std::size_t i = 0; i < m; ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % m];
    for (std::size_t j = i + 1; j < m; ++j) {
      // Adjacent edges share a vertex; skip them.
      if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
      Vec2 c = poly[j], d = poly[(j + 1) % m];
      double area_tol = tol * std::max({norm(b - a), norm(d - c), 1e-300});
      if (segments_properly_intersect(a, b, c, d, area_tol)) return false;
      // Collinear overlap: endpoint of one edge interior to the other.
      if (dist_point_segment(c, a, b) <= tol && norm(c - a) > tol && norm(c - b) > tol)
        return false;
      if (dist_point_segment(a, c, d) <= tol && norm(a - c) > tol && norm(a - d) > tol)
        return false;
    }
  }
  return true;
}

bool segment_in_polygon(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b, double tol) {
  const int samples = 8;
  for (int i = 0; i <= samples; ++i) {
    double t = double(i) / samples;
    if (!point_in_polygon(poly, a + (b - a) * t, tol)) return false;
  }
  return true;
}

std::vector<double> mean_value_coordinates(const std::vector<Vec2>& poly, const Vec2& p) {
  // Floater's mean value coordinates with the standard boundary special cases.
  std::size_t m = poly.size();
  std::vector<double> w(m, 0.0);
  std::vector<Vec2> s(m);
  std::vector<double> r(m);
  double scale = 0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, norm(poly[i] - p));
  double eps = 1e-12 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = poly[i] - p;
    r[i] = norm(s[i]);
    if (r[i] <= eps) {  // p coincides with vertex i
      w[i] = 1.0;
      return w;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = (i + 1) % m;
    double area = cross(s[i], s[j]);
    double d = dot(s[i], s[j]);
    if (std::abs(area) <= eps * r[i] * r[j] && d < 0) {
      // p on the open edge (i, j): linear interpolation along it.
      std::fill(w.begin(), w.end(), 0.0);
      double t = r[i] / (r[i] + r[j]);
      w[i] = 1.0 - t;
      w[j] = t;
      return w;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t prev = (i + m - 1) % m;
    std::size_t next = (i + 1) % m;
    auto half_tan = [&](std::size_t a_idx, std::size_t b_idx) {
      double area = cross(s[a_idx], s[b_idx]);
      double d = dot(s[a_idx], s[b_idx]);
      // tan(alpha/2) = (|a||b| - a.b) / cross(a, b)
      return (r[a_idx] * r[b_idx] - d) / area;
    };
    w[i] = (half_tan(prev, i) + half_tan(i, next)) / r[i];
  }
  double total = 0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

double golden_min(double lo, double hi, int iters, const std::function<double(double)>& f) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  return std::min({f(xm), fc, fd});
}

}  // namespace lep
