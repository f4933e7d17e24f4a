#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace lep {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double sqnorm(const Vec2& a) { return a.x * a.x + a.y * a.y; }
inline Vec2 normalized(const Vec2& a) {
  double n = norm(a);
  return n > 0 ? a / n : Vec2{0, 0};
}
// counter-clockwise 90 degree rotation
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double sqnorm(const Vec3& a) { return dot(a, a); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return n > 0 ? a / n : Vec3{0, 0, 0};
}

/// Rigid planar isometry p -> R p + t with R in O(2).
struct Iso2 {
  double r00 = 1, r01 = 0, r10 = 0, r11 = 1;
  Vec2 t;

  Vec2 apply(const Vec2& p) const {
    return {r00 * p.x + r01 * p.y + t.x, r10 * p.x + r11 * p.y + t.y};
  }
  Iso2 inverse() const {
    // R orthogonal, so R^-1 = R^T
    Iso2 inv;
    inv.r00 = r00;
    inv.r01 = r10;
    inv.r10 = r01;
    inv.r11 = r11;
    inv.t = {-(inv.r00 * t.x + inv.r01 * t.y), -(inv.r10 * t.x + inv.r11 * t.y)};
    return inv;
  }
  /// Composition this(other(p)).
  Iso2 compose(const Iso2& o) const {
    Iso2 c;
    c.r00 = r00 * o.r00 + r01 * o.r10;
    c.r01 = r00 * o.r01 + r01 * o.r11;
    c.r10 = r10 * o.r00 + r11 * o.r10;
    c.r11 = r10 * o.r01 + r11 * o.r11;
    c.t = apply(o.t);
    return c;
  }
  static Iso2 from_rows(const Vec2& row0, const Vec2& row1, const Vec2& trans) {
    Iso2 m;
    m.r00 = row0.x;
    m.r01 = row0.y;
    m.r10 = row1.x;
    m.r11 = row1.y;
    m.t = trans;
    return m;
  }
};

// ---- small linear algebra -------------------------------------------------

/// Weighted least-squares gradient fit: minimize sum w_i (g . d_i - v_i)^2.
/// Returns nullopt when the normal matrix is rank deficient.
std::optional<Vec2> fit_gradient_2d(const std::vector<Vec2>& deltas,
                                    const std::vector<double>& dvals,
                                    const std::vector<double>& weights);

std::optional<double> fit_gradient_1d(const std::vector<double>& deltas,
                                      const std::vector<double>& dvals,
                                      const std::vector<double>& weights);

// ---- polygon utilities (branch-local coordinates) --------------------------

double polygon_signed_area(const std::vector<Vec2>& poly);

/// Closed point-in-polygon test; points within tol of the boundary count as inside.
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p, double tol);

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);

double dist_to_polygon_boundary(const std::vector<Vec2>& poly, const Vec2& p);

/// True when the polygon edge loop has no self-intersections or repeated vertices.
bool polygon_is_simple(const std::vector<Vec2>& poly, double tol);

/// Sampled test that the closed segment [a,b] stays inside the closed polygon.
bool segment_in_polygon(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b, double tol);

/// Mean value coordinates of p with respect to the polygon vertices.
/// Linear along edges, smooth inside; weights sum to one.
std::vector<double> mean_value_coordinates(const std::vector<Vec2>& poly, const Vec2& p);

// ---- scalar optimization ----------------------------------------------------

/// Golden-section minimization of f over [lo, hi].
double golden_min(double lo, double hi, int iters, const std::function<double(double)>& f);

// ---- hashing ----------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace lep
