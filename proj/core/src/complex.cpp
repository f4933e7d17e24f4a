#include "lep/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lep {

namespace {

std::string facet_name(const FacetRef& f) {
  std::ostringstream os;
  os << f.branch << ":" << f.facet;
  return os.str();
}

}  // namespace

double Complex::bbox_diameter() const {
  if (vertices.empty()) return 1.0;
  Vec3 lo = vertices[0], hi = vertices[0];
  for (const Vec3& v : vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  double d = norm(hi - lo);
  return d > 0 ? d : 1.0;
}

std::pair<Vec2, Vec2> Complex::facet_local(int branch, int facet) const {
  const Branch& b = branches.at(std::size_t(branch));
  if (b.dim() == 1) {
    Vec2 p = b.local.at(std::size_t(facet));
    return {p, p};
  }
  std::size_t m = b.local.size();
  return {b.local.at(std::size_t(facet)), b.local[(std::size_t(facet) + 1) % m]};
}

namespace {

void build_frame(const Complex& c, Branch& b) {
  const auto& vid = b.vertex_ids;
  Vec3 origin = c.vertex(vid[0]);
  b.frame.origin = origin;
  if (b.dim() == 1) {
    Vec3 d = c.vertex(vid[1]) - origin;
    double len = norm(d);
    b.degenerate = len <= c.tol_len();
    b.frame.e1 = b.degenerate ? Vec3{1, 0, 0} : d / len;
    b.frame.e2 = {0, 0, 0};
    b.frame.normal = {0, 0, 0};
    b.local = {{0, 0}, {len, 0}};
    b.planarity_defect = 0;
    return;
  }
  // First local axis follows the first polygon edge, so branch coordinates are
  // predictable from the vertex order; orientation is normalized to CCW.
  Vec3 e1 = c.vertex(vid[1]) - origin;
  if (norm(e1) <= c.tol_len()) {
    b.degenerate = true;
    b.local.assign(vid.size(), Vec2{});
    return;
  }
  e1 = normalized(e1);
  Vec3 e2{0, 0, 0};
  double best = 0;
  for (std::size_t i = 2; i < vid.size(); ++i) {
    Vec3 d = c.vertex(vid[i]) - origin;
    Vec3 perp_part = d - e1 * dot(d, e1);
    if (norm(perp_part) > best) {
      best = norm(perp_part);
      e2 = perp_part;
    }
  }
  if (best <= c.tol_len()) {
    b.degenerate = true;
    b.local.assign(vid.size(), Vec2{});
    return;
  }
  e2 = normalized(e2);
  auto project = [&]() {
    b.local.resize(vid.size());
    b.planarity_defect = 0;
    for (std::size_t i = 0; i < vid.size(); ++i) {
      Vec3 d = c.vertex(vid[i]) - origin;
      b.local[i] = {dot(d, e1), dot(d, e2)};
      b.planarity_defect = std::max(b.planarity_defect, std::abs(dot(d, b.frame.normal)));
    }
  };
  b.frame.normal = normalized(cross(e1, e2));
  project();
  if (polygon_signed_area(b.local) < 0) {
    e2 = e2 * -1.0;
    b.frame.normal = normalized(cross(e1, e2));
    project();
  }
  b.frame.e1 = e1;
  b.frame.e2 = e2;
  double area = std::abs(polygon_signed_area(b.local));
  if (area <= c.tol_len() * c.tol_len() || !polygon_is_simple(b.local, c.tol_len()))
    b.degenerate = true;
}

}  // namespace

Vec2 facet_inward_normal(const Complex& c, int branch, int facet) {
  const Branch& b = c.branches.at(std::size_t(branch));
  if (facet < 0 || facet >= b.facet_count())
    throw std::invalid_argument("facet index out of range for branch " + std::to_string(branch));
  if (b.dim() == 1) return facet == 0 ? Vec2{1, 0} : Vec2{-1, 0};
  auto [a, bb] = c.facet_local(branch, facet);
  Vec2 d = bb - a;
  double len = norm(d);
  if (len <= c.tol_len()) throw std::invalid_argument("degenerate facet " + std::to_string(facet));
  d = d / len;
  // Loop orientation decides the interior side.
  return polygon_signed_area(b.local) > 0 ? perp(d) : -perp(d);
}

void finalize_complex(Complex& c) {
  int nv = int(c.vertices.size());
  if (c.branches.empty()) throw std::invalid_argument("complex has no branches");
  for (Branch& b : c.branches) {
    std::size_t need = c.branch_dim == 1 ? 2 : 3;
    if (b.vertex_ids.size() < need || (c.branch_dim == 1 && b.vertex_ids.size() != 2))
      throw std::invalid_argument("branch " + std::to_string(b.id) + " has wrong vertex count");
    for (int v : b.vertex_ids)
      if (v < 0 || v >= nv)
        throw std::invalid_argument("branch " + std::to_string(b.id) +
                                    " references unknown vertex " + std::to_string(v));
    build_frame(c, b);
    b.facet_class.assign(std::size_t(b.facet_count()), FacetClass::Unclassified);
    b.facet_ram_edge.assign(std::size_t(b.facet_count()), -1);
  }
  for (RamEdge& e : c.ram_edges) {
    if (e.incident.empty()) throw std::invalid_argument("empty glue block " + std::to_string(e.id));
    for (auto& inc : e.incident) {
      if (inc.branch < 0 || inc.branch >= int(c.branches.size()))
        throw std::invalid_argument("glue references unknown branch " + std::to_string(inc.branch));
      Branch& b = c.branches[std::size_t(inc.branch)];
      if (inc.facet < 0 || inc.facet >= b.facet_count())
        throw std::invalid_argument("glue references unknown facet " + facet_name({inc.branch, inc.facet}));
    }
    // Edge geometry comes from the first incident facet.
    auto [va, vb] = c.branches[std::size_t(e.incident[0].branch)].facet_vertices(e.incident[0].facet);
    e.va = va;
    e.vb = vb;
    for (auto& inc : e.incident) {
      Branch& b = c.branches[std::size_t(inc.branch)];
      if (!b.degenerate) inc.inward_normal = facet_inward_normal(c, inc.branch, inc.facet);
      b.facet_class[std::size_t(inc.facet)] = FacetClass::Ramification;
      b.facet_ram_edge[std::size_t(inc.facet)] = e.id;
    }
  }
  for (const FacetRef& f : c.boundary_facets) {
    if (f.branch < 0 || f.branch >= int(c.branches.size()))
      throw std::invalid_argument("boundary references unknown branch " + std::to_string(f.branch));
    Branch& b = c.branches[std::size_t(f.branch)];
    if (f.facet < 0 || f.facet >= b.facet_count())
      throw std::invalid_argument("boundary references unknown facet " + facet_name(f));
    if (b.facet_class[std::size_t(f.facet)] == FacetClass::Unclassified)
      b.facet_class[std::size_t(f.facet)] = FacetClass::Boundary;
  }
  for (int v : c.boundary_vertices)
    if (v < 0 || v >= nv)
      throw std::invalid_argument("boundary references unknown vertex " + std::to_string(v));
}

namespace {

struct LineRep {
  Vec3 point;  // closest point to origin
  Vec3 dir;    // unit, sign-canonical
};

LineRep supporting_line(const Complex& c, const Branch& b) {
  Vec3 d = b.frame.e1;
  if (d.x < 0 || (d.x == 0 && (d.y < 0 || (d.y == 0 && d.z < 0)))) d = d * -1.0;
  Vec3 p = b.frame.origin - d * dot(b.frame.origin, d);
  return {p, d};
}

struct PlaneRep {
  Vec3 normal;  // unit, sign-canonical
  double offset;
};

PlaneRep supporting_plane(const Branch& b) {
  Vec3 n = b.frame.normal;
  if (n.x < 0 || (n.x == 0 && (n.y < 0 || (n.y == 0 && n.z < 0)))) n = n * -1.0;
  return {n, dot(n, b.frame.origin)};
}

struct Interval {
  double lo, hi;
};

std::vector<Interval> merge_intervals(std::vector<Interval> xs) {
  std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const Interval& x : xs) {
    if (!out.empty() && x.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, x.hi);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

bool intervals_cover(const std::vector<Interval>& cover, double lo, double hi, double tol) {
  double need = lo;
  for (const Interval& iv : cover) {
    if (iv.lo > need + tol) break;
    if (iv.hi > need) need = iv.hi;
    if (need >= hi - tol) return true;
  }
  return need >= hi - tol;
}

/// Polygon/line trace in branch-local coordinates: `inside` holds the line
/// parameters where the line runs through the closed polygon, `collinear`
/// the parameters covered by polygon edges lying on the line.
void trace_polygon_line(const std::vector<Vec2>& poly, const Vec2& q, const Vec2& d, double tol,
                        std::vector<Interval>& inside, std::vector<Interval>& collinear) {
  std::size_t m = poly.size();
  std::vector<double> side(m), tpar(m);
  std::vector<double> events;
  for (std::size_t i = 0; i < m; ++i) {
    side[i] = cross(d, poly[i] - q);
    tpar[i] = dot(poly[i] - q, d);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = (i + 1) % m;
    bool on_i = std::abs(side[i]) <= tol;
    bool on_j = std::abs(side[j]) <= tol;
    if (on_i) events.push_back(tpar[i]);
    if (on_i && on_j) {
      collinear.push_back({std::min(tpar[i], tpar[j]), std::max(tpar[i], tpar[j])});
    } else if (!on_i && !on_j && ((side[i] > 0) != (side[j] > 0))) {
      double t = tpar[i] + (tpar[j] - tpar[i]) * (side[i] / (side[i] - side[j]));
      events.push_back(t);
    }
  }
  if (events.empty()) return;
  std::sort(events.begin(), events.end());
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    double t0 = events[i], t1 = events[i + 1];
    if (t1 - t0 <= tol) continue;
    Vec2 mid = q + d * (0.5 * (t0 + t1));
    if (point_in_polygon(poly, mid, tol)) inside.push_back({t0, t1});
  }
  collinear = merge_intervals(std::move(collinear));
  inside = merge_intervals(std::move(inside));
}

void check_pair_overlap_2d(const Complex& c, const Branch& A, const Branch& B,
                           std::vector<Violation>& out) {
  double tol = c.tol_planar();
  Vec3 nA = A.frame.normal, nB = B.frame.normal;
  Vec3 d3 = cross(nA, nB);
  if (norm(d3) <= 1e-12) return;  // parallel planes: distinct offsets never meet
  d3 = normalized(d3);
  // A point on both planes: solve in the basis (nA, nB, d3).
  double hA = dot(nA, A.frame.origin), hB = dot(nB, B.frame.origin);
  double nn = dot(nA, nB);
  double det = 1.0 - nn * nn;
  double ca = (hA - hB * nn) / det, cb = (hB - hA * nn) / det;
  Vec3 p3 = nA * ca + nB * cb;

  auto in_local = [](const Branch& br, const Vec3& p, const Vec3& dir, Vec2& q, Vec2& d2) {
    q = br.frame.to_local(p);
    d2 = {dot(dir, br.frame.e1), dot(dir, br.frame.e2)};
  };
  Vec2 qA, dA, qB, dB;
  in_local(A, p3, d3, qA, dA);
  in_local(B, p3, d3, qB, dB);
  std::vector<Interval> inA, colA, inB, colB;
  trace_polygon_line(A.local, qA, dA, tol, inA, colA);
  trace_polygon_line(B.local, qB, dB, tol, inB, colB);
  for (const Interval& ia : inA) {
    for (const Interval& ib : inB) {
      double lo = std::max(ia.lo, ib.lo), hi = std::min(ia.hi, ib.hi);
      if (hi - lo <= tol) continue;
      if (!intervals_cover(colA, lo, hi, 2 * tol) || !intervals_cover(colB, lo, hi, 2 * tol)) {
        std::ostringstream os;
        os << "branches " << A.id << " and " << B.id
           << " overlap outside their boundaries along a segment of length " << (hi - lo);
        out.push_back({"closure_overlap", os.str()});
        return;
      }
    }
  }
}

void check_pair_overlap_1d(const Complex& c, const Branch& A, const Branch& B,
                           std::vector<Violation>& out) {
  double tol = c.tol_len();
  Vec3 a0 = c.vertex(A.vertex_ids[0]), a1 = c.vertex(A.vertex_ids[1]);
  Vec3 b0 = c.vertex(B.vertex_ids[0]), b1 = c.vertex(B.vertex_ids[1]);
  Vec3 u = a1 - a0, v = b1 - b0, w = a0 - b0;
  double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v), uw = dot(u, w), vw = dot(v, w);
  double det = uu * vv - uv * uv;
  if (det <= 1e-14 * uu * vv) return;  // parallel: same-line handled elsewhere
  double s = std::clamp((uv * vw - vv * uw) / det, 0.0, 1.0);
  double t = std::clamp((uu * vw - uv * uw) / det, 0.0, 1.0);
  Vec3 pa = a0 + u * s, pb = b0 + v * t;
  if (norm(pa - pb) > tol) return;
  bool a_end = std::min(norm(pa - a0), norm(pa - a1)) <= tol;
  bool b_end = std::min(norm(pb - b0), norm(pb - b1)) <= tol;
  if (!a_end || !b_end) {
    std::ostringstream os;
    os << "segments " << A.id << " and " << B.id << " touch away from their endpoints";
    out.push_back({"closure_overlap", os.str()});
  }
}

}  // namespace

ValidationReport validate(const Complex& c) {
  ValidationReport rep;
  auto add = [&](std::string rule, std::string msg) {
    rep.violations.push_back({std::move(rule), std::move(msg)});
  };

  for (const Branch& b : c.branches) {
    if (b.degenerate) {
      add("branch_degenerate", "branch " + std::to_string(b.id) + " is degenerate");
      continue;
    }
    if (b.planarity_defect > c.tol_planar())
      add("branch_not_planar", "branch " + std::to_string(b.id) + " deviates from its plane by " +
                                   std::to_string(b.planarity_defect));
  }

  // Pairwise distinct supporting hyperplanes (planes for dim 2, lines for dim 1).
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    const Branch& A = c.branches[i];
    if (A.degenerate) continue;
    for (std::size_t j = i + 1; j < c.branches.size(); ++j) {
      const Branch& B = c.branches[j];
      if (B.degenerate) continue;
      bool same = false;
      if (c.branch_dim == 2) {
        PlaneRep pa = supporting_plane(A), pb = supporting_plane(B);
        same = norm(pa.normal - pb.normal) <= 1e-9 && std::abs(pa.offset - pb.offset) <= c.tol_planar();
      } else {
        LineRep la = supporting_line(c, A), lb = supporting_line(c, B);
        same = norm(la.dir - lb.dir) <= 1e-9 && norm(la.point - lb.point) <= c.tol_planar();
      }
      if (same)
        add("hyperplanes_not_distinct", "branches " + std::to_string(A.id) + " and " +
                                            std::to_string(B.id) +
                                            " lie in the same hyperplane");
      else if (c.branch_dim == 2)
        check_pair_overlap_2d(c, A, B, rep.violations);
      else
        check_pair_overlap_1d(c, A, B, rep.violations);
    }
  }

  // Facet classification: exactly one of {ramification, boundary} per facet.
  std::map<FacetRef, int> classified;  // count of classifications
  for (const RamEdge& e : c.ram_edges) {
    if (e.incident.size() < 2)
      add("ram_edge_order", "glue " + std::to_string(e.id) + " has fewer than two incident facets");
    std::pair<int, int> geo{std::min(e.va, e.vb), std::max(e.va, e.vb)};
    for (const auto& inc : e.incident) {
      classified[{inc.branch, inc.facet}]++;
      auto [x, y] = c.branches[std::size_t(inc.branch)].facet_vertices(inc.facet);
      std::pair<int, int> g2{std::min(x, y), std::max(x, y)};
      if (g2 != geo)
        add("partial_edge_glue", "glue " + std::to_string(e.id) + " facet " +
                                     facet_name({inc.branch, inc.facet}) +
                                     " does not span the shared edge");
    }
    std::set<int> uniq;
    for (const auto& inc : e.incident) uniq.insert(inc.branch);
    if (uniq.size() != e.incident.size())
      add("ram_edge_order",
          "glue " + std::to_string(e.id) + " lists the same branch more than once");
  }
  for (const FacetRef& f : c.boundary_facets) classified[f]++;
  for (const auto& [f, n] : classified)
    if (n > 1) add("facet_multiply_classified", "facet " + facet_name(f) + " classified " +
                                                    std::to_string(n) + " times");

  // Geometric facet groups: multiplicity-one facets must be boundary, shared
  // facets must carry one consistent classification.
  std::map<std::pair<int, int>, std::vector<FacetRef>> groups;
  for (const Branch& b : c.branches)
    for (int f = 0; f < b.facet_count(); ++f) {
      auto [x, y] = b.facet_vertices(f);
      groups[{std::min(x, y), std::max(x, y)}].push_back({b.id, f});
    }
  for (const auto& [geo, refs] : groups) {
    for (const FacetRef& f : refs) {
      const Branch& b = c.branches[std::size_t(f.branch)];
      if (b.facet_class[std::size_t(f.facet)] == FacetClass::Unclassified) {
        if (refs.size() == 1)
          add("dangling_ramification_facet",
              "facet " + facet_name(f) + " belongs to one branch closure but is not boundary");
        else
          add("unclassified_shared_facet",
              "facet " + facet_name(f) + " is neither glued nor boundary");
      }
    }
    bool any_ram = false, any_bnd = false;
    std::set<int> edges;
    for (const FacetRef& f : refs) {
      const Branch& b = c.branches[std::size_t(f.branch)];
      FacetClass fc = b.facet_class[std::size_t(f.facet)];
      if (fc == FacetClass::Ramification) {
        any_ram = true;
        edges.insert(b.facet_ram_edge[std::size_t(f.facet)]);
      }
      if (fc == FacetClass::Boundary) any_bnd = true;
    }
    if ((any_ram && any_bnd) || edges.size() > 1)
      add("facet_group_inconsistent", "coincident facets at vertices (" +
                                          std::to_string(geo.first) + "," +
                                          std::to_string(geo.second) +
                                          ") carry conflicting classifications");
  }

  // Connectivity through glued facets.
  if (c.branches.size() > 1) {
    std::vector<int> comp(c.branches.size(), -1);
    std::vector<std::size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      for (const RamEdge& e : c.ram_edges) {
        bool touches = false;
        for (const auto& inc : e.incident) touches |= std::size_t(inc.branch) == cur;
        if (!touches) continue;
        for (const auto& inc : e.incident)
          if (comp[std::size_t(inc.branch)] < 0) {
            comp[std::size_t(inc.branch)] = 0;
            stack.push_back(std::size_t(inc.branch));
          }
      }
    }
    for (const Branch& b : c.branches)
      if (comp[std::size_t(b.id)] < 0)
        add("not_connected",
            "branch " + std::to_string(b.id) + " is not reachable through the ramification set");
  }

  // Corner exclusion: every polygon corner must lie in the excluded boundary.
  if (c.branch_dim == 2) {
    std::set<int> in_boundary(c.boundary_vertices.begin(), c.boundary_vertices.end());
    for (const FacetRef& f : c.boundary_facets) {
      auto [x, y] = c.branches[std::size_t(f.branch)].facet_vertices(f.facet);
      in_boundary.insert(x);
      in_boundary.insert(y);
    }
    std::set<int> reported;
    for (const Branch& b : c.branches)
      for (int v : b.vertex_ids)
        if (!in_boundary.count(v) && !reported.count(v)) {
          reported.insert(v);
          add("corner_in_ramification_set",
              "corner vertex " + std::to_string(v) + " is not in the boundary set");
        }
  }

  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const Violation& a, const Violation& b) {
              return a.rule != b.rule ? a.rule < b.rule : a.message < b.message;
            });
  rep.valid = rep.violations.empty();
  return rep;
}

std::vector<int> incident_branches(const Complex& c, int ram_edge) {
  if (ram_edge < 0 || ram_edge >= int(c.ram_edges.size()))
    throw std::invalid_argument("unknown ramification edge " + std::to_string(ram_edge));
  std::vector<int> out;
  for (const auto& inc : c.ram_edges[std::size_t(ram_edge)].incident) out.push_back(inc.branch);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> incident_branches(const Complex& c, FacetRef facet) {
  const Branch& b = c.branches.at(std::size_t(facet.branch));
  int e = b.facet_ram_edge.at(std::size_t(facet.facet));
  if (e < 0)
    throw std::invalid_argument("facet " + facet_name(facet) + " is not a ramification edge");
  return incident_branches(c, e);
}

int locate_on_ramification(const Complex& c, const Vec3& p, double tol) {
  int best = -1;
  double best_d = tol;
  for (const RamEdge& e : c.ram_edges) {
    Vec3 a = c.vertex(e.va), b = c.vertex(e.vb);
    double d;
    if (e.is_point()) {
      d = norm(p - a);
    } else {
      Vec3 ab = b - a;
      double t = std::clamp(dot(p - a, ab) / sqnorm(ab), 0.0, 1.0);
      d = norm(p - (a + ab * t));
    }
    if (d <= best_d) {
      best_d = d;
      best = e.id;
    }
  }
  return best;
}

std::vector<PointLocation> locate_point(const Complex& c, const Vec3& p, double tol) {
  std::vector<PointLocation> out;
  for (const Branch& b : c.branches) {
    if (b.degenerate) continue;
    Vec2 q = b.frame.to_local(p);
    if (norm(b.frame.to_ambient(q) - p) > tol) continue;  // off the branch hyperplane
    if (b.dim() == 1) {
      double len = b.local[1].x;
      if (q.x >= -tol && q.x <= len + tol) out.push_back({b.id, {std::clamp(q.x, 0.0, len), 0}});
    } else if (point_in_polygon(b.local, q, tol)) {
      out.push_back({b.id, q});
    }
  }
  return out;
}

namespace {

/// Chart row pair for one incident branch: normal coordinate first.
Iso2 chart_iso(const Complex& c, const RamEdge& e, const RamEdge::Incident& inc, const Vec3& x) {
  const Branch& b = c.branches[std::size_t(inc.branch)];
  Vec2 x_local = b.frame.to_local(x);
  Vec2 nu = inc.inward_normal;
  Vec2 t{0, 0};
  if (!e.is_point()) {
    Vec3 d = normalized(c.vertex(e.vb) - c.vertex(e.va));
    t = {dot(d, b.frame.e1), dot(d, b.frame.e2)};
  }
  Iso2 m = Iso2::from_rows(nu, t, {0, 0});
  m.t = {-(m.r00 * x_local.x + m.r01 * x_local.y), -(m.r10 * x_local.x + m.r11 * x_local.y)};
  return m;
}

}  // namespace

Chart canonical_chart(const Complex& c, const Vec3& x) {
  double tol = c.tol_len();
  int eid = locate_on_ramification(c, x, tol);
  if (eid < 0) throw std::invalid_argument("point is not on the ramification set");
  const RamEdge& e = c.ram_edges[std::size_t(eid)];
  if (!e.is_point()) {
    if (norm(x - c.vertex(e.va)) <= tol || norm(x - c.vertex(e.vb)) <= tol)
      throw std::invalid_argument("point is too close to a corner of the ramification edge");
  }
  Chart chart;
  chart.base = x;
  chart.ram_edge = eid;
  for (const auto& inc : e.incident) chart.entries.push_back({inc.branch, chart_iso(c, e, inc, x)});
  return chart;
}

std::vector<Vec2> closure_sample_points(const Branch& b) {
  std::vector<Vec2> pts = b.local;
  if (b.dim() == 1) {
    double len = b.local[1].x;
    for (int i = 1; i < 8; ++i) pts.push_back({len * i / 8.0, 0});
    return pts;
  }
  Vec2 centroid{0, 0};
  for (const Vec2& v : b.local) centroid = centroid + v;
  centroid = centroid / double(b.local.size());
  pts.push_back(centroid);
  for (std::size_t i = 0; i < b.local.size(); ++i) {
    const Vec2& a = b.local[i];
    const Vec2& c2 = b.local[(i + 1) % b.local.size()];
    pts.push_back((a + c2) * 0.5);
    pts.push_back(((a + c2) * 0.5 + centroid) * 0.5);
  }
  Vec2 lo = b.local[0], hi = b.local[0];
  for (const Vec2& v : b.local) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  for (int i = 1; i < 5; ++i)
    for (int j = 1; j < 5; ++j) {
      Vec2 p{lo.x + (hi.x - lo.x) * i / 5.0, lo.y + (hi.y - lo.y) * j / 5.0};
      if (point_in_polygon(b.local, p, 0)) pts.push_back(p);
    }
  return pts;
}

std::uint64_t structural_hash(const Complex& c) {
  std::uint64_t h = fnv1a64("lep-complex");
  auto mix_int = [&](long long v) {
    h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&v), sizeof(v)), h);
  };
  auto mix_double = [&](double v) {
    h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&v), sizeof(v)), h);
  };
  mix_int(c.ambient_dim);
  mix_int(c.branch_dim);
  for (const Vec3& v : c.vertices) {
    mix_double(v.x);
    mix_double(v.y);
    mix_double(v.z);
  }
  for (const Branch& b : c.branches) {
    mix_int(-1);
    for (int v : b.vertex_ids) mix_int(v);
  }
  for (const RamEdge& e : c.ram_edges) {
    mix_int(-2);
    for (const auto& inc : e.incident) {
      mix_int(inc.branch);
      mix_int(inc.facet);
    }
  }
  mix_int(-3);
  for (const FacetRef& f : c.boundary_facets) {
    mix_int(f.branch);
    mix_int(f.facet);
  }
  mix_int(-4);
  for (int v : c.boundary_vertices) mix_int(v);
  return h;
}

UnfoldPair unfold_pair(const Complex& c, int ram_edge, int branch_j, int branch_k) {
  if (branch_j == branch_k) throw std::invalid_argument("unfold needs two distinct branches");
  if (ram_edge < 0 || ram_edge >= int(c.ram_edges.size()))
    throw std::invalid_argument("unknown ramification edge " + std::to_string(ram_edge));
  const RamEdge& e = c.ram_edges[std::size_t(ram_edge)];
  const RamEdge::Incident* ij = nullptr;
  const RamEdge::Incident* ik = nullptr;
  for (const auto& inc : e.incident) {
    if (inc.branch == branch_j && !ij) ij = &inc;
    if (inc.branch == branch_k && !ik) ik = &inc;
  }
  if (!ij || !ik) throw std::invalid_argument("branch not incident to the ramification edge");
  Vec3 base = e.is_point() ? c.vertex(e.va) : (c.vertex(e.va) + c.vertex(e.vb)) * 0.5;
  UnfoldPair up;
  up.first = chart_iso(c, e, *ij, base);
  Iso2 mk = chart_iso(c, e, *ik, base);
  // Flip the k side across the shared edge.
  mk.r00 = -mk.r00;
  mk.r01 = -mk.r01;
  mk.t.x = -mk.t.x;
  up.second = mk;
  return up;
}

}  // namespace lep
