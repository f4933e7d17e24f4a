#include "lep/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace lep {

void MeshParams::validate() const {
  if (!(h > 0)) throw std::invalid_argument("mesh parameter h must be positive");
  if (steiner_per_edge < 1) throw std::invalid_argument("steiner_per_edge must be >= 1");
  if (ring < 1) throw std::invalid_argument("connectivity order must be >= 1");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- Delaunay (Bowyer-Watson) ----------------------------------------------

struct Tri {
  int a, b, c;
  bool alive = true;
};

bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  double ax = a.x - p.x, ay = a.y - p.y;
  double bx = b.x - p.x, by = b.y - p.y;
  double cx = c.x - p.x, cy = c.y - p.y;
  double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
               (bx * bx + by * by) * (ax * cy - cx * ay) +
               (cx * cx + cy * cy) * (ax * by - bx * ay);
  double orient = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  return orient > 0 ? det > 0 : det < 0;
}

/// Plain Bowyer-Watson; points get a deterministic hash jitter so the
/// circumcircle predicate never sees exact ties on structured grids.
std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& input, double scale) {
  std::vector<Vec2> pts = input;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::uint64_t h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&i), sizeof(i)));
    pts[i].x += scale * 1e-7 * ((double((h >> 8) & 0xffff) / 65536.0) - 0.5);
    pts[i].y += scale * 1e-7 * ((double((h >> 24) & 0xffff) / 65536.0) - 0.5);
  }
  Vec2 lo = pts[0], hi = pts[0];
  for (const Vec2& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  double span = std::max({hi.x - lo.x, hi.y - lo.y, scale * 1e-6});
  Vec2 mid = (lo + hi) * 0.5;
  int n = int(pts.size());
  pts.push_back({mid.x - 20 * span, mid.y - 10 * span});
  pts.push_back({mid.x + 20 * span, mid.y - 10 * span});
  pts.push_back({mid.x, mid.y + 20 * span});
  std::vector<Tri> tris{{n, n + 1, n + 2}};

  std::vector<int> bad;
  std::map<std::pair<int, int>, int> edge_count;
  for (int p = 0; p < n; ++p) {
    bad.clear();
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (tris[t].alive && in_circumcircle(pts[std::size_t(tris[t].a)], pts[std::size_t(tris[t].b)],
                                           pts[std::size_t(tris[t].c)], pts[std::size_t(p)]))
        bad.push_back(int(t));
    edge_count.clear();
    auto touch = [&](int u, int v) { edge_count[{std::min(u, v), std::max(u, v)}]++; };
    for (int t : bad) {
      touch(tris[std::size_t(t)].a, tris[std::size_t(t)].b);
      touch(tris[std::size_t(t)].b, tris[std::size_t(t)].c);
      touch(tris[std::size_t(t)].c, tris[std::size_t(t)].a);
      tris[std::size_t(t)].alive = false;
    }
    for (const auto& [e, cnt] : edge_count)
      if (cnt == 1) tris.push_back({e.first, e.second, p});
  }
  std::vector<std::array<int, 3>> out;
  for (const Tri& t : tris)
    if (t.alive && t.a < n && t.b < n && t.c < n) out.push_back({t.a, t.b, t.c});
  return out;
}

// ---- graph construction ------------------------------------------------------

struct Builder {
  const Complex& c;
  const HamiltonianFamily& H;
  MeshParams params;
  MetricGraph g;
  std::map<std::array<long long, 3>, int> shared;  // quantized ambient -> shared node
  double quantum;

  Builder(const Complex& cc, const HamiltonianFamily& hh, const MeshParams& p)
      : c(cc), H(hh), params(p), quantum(1e-12 * cc.bbox_diameter()) {}

  std::array<long long, 3> key(const Vec3& p) const {
    return {llround(p.x / quantum), llround(p.y / quantum), llround(p.z / quantum)};
  }

  int make_node(const Vec3& pos) {
    g.nodes.push_back(GraphNode{pos});
    return int(g.nodes.size()) - 1;
  }

  int shared_node(const Vec3& pos) {
    auto k = key(pos);
    auto it = shared.find(k);
    if (it != shared.end()) return it->second;
    int id = make_node(pos);
    shared.emplace(k, id);
    return id;
  }

  double facet_spacing() const { return params.h / params.steiner_per_edge; }

  void sample_ram_edges(std::vector<std::vector<int>>& edge_nodes) {
    edge_nodes.resize(c.ram_edges.size());
    for (const RamEdge& e : c.ram_edges) {
      Vec3 a = c.vertex(e.va);
      if (e.is_point()) {
        int id = shared_node(a);
        g.nodes[std::size_t(id)].ram_edge = e.id;
        g.nodes[std::size_t(id)].vertex_id = e.va;
        edge_nodes[std::size_t(e.id)] = {id};
        continue;
      }
      Vec3 b = c.vertex(e.vb);
      int m = std::max(1, int(std::ceil(norm(b - a) / facet_spacing())));
      for (int i = 0; i <= m; ++i) {
        Vec3 p = i == 0 ? a : (i == m ? b : a + (b - a) * (double(i) / m));
        int id = shared_node(p);
        GraphNode& node = g.nodes[std::size_t(id)];
        node.ram_edge = e.id;
        if (i == 0) node.vertex_id = e.va;
        if (i == m) node.vertex_id = e.vb;
        edge_nodes[std::size_t(e.id)].push_back(id);
      }
    }
  }

  /// A corner vertex may merge with a shared ramification node only when some
  /// glued edge of this very branch ends there: then the branch fan wraps
  /// around the corner and the merge realizes the limiting corner crossing.
  /// Otherwise coincident boundary copies stay separate walls.
  bool corner_glued_to_branch(int vertex, int branch) const {
    for (const RamEdge& e : c.ram_edges) {
      if (e.va != vertex && e.vb != vertex) continue;
      for (const auto& inc : e.incident)
        if (inc.branch == branch) return true;
    }
    return false;
  }

  void sample_facet(const Branch& b, int f, std::map<int, int>& corner_nodes,
                    std::vector<int>& out) {
    bool is_boundary = b.facet_class[std::size_t(f)] == FacetClass::Boundary;
    auto [v0, v1] = b.facet_vertices(f);
    if (b.dim() == 1) {
      // Endpoint facet: one node, shared when glued elsewhere.
      Vec3 p = c.vertex(v0);
      int id;
      auto it = corner_glued_to_branch(v0, b.id) ? shared.find(key(p)) : shared.end();
      if (it != shared.end()) {
        id = it->second;
      } else if (corner_nodes.count(v0)) {
        id = corner_nodes[v0];
      } else {
        id = make_node(p);
        g.nodes[std::size_t(id)].branch = b.id;
        corner_nodes[v0] = id;
      }
      GraphNode& node = g.nodes[std::size_t(id)];
      node.vertex_id = v0;
      if (is_boundary) node.boundary = true;
      out.push_back(id);
      return;
    }
    Vec3 a = c.vertex(v0), bb = c.vertex(v1);
    int m = std::max(1, int(std::ceil(norm(bb - a) / facet_spacing())));
    for (int i = 0; i <= m; ++i) {
      Vec3 p = i == 0 ? a : (i == m ? bb : a + (bb - a) * (double(i) / m));
      int id = -1;
      bool may_share = (i == 0 && corner_glued_to_branch(v0, b.id)) ||
                       (i == m && corner_glued_to_branch(v1, b.id));
      auto it = may_share ? shared.find(key(p)) : shared.end();
      if (it != shared.end()) {
        id = it->second;
      } else if (i == 0 && corner_nodes.count(v0)) {
        id = corner_nodes[v0];
      } else if (i == m && corner_nodes.count(v1)) {
        id = corner_nodes[v1];
      } else {
        id = make_node(p);
        GraphNode& node = g.nodes[std::size_t(id)];
        node.branch = b.id;
        if (i == 0) corner_nodes[v0] = id;
        if (i == m) corner_nodes[v1] = id;
      }
      GraphNode& node = g.nodes[std::size_t(id)];
      if (i == 0) node.vertex_id = v0;
      if (i == m) node.vertex_id = v1;
      if (is_boundary) {
        node.boundary = true;
        if (node.on_facet < 0 && node.branch == b.id) {
          node.on_facet = f;
          node.facet_t = double(i) / m;
        }
      }
      out.push_back(id);
    }
  }

  void interior_nodes(const Branch& b, std::vector<int>& out) {
    double h = params.h;
    if (b.dim() == 1) {
      double len = b.local[1].x;
      int m = std::max(1, int(std::ceil(len / h)));
      for (int i = 1; i < m; ++i) {
        int id = make_node(b.frame.to_ambient({len * i / m, 0}));
        g.nodes[std::size_t(id)].branch = b.id;
        out.push_back(id);
      }
      return;
    }
    Vec2 lo = b.local[0], hi = b.local[0];
    for (const Vec2& v : b.local) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    double row = h * std::sqrt(3.0) / 2.0;
    double half = h / 2.0;
    double clearance = 0.45 * h;
    for (int r = 1;; ++r) {
      double v = lo.y + row * r;
      if (v >= hi.y) break;
      // Stagger odd rows by half a step; all positions quantize to h/2 so
      // halving h refines the node set in place.
      long long k0 = (r % 2 == 1) ? 1 : 2;
      for (long long k = k0;; k += 2) {
        double u = lo.x + half * double(k);
        if (u >= hi.x) break;
        Vec2 p{u, v};
        if (dist_to_polygon_boundary(b.local, p) < clearance) continue;
        if (!point_in_polygon(b.local, p, 0)) continue;
        int id = make_node(b.frame.to_ambient(p));
        g.nodes[std::size_t(id)].branch = b.id;
        out.push_back(id);
      }
    }
  }

  double edge_weight(int branch, const Vec2& la, const Vec2& lb) {
    // Composite midpoint rule, four subsegments.
    Vec2 d = (lb - la) / 4.0;
    double w = 0;
    for (int i = 0; i < 4; ++i) w += H.gauge(branch, la + d * (i + 0.5), d);
    return w;
  }

  void build() {
    params.validate();
    std::vector<std::vector<int>> ram_nodes;
    sample_ram_edges(ram_nodes);

    g.branch_nodes.resize(c.branches.size());
    g.branch_tris.resize(c.branches.size());
    for (const Branch& b : c.branches) {
      std::vector<int> members;
      std::map<int, int> corner_nodes;
      for (int f = 0; f < b.facet_count(); ++f) {
        if (b.facet_class[std::size_t(f)] == FacetClass::Ramification) {
          const auto& ids = ram_nodes[std::size_t(b.facet_ram_edge[std::size_t(f)])];
          members.insert(members.end(), ids.begin(), ids.end());
        } else {
          sample_facet(b, f, corner_nodes, members);
        }
      }
      interior_nodes(b, members);
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      g.branch_nodes[std::size_t(b.id)] = std::move(members);
    }

    // Explicitly excluded vertices are Dirichlet boundary points.
    for (int v : c.boundary_vertices) {
      auto it = shared.find(key(c.vertex(v)));
      if (it != shared.end()) {
        g.nodes[std::size_t(it->second)].boundary = true;
        g.nodes[std::size_t(it->second)].vertex_id = v;
      }
    }

    std::map<std::pair<int, int>, int> edge_index;
    auto add_edge = [&](int a, int b, int branch) {
      if (a == b) return;
      std::pair<int, int> k{std::min(a, b), std::max(a, b)};
      if (edge_index.count(k)) return;
      const GraphNode& na = g.nodes[std::size_t(a)];
      const GraphNode& nb = g.nodes[std::size_t(b)];
      Vec2 la = g.local_of(branch, a), lb = g.local_of(branch, b);
      GraphEdge e;
      e.a = k.first;
      e.b = k.second;
      e.branch = branch;
      e.len = norm(nb.pos - na.pos);
      e.w = edge_weight(branch, la, lb);
      e.on_sigma = na.on_sigma() && nb.on_sigma() && na.ram_edge == nb.ram_edge;
      edge_index.emplace(k, int(g.edges.size()));
      g.edges.push_back(e);
    };

    for (const Branch& b : c.branches) {
      const std::vector<int>& members = g.branch_nodes[std::size_t(b.id)];
      if (members.empty()) continue;
      if (b.dim() == 1) {
        std::vector<std::pair<double, int>> line;
        for (int id : members) line.emplace_back(g.local_of(b.id, id).x, id);
        std::sort(line.begin(), line.end());
        for (std::size_t i = 0; i + 1 < line.size(); ++i) add_edge(line[i].second, line[i + 1].second, b.id);
        for (int r = 2; r <= params.ring; ++r)
          for (std::size_t i = 0; i + std::size_t(r) < line.size(); ++i)
            add_edge(line[i].second, line[i + std::size_t(r)].second, b.id);
        continue;
      }
      std::vector<Vec2> pts;
      pts.reserve(members.size());
      for (int id : members) pts.push_back(g.local_of(b.id, id));
      auto tris = delaunay(pts, params.h);
      bool convex = true;
      for (std::size_t i = 0; i < b.local.size() && convex; ++i) {
        Vec2 p0 = b.local[i];
        Vec2 p1 = b.local[(i + 1) % b.local.size()];
        Vec2 p2 = b.local[(i + 2) % b.local.size()];
        if (cross(p1 - p0, p2 - p1) * polygon_signed_area(b.local) < 0) convex = false;
      }
      auto usable = [&](int i, int j) {
        if (convex) return true;
        return segment_in_polygon(b.local, pts[std::size_t(i)], pts[std::size_t(j)], c.tol_len());
      };
      std::vector<std::vector<int>> ring1(members.size());
      auto link1 = [&](int i, int j) {
        ring1[std::size_t(i)].push_back(j);
        ring1[std::size_t(j)].push_back(i);
      };
      for (const auto& t : tris) {
        Vec2 centroid = (pts[std::size_t(t[0])] + pts[std::size_t(t[1])] + pts[std::size_t(t[2])]) / 3.0;
        if (!point_in_polygon(b.local, centroid, c.tol_len())) continue;
        g.branch_tris[std::size_t(b.id)].push_back(
            {members[std::size_t(t[0])], members[std::size_t(t[1])], members[std::size_t(t[2])]});
        for (auto [i, j] : std::vector<std::pair<int, int>>{{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}})
          if (usable(i, j)) {
            add_edge(members[std::size_t(i)], members[std::size_t(j)], b.id);
            link1(i, j);
          }
      }
      // Ring-k: breadth-first neighbors up to the connectivity order.
      if (params.ring > 1) {
        std::vector<int> depth(members.size());
        for (std::size_t s = 0; s < members.size(); ++s) {
          std::fill(depth.begin(), depth.end(), -1);
          depth[s] = 0;
          std::vector<std::size_t> frontier{s}, next;
          for (int d = 1; d <= params.ring; ++d) {
            next.clear();
            for (std::size_t u : frontier)
              for (int v : ring1[u])
                if (depth[std::size_t(v)] < 0) {
                  depth[std::size_t(v)] = d;
                  next.push_back(std::size_t(v));
                  if (d >= 2 && members[s] < members[std::size_t(v)] && usable(int(s), v))
                    add_edge(members[s], members[std::size_t(v)], b.id);
                }
            frontier = next;
          }
        }
      }
    }

    // CSR adjacency.
    std::vector<int> deg(g.nodes.size(), 0);
    for (const GraphEdge& e : g.edges) {
      deg[std::size_t(e.a)]++;
      deg[std::size_t(e.b)]++;
    }
    g.adj_offset.assign(g.nodes.size() + 1, 0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.adj_offset[i + 1] = g.adj_offset[i] + deg[i];
    g.adj_node.resize(std::size_t(g.adj_offset.back()));
    g.adj_edge.resize(std::size_t(g.adj_offset.back()));
    std::vector<int> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const GraphEdge& e = g.edges[ei];
      g.adj_node[std::size_t(cursor[std::size_t(e.a)])] = e.b;
      g.adj_edge[std::size_t(cursor[std::size_t(e.a)]++)] = int(ei);
      g.adj_node[std::size_t(cursor[std::size_t(e.b)])] = e.a;
      g.adj_edge[std::size_t(cursor[std::size_t(e.b)]++)] = int(ei);
    }
  }
};

}  // namespace

MetricGraph build_metric_graph(const Complex& complex, const HamiltonianFamily& H,
                               const MeshParams& params) {
  Builder b(complex, H, params);
  b.g.complex = &complex;
  b.g.params = params;
  b.g.hamiltonian_desc = H.describe();
  b.g.complex_hash = structural_hash(complex);
  b.build();
  return std::move(b.g);
}

std::vector<int> MetricGraph::boundary_node_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].boundary) out.push_back(int(i));
  return out;
}

bool MetricGraph::branch_has_node(int branch, int node) const {
  const auto& v = branch_nodes[std::size_t(branch)];
  return std::binary_search(v.begin(), v.end(), node);
}

// ---- shortest paths ----------------------------------------------------------

namespace {

struct Overlay {
  int node = -1;  // snapped to an existing node when >= 0
  std::vector<std::pair<int, double>> links;
};

std::vector<double> dijkstra(const MetricGraph& g, const std::vector<std::pair<int, double>>& init,
                             int target = -1) {
  std::vector<double> dist(g.nodes.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto [n, d] : init) {
    if (d < dist[std::size_t(n)]) {
      dist[std::size_t(n)] = d;
      pq.push({d, n});
    }
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[std::size_t(u)]) continue;
    if (u == target) break;
    for (int i = g.adj_offset[std::size_t(u)]; i < g.adj_offset[std::size_t(u) + 1]; ++i) {
      int v = g.adj_node[std::size_t(i)];
      double nd = d + g.edges[std::size_t(g.adj_edge[std::size_t(i)])].w;
      if (nd < dist[std::size_t(v)]) {
        dist[std::size_t(v)] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

double quad_weight(const HamiltonianFamily& H, int branch, const Vec2& la, const Vec2& lb) {
  Vec2 d = (lb - la) / 4.0;
  double w = 0;
  for (int i = 0; i < 4; ++i) w += H.gauge(branch, la + d * (i + 0.5), d);
  return w;
}

Overlay attach_point(const MetricGraph& g, const HamiltonianFamily& H, const BranchPoint& bp) {
  const Complex& c = *g.complex;
  if (bp.branch < 0 || bp.branch >= int(c.branches.size()))
    throw std::invalid_argument("unknown branch " + std::to_string(bp.branch));
  const Branch& br = c.branches[std::size_t(bp.branch)];
  double tol = std::max(c.tol_len(), 1e-9 * c.bbox_diameter());
  bool inside = br.dim() == 1
                    ? (bp.local.x >= -tol && bp.local.x <= br.local[1].x + tol &&
                       std::abs(bp.local.y) <= tol)
                    : point_in_polygon(br.local, bp.local, tol);
  if (!inside) throw std::invalid_argument("point is not on the complex");
  Vec3 pos = br.frame.to_ambient(bp.local);

  Overlay ov;
  double snap = 1e-9 * c.bbox_diameter();
  for (int id : g.branch_nodes[std::size_t(bp.branch)])
    if (norm(g.nodes[std::size_t(id)].pos - pos) <= snap) {
      ov.node = id;
      return ov;
    }

  // Attach within every branch whose closure contains the point. Crossing into
  // other branches is only allowed through the ramification set; coincident
  // excluded-boundary facets stay walls.
  bool on_sigma = locate_on_ramification(c, pos, tol) >= 0;
  std::set<int> linked;
  for (const PointLocation& loc : locate_point(c, pos, tol)) {
    if (!on_sigma && loc.branch != bp.branch) continue;
    const Branch& lb = c.branches[std::size_t(loc.branch)];
    const auto& members = g.branch_nodes[std::size_t(loc.branch)];
    std::set<int> cand;
    if (lb.dim() == 1) {
      std::vector<std::pair<double, int>> line;
      for (int id : members) line.emplace_back(g.local_of(loc.branch, id).x, id);
      std::sort(line.begin(), line.end());
      for (std::size_t i = 0; i + 1 < line.size(); ++i)
        if (line[i].first - tol <= loc.local.x && loc.local.x <= line[i + 1].first + tol)
          for (int r = -int(g.params.ring); r <= 1 + int(g.params.ring); ++r) {
            long long j = (long long)(i) + r;
            if (j >= 0 && j < (long long)line.size()) cand.insert(line[std::size_t(j)].second);
          }
    } else {
      for (const auto& t : g.branch_tris[std::size_t(loc.branch)]) {
        Vec2 p0 = g.local_of(loc.branch, t[0]);
        Vec2 p1 = g.local_of(loc.branch, t[1]);
        Vec2 p2 = g.local_of(loc.branch, t[2]);
        double a = cross(p1 - p0, loc.local - p0);
        double b = cross(p2 - p1, loc.local - p1);
        double cc = cross(p0 - p2, loc.local - p2);
        double area_tol = 1e-9 * g.params.h * g.params.h;
        bool in_tri = (a >= -area_tol && b >= -area_tol && cc >= -area_tol) ||
                      (a <= area_tol && b <= area_tol && cc <= area_tol);
        if (!in_tri) continue;
        for (int v : t) {
          cand.insert(v);
          // ring-1 neighborhood of the triangle corners
          for (int i = g.adj_offset[std::size_t(v)]; i < g.adj_offset[std::size_t(v) + 1]; ++i) {
            int nb = g.adj_node[std::size_t(i)];
            if (g.branch_has_node(loc.branch, nb)) cand.insert(nb);
          }
        }
      }
    }
    for (int id : cand) {
      if (linked.count(id)) continue;
      Vec2 nl = g.local_of(loc.branch, id);
      if (lb.dim() == 2 && !segment_in_polygon(lb.local, loc.local, nl, c.tol_len())) continue;
      linked.insert(id);
      ov.links.emplace_back(id, quad_weight(H, loc.branch, loc.local, nl));
    }
  }
  if (ov.links.empty()) throw std::invalid_argument("point could not be attached to the graph");
  return ov;
}

}  // namespace

double graph_distance_nodes(const MetricGraph& g, int a, int b) {
  if (a == b) return 0.0;
  return dijkstra(g, {{a, 0.0}}, b)[std::size_t(b)];
}

double graph_distance(const MetricGraph& g, const HamiltonianFamily& H, const BranchPoint& a,
                      const BranchPoint& b) {
  Overlay oa = attach_point(g, H, a);
  Overlay ob = attach_point(g, H, b);
  if (oa.node >= 0 && ob.node >= 0) return graph_distance_nodes(g, oa.node, ob.node);

  double direct = kInf;
  {
    // Same-branch queries also try the straight segment between the points.
    const Complex& c = *g.complex;
    Vec3 pa = c.branches[std::size_t(a.branch)].frame.to_ambient(a.local);
    Vec3 pb = c.branches[std::size_t(b.branch)].frame.to_ambient(b.local);
    for (const PointLocation& la : locate_point(c, pa, c.tol_len()))
      for (const PointLocation& lb : locate_point(c, pb, c.tol_len()))
        if (la.branch == lb.branch) {
          const Branch& br = c.branches[std::size_t(la.branch)];
          if (br.dim() == 1 || segment_in_polygon(br.local, la.local, lb.local, c.tol_len()))
            direct = std::min(direct, quad_weight(H, la.branch, la.local, lb.local));
        }
  }

  std::vector<std::pair<int, double>> init;
  if (oa.node >= 0)
    init.emplace_back(oa.node, 0.0);
  else
    init = oa.links;
  std::vector<double> dist = dijkstra(g, init);
  double best = direct;
  if (ob.node >= 0) {
    best = std::min(best, dist[std::size_t(ob.node)]);
  } else {
    for (auto [n, w] : ob.links) best = std::min(best, dist[std::size_t(n)] + w);
  }
  return best;
}

std::vector<double> distance_field(const MetricGraph& g,
                                   const std::vector<std::pair<int, double>>& sources) {
  if (sources.empty()) throw std::invalid_argument("distance_field needs at least one source");
  return dijkstra(g, sources);
}

double field_value_at(const MetricGraph& g, const HamiltonianFamily& H,
                      const std::vector<double>& u, const BranchPoint& p) {
  Overlay ov = attach_point(g, H, p);
  if (ov.node >= 0) return u[std::size_t(ov.node)];
  double best = kInf;
  for (auto [n, w] : ov.links) best = std::min(best, u[std::size_t(n)] + w);
  return best;
}

int nearest_node(const MetricGraph& g, const BranchPoint& p) {
  const Branch& br = g.complex->branches.at(std::size_t(p.branch));
  Vec3 pos = br.frame.to_ambient(p.local);
  int best = -1;
  double best_d = kInf;
  for (int id : g.branch_nodes[std::size_t(p.branch)]) {
    double d = norm(g.nodes[std::size_t(id)].pos - pos);
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  return best;
}

}  // namespace lep
