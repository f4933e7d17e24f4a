#include "lep/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct StencilEntry {
  int node;
  Vec2 delta;  // branch-local offset
  double dval;
  double w;
};

/// Ring-1 neighbors of `node` usable for a branch-j fit: edges meshed in j
/// plus tangential edges along the node's own ramification edge.
std::vector<StencilEntry> branch_stencil(const MetricGraph& g, const std::vector<double>& u,
                                         int node, int branch) {
  std::vector<StencilEntry> out;
  const GraphNode& n = g.nodes[std::size_t(node)];
  Vec2 x = g.local_of(branch, node);
  for (int i = g.adj_offset[std::size_t(node)]; i < g.adj_offset[std::size_t(node) + 1]; ++i) {
    const GraphEdge& e = g.edges[std::size_t(g.adj_edge[std::size_t(i)])];
    bool usable = e.branch == branch;
    if (!usable && e.on_sigma && n.on_sigma()) {
      const GraphNode& na = g.nodes[std::size_t(e.a)];
      usable = na.ram_edge == n.ram_edge;
    }
    if (!usable) continue;
    int nb = g.adj_node[std::size_t(i)];
    if (!std::isfinite(u[std::size_t(nb)])) continue;
    Vec2 d = g.local_of(branch, nb) - x;
    double len = norm(d);
    if (len <= 0) continue;
    out.push_back({nb, d, u[std::size_t(nb)] - u[std::size_t(node)], 1.0 / len});
  }
  return out;
}

std::optional<Vec2> lsq_fit(const std::vector<StencilEntry>& st, bool one_dim) {
  std::vector<Vec2> deltas;
  std::vector<double> dvals, ws;
  for (const StencilEntry& e : st) {
    deltas.push_back(e.delta);
    dvals.push_back(e.dval);
    ws.push_back(e.w);
  }
  if (one_dim) {
    std::vector<double> dx;
    for (const Vec2& d : deltas) dx.push_back(d.x);
    auto s = fit_gradient_1d(dx, dvals, ws);
    if (!s) return std::nullopt;
    return Vec2{*s, 0};
  }
  return fit_gradient_2d(deltas, dvals, ws);
}

/// Candidate gradients from the full stencil and from each half-plane
/// sub-stencil oriented along a neighbor direction.
std::vector<Vec2> gradient_candidates(const std::vector<StencilEntry>& st, bool one_dim) {
  std::vector<Vec2> out;
  if (auto full = lsq_fit(st, one_dim)) out.push_back(*full);
  for (const StencilEntry& pivot : st) {
    Vec2 dir = normalized(pivot.delta);
    std::vector<StencilEntry> half;
    for (const StencilEntry& e : st)
      if (dot(normalized(e.delta), dir) >= -1e-12) half.push_back(e);
    if (half.size() == st.size()) continue;
    if (auto fit = lsq_fit(half, one_dim)) out.push_back(*fit);
  }
  return out;
}

struct SigmaSlopes {
  bool ok = false;
  bool has_tangent = false;
  double tau_plus = 0;   // one-sided slope along +edge direction
  double tau_minus = 0;  // one-sided slope along -edge direction
  std::vector<std::pair<int, double>> a;  // (branch, one-sided inward normal slope)

  // Tangential slopes admissible for an upper test function: p' must majorize
  // both one-sided slopes; for a lower test function it must minorize them.
  std::pair<double, double> upper_tangent_slab() const {
    return has_tangent ? std::make_pair(tau_plus, -tau_minus) : std::make_pair(0.0, 0.0);
  }
  std::pair<double, double> lower_tangent_slab() const {
    return has_tangent ? std::make_pair(-tau_minus, tau_plus) : std::make_pair(0.0, 0.0);
  }
};

SigmaSlopes sigma_slopes(const MetricGraph& g, const HamiltonianFamily& H,
                         const std::vector<double>& u, int node) {
  const Complex& c = *g.complex;
  const GraphNode& n = g.nodes[std::size_t(node)];
  const RamEdge& e = c.ram_edges[std::size_t(n.ram_edge)];
  SigmaSlopes out;

  if (!e.is_point()) {
    Vec3 dir = normalized(c.vertex(e.vb) - c.vertex(e.va));
    std::vector<double> dplus, vplus, wplus, dminus, vminus, wminus;
    for (int i = g.adj_offset[std::size_t(node)]; i < g.adj_offset[std::size_t(node) + 1]; ++i) {
      const GraphEdge& ge = g.edges[std::size_t(g.adj_edge[std::size_t(i)])];
      if (!ge.on_sigma) continue;
      int nb = g.adj_node[std::size_t(i)];
      if (g.nodes[std::size_t(nb)].ram_edge != n.ram_edge) continue;
      if (!std::isfinite(u[std::size_t(nb)])) continue;
      double d = dot(g.nodes[std::size_t(nb)].pos - n.pos, dir);
      if (d == 0) continue;
      double dv = u[std::size_t(nb)] - u[std::size_t(node)];
      if (d > 0) {
        dplus.push_back(d);
        vplus.push_back(dv);
        wplus.push_back(1.0 / d);
      } else {
        dminus.push_back(-d);
        vminus.push_back(dv);
        wminus.push_back(-1.0 / d);
      }
    }
    auto tp = fit_gradient_1d(dplus, vplus, wplus);
    auto tm = fit_gradient_1d(dminus, vminus, wminus);
    if (!tp && !tm) return out;
    // An edge end with neighbors on one side only: treat the slope as two sided.
    out.tau_plus = tp ? *tp : -*tm;
    out.tau_minus = tm ? *tm : -*tp;
    out.has_tangent = true;
  }

  for (const auto& inc : e.incident) {
    std::vector<StencilEntry> st = branch_stencil(g, u, node, inc.branch);
    const Branch& br = c.branches[std::size_t(inc.branch)];
    if (br.dim() == 1) {
      std::vector<double> ds, vs, ws;
      for (const StencilEntry& s : st) {
        double dn = dot(s.delta, inc.inward_normal);
        if (dn <= 0) continue;
        ds.push_back(dn);
        vs.push_back(s.dval);
        ws.push_back(s.w);
      }
      auto slope = fit_gradient_1d(ds, vs, ws);
      if (!slope) return out;
      out.a.emplace_back(inc.branch, *slope);
      continue;
    }
    // 2-d one-sided fit in (tangent, normal) coordinates of this branch.
    Vec3 dir3 = normalized(c.vertex(e.vb) - c.vertex(e.va));
    Vec2 t_local{dot(dir3, br.frame.e1), dot(dir3, br.frame.e2)};
    std::vector<Vec2> deltas;
    std::vector<double> dvals, ws;
    for (const StencilEntry& s : st) {
      deltas.push_back({dot(s.delta, t_local), dot(s.delta, inc.inward_normal)});
      dvals.push_back(s.dval);
      ws.push_back(s.w);
    }
    auto fit = fit_gradient_2d(deltas, dvals, ws);
    if (!fit) return out;
    out.a.emplace_back(inc.branch, fit->y);
  }
  out.ok = out.a.size() >= 2;
  return out;
}

/// H^j at a ramification point with tangential slope pt and normal slope s.
double sigma_hamiltonian(const MetricGraph& g, const HamiltonianFamily& H, int node, int branch,
                         double pt, double s) {
  const Complex& c = *g.complex;
  const GraphNode& n = g.nodes[std::size_t(node)];
  const RamEdge& e = c.ram_edges[std::size_t(n.ram_edge)];
  const Branch& br = c.branches[std::size_t(branch)];
  Vec2 x = g.local_of(branch, node);
  Vec2 nu{0, 0};
  for (const auto& inc : e.incident)
    if (inc.branch == branch) nu = inc.inward_normal;
  Vec2 p = nu * s;
  if (!e.is_point()) {
    Vec3 dir3 = normalized(c.vertex(e.vb) - c.vertex(e.va));
    Vec2 t_local{dot(dir3, br.frame.e1), dot(dir3, br.frame.e2)};
    p = p + t_local * pt;
  }
  return H.value(branch, x, p);
}

struct SiteFilter {
  const MetricGraph& g;
  const CheckOptions& opts;
  double corner_skip;  // transition sites closer than this to a corner are skipped

  bool excluded(const Vec3& pos) const {
    for (const Vec3& p : opts.exclude_near)
      if (norm(pos - p) <= opts.exclude_radius) return true;
    return false;
  }

  bool near_corner(int node) const {
    const Complex& c = *g.complex;
    if (c.branch_dim == 1) return false;
    const GraphNode& n = g.nodes[std::size_t(node)];
    const RamEdge& e = c.ram_edges[std::size_t(n.ram_edge)];
    for (const auto& inc : e.incident)
      for (int v : c.branches[std::size_t(inc.branch)].vertex_ids)
        if (norm(c.vertex(v) - n.pos) <= corner_skip) return true;
    return false;
  }
};

double resolve_tol(const MetricGraph& g, const HamiltonianFamily& H, const CheckOptions& opts) {
  if (opts.tol >= 0) return opts.tol;
  return 10.0 * g.params.h * (1.0 + H.lipschitz_bound());
}

void finish(CheckReport& rep) {
  rep.max_residual = -kInf;
  rep.failures = 0;
  bool any = false;
  for (const SiteRecord& s : rep.sites) {
    if (!s.vacuous) {
      rep.max_residual = std::max(rep.max_residual, s.residual);
      any = true;
    }
    if (!s.pass) rep.failures++;
  }
  if (!any) rep.max_residual = 0;
}

}  // namespace

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << sites.size() << " sites, " << failures << " failures, max residual " << max_residual
     << " (tol " << tol << ")";
  return os.str();
}

CheckReport check_subsolution(const MetricGraph& g, const HamiltonianFamily& H,
                              const std::vector<double>& u, const CheckOptions& opts) {
  if (u.size() != g.nodes.size())
    throw std::invalid_argument("field size does not match the graph");
  const Complex& c = *g.complex;
  CheckReport rep;
  rep.tol = resolve_tol(g, H, opts);
  SiteFilter filter{g, opts, 2.0 * g.params.h};
  bool one_dim = c.branch_dim == 1;

  for (std::size_t node = 0; node < g.nodes.size(); ++node) {
    const GraphNode& n = g.nodes[node];
    if (!std::isfinite(u[node]) || filter.excluded(n.pos)) continue;

    if (n.on_sigma()) {
      if (n.boundary || filter.near_corner(int(node))) continue;
      SigmaSlopes sl = sigma_slopes(g, H, u, int(node));
      SiteRecord rec;
      rec.node = int(node);
      rec.pos = n.pos;
      rec.ram_edge = n.ram_edge;
      rec.cond = ConditionClass::TransitionSubsolution;
      if (!sl.ok) {
        rec.vacuous = true;
        rec.note = "insufficient stencil";
        rep.sites.push_back(rec);
        continue;
      }
      auto [plo, phi] = sl.upper_tangent_slab();
      double residual = -kInf;
      bool any_admissible = false;
      if (plo <= phi) {
        for (std::size_t j = 0; j < sl.a.size(); ++j)
          for (std::size_t k = j + 1; k < sl.a.size(); ++k) {
            double lo = sl.a[j].second;   // admissible normal slopes of an upper
            double hi = -sl.a[k].second;  // test function on the (j,k) pair
            if (lo > hi) continue;        // no (j,k) upper test touches u here
            any_admissible = true;
            int branch = sl.a[j].first;
            for (double pt : {plo, phi})
              for (double s : {lo, hi})
                residual = std::max(residual, sigma_hamiltonian(g, H, int(node), branch, pt, s));
          }
      }
      if (!any_admissible) {
        rec.vacuous = true;
        rec.note = "no admissible transition test function";
      } else {
        rec.residual = residual;
        rec.pass = residual <= rep.tol;
      }
      rep.sites.push_back(rec);
      continue;
    }

    if (n.boundary || n.branch < 0) continue;
    std::vector<StencilEntry> st = branch_stencil(g, u, int(node), n.branch);
    auto fit = lsq_fit(st, one_dim);
    SiteRecord rec;
    rec.node = int(node);
    rec.pos = n.pos;
    rec.branch = n.branch;
    rec.cond = ConditionClass::InteriorSubsolution;
    if (!fit) {
      rec.vacuous = true;
      rec.note = "insufficient stencil";
    } else {
      rec.residual = H.value(n.branch, g.local_of(n.branch, int(node)), *fit);
      rec.pass = rec.residual <= rep.tol;
    }
    rep.sites.push_back(rec);
  }
  finish(rep);
  return rep;
}

CheckReport check_supersolution(const MetricGraph& g, const HamiltonianFamily& H,
                                const std::vector<double>& u, const CheckOptions& opts) {
  if (u.size() != g.nodes.size())
    throw std::invalid_argument("field size does not match the graph");
  const Complex& c = *g.complex;
  CheckReport rep;
  rep.tol = resolve_tol(g, H, opts);
  SiteFilter filter{g, opts, 2.0 * g.params.h};
  bool one_dim = c.branch_dim == 1;

  for (std::size_t node = 0; node < g.nodes.size(); ++node) {
    const GraphNode& n = g.nodes[node];
    if (!std::isfinite(u[node]) || filter.excluded(n.pos)) continue;

    if (n.on_sigma()) {
      if (opts.exclude_sigma || n.boundary || filter.near_corner(int(node))) continue;
      SigmaSlopes sl = sigma_slopes(g, H, u, int(node));
      SiteRecord rec;
      rec.node = int(node);
      rec.pos = n.pos;
      rec.ram_edge = n.ram_edge;
      rec.cond = ConditionClass::TransitionSupersolution;
      rec.note = "best-effort: measured tangential slope only";
      if (!sl.ok) {
        rec.vacuous = true;
        rec.note = "insufficient stencil";
        rep.sites.push_back(rec);
        continue;
      }
      // For every j there must exist k whose (j,k) lower tests all satisfy
      // the classical condition on the unfolded pair. A tangential kink of u
      // along the edge leaves no lower test at all.
      auto [plo, phi] = sl.lower_tangent_slab();
      double site_residual = -kInf;
      bool site_vacuous = true;
      bool site_pass = true;
      if (plo <= phi) {
        for (std::size_t j = 0; j < sl.a.size(); ++j) {
          double best_k = kInf;
          bool vac_k = false;
          for (std::size_t k = 0; k < sl.a.size(); ++k) {
            if (k == j) continue;
            double lo = -sl.a[k].second;  // lower tests: s <= a_j and -s <= a_k
            double hi = sl.a[j].second;
            if (lo > hi) {
              vac_k = true;  // no (j,k) lower test exists: vacuous pass
              break;
            }
            int branch = sl.a[j].first;
            double hmin = kInf;
            for (double pt : {plo, phi, std::clamp(0.0, plo, phi)})
              for (double s : {lo, hi, std::clamp(0.0, lo, hi)})
                hmin = std::min(hmin, sigma_hamiltonian(g, H, int(node), branch, pt, s));
            best_k = std::min(best_k, -hmin);
          }
          if (vac_k) continue;
          site_vacuous = false;
          site_residual = std::max(site_residual, best_k);
          if (best_k > rep.tol) site_pass = false;
        }
      }
      if (site_vacuous) {
        rec.vacuous = true;
        rec.note = "no admissible transition test function";
      } else {
        rec.residual = site_residual;
        rec.pass = site_pass;
      }
      rep.sites.push_back(rec);
      continue;
    }

    if (n.boundary || n.branch < 0) continue;
    std::vector<StencilEntry> st = branch_stencil(g, u, int(node), n.branch);
    std::vector<Vec2> cands = gradient_candidates(st, one_dim);
    SiteRecord rec;
    rec.node = int(node);
    rec.pos = n.pos;
    rec.branch = n.branch;
    rec.cond = ConditionClass::InteriorSupersolution;
    if (cands.empty()) {
      rec.vacuous = true;
      rec.note = "insufficient stencil";
    } else {
      double residual = kInf;
      Vec2 x = g.local_of(n.branch, int(node));
      for (const Vec2& d : cands) residual = std::min(residual, -H.value(n.branch, x, d));
      rec.residual = residual;
      rec.pass = residual <= rep.tol;
    }
    rep.sites.push_back(rec);
  }
  finish(rep);
  return rep;
}

LipschitzReport check_lipschitz(const MetricGraph& g, const std::vector<double>& u, double C) {
  LipschitzReport rep;
  rep.bound = C;
  rep.tol_factor = 1.0 + 10.0 * g.params.h;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const GraphEdge& e = g.edges[i];
    if (!std::isfinite(u[std::size_t(e.a)]) || !std::isfinite(u[std::size_t(e.b)])) continue;
    if (e.len <= 0) continue;
    double ratio = std::abs(u[std::size_t(e.a)] - u[std::size_t(e.b)]) / e.len;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.worst_edge = int(i);
    }
  }
  rep.pass = rep.max_ratio <= C * rep.tol_factor;
  return rep;
}

CompareReport compare_fields(const MetricGraph& g, const std::vector<double>& u,
                             const std::vector<double>& v, double tol) {
  if (u.size() != g.nodes.size() || v.size() != g.nodes.size())
    throw std::invalid_argument("fields do not match the graph");
  CompareReport rep;
  rep.precondition_met = true;
  for (int n : g.boundary_node_ids())
    if (u[std::size_t(n)] > v[std::size_t(n)] + tol) rep.precondition_met = false;
  if (!rep.precondition_met) {
    rep.note = "precondition unmet: u exceeds v on the boundary";
    rep.pass = false;
    return rep;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) continue;
    rep.max_violation = std::max(rep.max_violation, u[i] - v[i]);
  }
  rep.pass = rep.max_violation <= tol;
  return rep;
}

}  // namespace lep
