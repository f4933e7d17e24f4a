#include "lep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Crossing {
  int edge;
  int from;
  int to;
};

/// All branch chains a -> b through distinct branches (depth-first).
void enumerate_chains(const Complex& c, int from, int to, std::vector<Crossing>& cur,
                      std::set<int>& visited, std::vector<std::vector<Crossing>>& out) {
  if (from == to) {
    out.push_back(cur);
    return;
  }
  for (const RamEdge& e : c.ram_edges) {
    bool touches = false;
    for (const auto& inc : e.incident) touches |= inc.branch == from;
    if (!touches) continue;
    for (const auto& inc : e.incident) {
      if (inc.branch == from || visited.count(inc.branch)) continue;
      visited.insert(inc.branch);
      cur.push_back({e.id, from, inc.branch});
      enumerate_chains(c, inc.branch, to, cur, visited, out);
      cur.pop_back();
      visited.erase(inc.branch);
    }
  }
}

std::vector<std::vector<Crossing>> chains_between(const Complex& c, int from, int to,
                                                  int max_branches) {
  std::vector<std::vector<Crossing>> out;
  std::vector<Crossing> cur;
  std::set<int> visited{from};
  enumerate_chains(c, from, to, cur, visited, out);
  std::vector<std::vector<Crossing>> kept;
  for (auto& ch : out)
    if (int(ch.size()) + 1 <= max_branches) kept.push_back(std::move(ch));
  return kept;
}

}  // namespace

double unfold_distance(const Complex& c, int ram_edge, int branch_j, const Vec2& a_local,
                       int branch_k, const Vec2& b_local) {
  UnfoldPair up = unfold_pair(c, ram_edge, branch_j, branch_k);
  return norm(up.first.apply(a_local) - up.second.apply(b_local));
}

double min_unfold_distance(const Complex& c, const BranchPoint& a, const BranchPoint& b,
                           int max_branches) {
  double best = kInf;
  if (a.branch == b.branch) best = norm(a.local - b.local);
  double tol = 1e-9 * c.bbox_diameter();
  for (const auto& chain : chains_between(c, a.branch, b.branch, max_branches)) {
    if (chain.empty()) continue;
    // a keeps identity coordinates; successive unfolds carry b into a's plane.
    // The straight segment is a realizable connection only when it crosses the
    // unfolded edge images in order.
    std::vector<Iso2> maps{Iso2{}};  // branch_i local -> unfolding plane
    for (const Crossing& cr : chain) {
      UnfoldPair up = unfold_pair(c, cr.edge, cr.from, cr.to);
      maps.push_back(maps.back().compose(up.first.inverse()).compose(up.second));
    }
    Vec2 pa = a.local;
    Vec2 pb = maps.back().apply(b.local);
    bool realizable = true;
    double t_prev = -tol;
    for (std::size_t i = 0; i < chain.size() && realizable; ++i) {
      const RamEdge& e = c.ram_edges[std::size_t(chain[i].edge)];
      const Branch& from = c.branches[std::size_t(chain[i].from)];
      Vec2 ea = maps[i].apply(from.frame.to_local(c.vertex(e.va)));
      Vec2 eb = maps[i].apply(from.frame.to_local(c.vertex(e.vb)));
      if (e.is_point()) {
        // Segment networks: the straight "segment" must pass through the point.
        if (dist_point_segment(ea, pa, pb) > tol) realizable = false;
        continue;
      }
      Vec2 d = pb - pa, ed = eb - ea;
      double den = cross(d, ed);
      if (std::abs(den) <= tol * norm(d) * std::max(norm(ed), 1e-300)) {
        realizable = false;
        continue;
      }
      double t = cross(ea - pa, ed) / den;      // along the query segment
      double s = cross(ea - pa, d) / den;       // along the edge
      if (s < -1e-9 || s > 1 + 1e-9 || t < t_prev || t > 1 + 1e-9) realizable = false;
      t_prev = t;
    }
    if (realizable) best = std::min(best, norm(pa - pb));
  }
  return best;
}

// ---- brute-force action -------------------------------------------------------

BruteForceBudgetExceeded::BruteForceBudgetExceeded(double partial, long long budget)
    : std::runtime_error("brute-force combinatorial budget of " + std::to_string(budget) +
                         " exceeded; best bound so far " + std::to_string(partial)),
      partial_bound(partial) {}

namespace {

/// Action of one straight constant-speed segment with the horizon optimized by
/// golden section over log T.
double segment_action(const HamiltonianFamily& H, int branch, const Vec2& p, const Vec2& q,
                      int quadrature) {
  Vec2 delta = q - p;
  double len = norm(delta);
  if (len <= 1e-15) return 0.0;
  auto integral = [&](double log_t) {
    double t = std::exp(log_t);
    Vec2 speed = delta / t;
    double s = 0;
    for (int i = 0; i < quadrature; ++i)
      s += H.lagrangian(branch, p + delta * ((i + 0.5) / quadrature), speed);
    return t * s / quadrature;
  };
  double lo = std::log(1e-4 * len), hi = std::log(1e3 * (len + 1.0));
  return golden_min(lo, hi, 28, integral);
}

struct PathProblem {
  const Complex& c;
  const HamiltonianFamily& H;
  const BruteForceOptions& opts;
  BranchPoint a, b;
  std::vector<Crossing> chain;
  std::vector<int> branches;              // visited branch per leg
  std::vector<bool> convex;               // per leg
  std::vector<std::pair<Vec2, Vec2>> box; // free-vertex bbox per leg

  int nfree() const { return c.branch_dim == 1 ? 0 : opts.depth; }
  // Coordinate layout: crossing parameters first, then per-leg free vertices.
  int ncoords() const {
    return int(chain.size()) + int(branches.size()) * nfree() * 2;
  }

  bool leg_segment_ok(int leg, const Vec2& p, const Vec2& q) const {
    const Branch& br = c.branches[std::size_t(branches[std::size_t(leg)])];
    if (br.dim() == 1) return true;
    double tol = c.tol_len();
    if (!point_in_polygon(br.local, p, tol) || !point_in_polygon(br.local, q, tol)) return false;
    if (convex[std::size_t(leg)]) return true;
    return segment_in_polygon(br.local, p, q, tol);
  }

  Vec2 crossing_local(int idx, double s, bool downstream) const {
    const Crossing& cr = chain[std::size_t(idx)];
    const RamEdge& e = c.ram_edges[std::size_t(cr.edge)];
    Vec3 pos = e.is_point() ? c.vertex(e.va)
                            : c.vertex(e.va) + (c.vertex(e.vb) - c.vertex(e.va)) * s;
    int br = downstream ? cr.to : cr.from;
    return c.branches[std::size_t(br)].frame.to_local(pos);
  }

  double evaluate(const std::vector<double>& coords, int quadrature) const {
    int nf = nfree();
    double total = 0;
    int nlegs = int(branches.size());
    for (int leg = 0; leg < nlegs; ++leg) {
      std::vector<Vec2> pts;
      pts.push_back(leg == 0 ? a.local : crossing_local(leg - 1, coords[std::size_t(leg - 1)], true));
      for (int v = 0; v < nf; ++v) {
        std::size_t base = chain.size() + std::size_t((leg * nf + v) * 2);
        pts.push_back({coords[base], coords[base + 1]});
      }
      pts.push_back(leg == nlegs - 1 ? b.local
                                     : crossing_local(leg, coords[std::size_t(leg)], false));
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!leg_segment_ok(leg, pts[i], pts[i + 1])) return kInf;
        total += segment_action(H, branches[std::size_t(leg)], pts[i], pts[i + 1], quadrature);
      }
    }
    return total;
  }
};

}  // namespace

double brute_force_action(const Complex& c, const HamiltonianFamily& H, const BranchPoint& a,
                          const BranchPoint& b, const BruteForceOptions& opts) {
  if (c.branches.size() > 4)
    throw std::invalid_argument("brute-force oracle is limited to complexes with <= 4 branches");
  double best = kInf;
  long long evaluated = 0;

  auto chains = chains_between(c, a.branch, b.branch, int(c.branches.size()));
  if (a.branch == b.branch) chains.insert(chains.begin(), {});

  // Searching every vertex count up to the requested depth keeps the bound
  // monotone in the depth parameter.
  for (int depth = 0; depth <= opts.depth; ++depth)
  for (const auto& chain : chains) {
    BruteForceOptions sub = opts;
    sub.depth = depth;
    PathProblem prob{c, H, sub, a, b, chain, {}, {}, {}};
    prob.branches.push_back(a.branch);
    for (const Crossing& cr : chain) prob.branches.push_back(cr.to);
    for (int br : prob.branches) {
      const Branch& branch = c.branches[std::size_t(br)];
      bool cvx = true;
      if (branch.dim() == 2) {
        double orient = polygon_signed_area(branch.local);
        for (std::size_t i = 0; i < branch.local.size(); ++i) {
          Vec2 p0 = branch.local[i];
          Vec2 p1 = branch.local[(i + 1) % branch.local.size()];
          Vec2 p2 = branch.local[(i + 2) % branch.local.size()];
          if (cross(p1 - p0, p2 - p1) * orient < 0) cvx = false;
        }
      }
      prob.convex.push_back(cvx);
      Vec2 lo = branch.local[0], hi = branch.local[0];
      for (const Vec2& v : branch.local) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
      }
      prob.box.emplace_back(lo, hi);
    }

    int nf = prob.nfree();
    // Per-coordinate coarse candidate values.
    std::vector<std::vector<double>> candidates;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      std::vector<double> ss;
      const RamEdge& e = c.ram_edges[std::size_t(chain[i].edge)];
      int cg = e.is_point() ? 1 : opts.crossing_grid;
      for (int k = 0; k < cg; ++k) ss.push_back((k + 1.0) / (cg + 1.0));
      candidates.push_back(std::move(ss));
    }
    for (std::size_t leg = 0; leg < prob.branches.size(); ++leg) {
      auto [lo, hi] = prob.box[leg];
      for (int v = 0; v < nf; ++v)
        for (int axis = 0; axis < 2; ++axis) {
          std::vector<double> vals;
          double l = axis == 0 ? lo.x : lo.y, h = axis == 0 ? hi.x : hi.y;
          for (int k = 0; k < opts.grid; ++k) vals.push_back(l + (h - l) * (k + 0.5) / opts.grid);
          candidates.push_back(std::move(vals));
        }
    }

    long long combos = 1;
    for (const auto& cc : candidates) combos *= std::max<std::size_t>(cc.size(), 1);

    std::vector<std::size_t> odo(candidates.size(), 0);
    std::vector<double> coords(candidates.size());
    std::vector<double> best_coords;
    double chain_best = kInf;
    for (long long it = 0; it < combos; ++it) {
      if (++evaluated > opts.budget)
        throw BruteForceBudgetExceeded(std::min(best, chain_best), opts.budget);
      for (std::size_t i = 0; i < odo.size(); ++i) coords[i] = candidates[i][odo[i]];
      double v = prob.evaluate(coords, std::max(4, opts.quadrature / 2));
      if (v < chain_best) {
        chain_best = v;
        best_coords = coords;
      }
      for (std::size_t i = 0; i < odo.size(); ++i) {
        if (++odo[i] < candidates[i].size()) break;
        odo[i] = 0;
      }
    }

    // Coordinate descent on the incumbent at full quadrature.
    if (!best_coords.empty()) {
      chain_best = prob.evaluate(best_coords, opts.quadrature);
      for (int round = 0; round < opts.refine_rounds; ++round) {
        for (std::size_t i = 0; i < best_coords.size(); ++i) {
          double lo, hi;
          if (i < chain.size()) {
            lo = 0.0;
            hi = 1.0;
          } else {
            std::size_t rest = i - chain.size();
            std::size_t leg = rest / std::size_t(std::max(1, nf * 2));
            int axis = int(rest % 2);
            lo = axis == 0 ? prob.box[leg].first.x : prob.box[leg].first.y;
            hi = axis == 0 ? prob.box[leg].second.x : prob.box[leg].second.y;
          }
          auto line = [&](double t) {
            std::vector<double> trial = best_coords;
            trial[i] = t;
            return prob.evaluate(trial, opts.quadrature);
          };
          double t_best = best_coords[i];
          double v_best = chain_best;
          const int probes = 33;
          for (int k = 0; k <= probes; ++k) {
            double t = lo + (hi - lo) * k / probes;
            double v = line(t);
            if (v < v_best) {
              v_best = v;
              t_best = t;
            }
          }
          // Golden-section polish around the best probe, keeping the argmin.
          double span = (hi - lo) / probes;
          double t_lo = std::max(lo, t_best - span), t_hi = std::min(hi, t_best + span);
          const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
          double c1 = t_hi - invphi * (t_hi - t_lo), c2 = t_lo + invphi * (t_hi - t_lo);
          double f1 = line(c1), f2 = line(c2);
          for (int k = 0; k < 32; ++k) {
            if (f1 < f2) {
              t_hi = c2;
              c2 = c1;
              f2 = f1;
              c1 = t_hi - invphi * (t_hi - t_lo);
              f1 = line(c1);
            } else {
              t_lo = c1;
              c1 = c2;
              f1 = f2;
              c2 = t_lo + invphi * (t_hi - t_lo);
              f2 = line(c2);
            }
          }
          if (std::min(f1, f2) < v_best) {
            v_best = std::min(f1, f2);
            t_best = f1 < f2 ? c1 : c2;
          }
          best_coords[i] = t_best;
          chain_best = std::min(chain_best, v_best);
        }
      }
    }
    best = std::min(best, chain_best);
  }
  return best;
}

}  // namespace lep
