#include "lep/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace lep {

std::string BoundaryData::describe() const {
  if (kind == Kind::Constant) {
    std::ostringstream os;
    os << "const:" << value;
    return os.str();
  }
  return "samples";
}

SolvabilityReport check_h7(const DirichletProblem& p) {
  const Complex& c = *p.complex;
  const HamiltonianFamily& H = *p.hamiltonian;
  SolvabilityReport rep;
  double worst = -std::numeric_limits<double>::infinity();
  for (const Branch& b : c.branches) {
    if (b.degenerate) continue;
    for (const Vec2& x : closure_sample_points(b)) {
      double h0 = H.value(b.id, x, {0, 0});  // equals -f for the eikonal kind
      if (h0 > worst) {
        worst = h0;
        std::ostringstream os;
        os << "branch " << b.id << " at (" << x.x << "," << x.y << ")";
        rep.location = os.str();
      }
    }
  }
  rep.worst = worst;
  rep.pass = worst < 0;
  if (H.kind() == HamiltonianFamily::Kind::GenericConvex && !rep.pass) {
    // A non-constant smooth subsolution could still exist.
    rep.conclusive = false;
    rep.note = "H(x,0) >= 0 somewhere; strict subsolution may still exist for non-constant test functions";
  } else if (!rep.pass) {
    rep.note = "weight field reaches zero";
  }
  return rep;
}

BoundaryCompatReport check_boundary_compat(const DirichletProblem& p, const MetricGraph& g) {
  BoundaryCompatReport rep;
  const HamiltonianFamily& H = *p.hamiltonian;
  std::vector<int> bnodes = g.boundary_node_ids();
  rep.tolerance = 1e-9 + g.params.h * H.lipschitz_bound();
  if (bnodes.empty()) {
    rep.pass = true;
    return rep;
  }
  std::vector<double> gvals(bnodes.size());
  for (std::size_t i = 0; i < bnodes.size(); ++i) gvals[i] = boundary_value(p, g, bnodes[i]);

  // Pick source nodes so that sources * |B| stays near 10^4.
  std::vector<int> sources(bnodes.size());
  for (std::size_t i = 0; i < sources.size(); ++i) sources[i] = int(i);
  const long long limit = 10000;
  long long nb = static_cast<long long>(bnodes.size());
  if (nb * nb > limit) {
    std::mt19937_64 rng(p.seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    std::size_t keep = std::max<std::size_t>(1, std::size_t(limit / nb));
    sources.resize(std::min(sources.size(), keep));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int si : sources) {
    std::vector<double> dist = distance_field(g, {{bnodes[std::size_t(si)], 0.0}});
    for (std::size_t i = 0; i < bnodes.size(); ++i) {
      double s = dist[std::size_t(bnodes[i])];
      if (!std::isfinite(s)) continue;  // disconnected pieces are reported by the solver
      double v = gvals[i] - gvals[std::size_t(si)] - s;
      rep.pairs_checked++;
      if (v > worst) {
        worst = v;
        std::ostringstream os;
        os << "g(" << bnodes[i] << ") - g(" << bnodes[std::size_t(si)] << ") exceeds the action distance";
        rep.location = os.str();
      }
    }
  }
  rep.worst = worst;
  rep.pass = worst <= rep.tolerance;
  return rep;
}

double boundary_value(const DirichletProblem& p, const MetricGraph& g, int node) {
  if (p.g.kind == BoundaryData::Kind::Constant) return p.g.value;
  const GraphNode& n = g.nodes[std::size_t(node)];
  const std::vector<double>& vals = p.g.vertex_values;
  if (vals.size() != p.complex->vertices.size())
    throw std::invalid_argument("boundary samples need one value per vertex");
  if (n.vertex_id >= 0) return vals[std::size_t(n.vertex_id)];
  if (n.branch >= 0 && n.on_facet >= 0) {
    auto [v0, v1] = p.complex->branches[std::size_t(n.branch)].facet_vertices(n.on_facet);
    return (1 - n.facet_t) * vals[std::size_t(v0)] + n.facet_t * vals[std::size_t(v1)];
  }
  throw std::invalid_argument("node " + std::to_string(node) + " carries no boundary datum");
}

SolveResult solve_dirichlet(const DirichletProblem& p, const MetricGraph& g) {
  SolveResult res;
  SolvabilityReport h7 = check_h7(p);
  if (!h7.pass) {
    std::ostringstream os;
    os << "strict subsolution hypothesis failed (worst H(x,0) = " << h7.worst << " at "
       << h7.location << ")";
    if (!p.override_hypotheses) throw HypothesisError(os.str());
    res.warnings.push_back("override: " + os.str());
  }
  if (!h7.conclusive) res.warnings.push_back(h7.note);

  BoundaryCompatReport h8 = check_boundary_compat(p, g);
  if (!h8.pass) {
    std::ostringstream os;
    os << "boundary compatibility failed: " << h8.location << " by " << h8.worst
       << " (allowed slack " << h8.tolerance << ")";
    if (!p.override_hypotheses) throw HypothesisError(os.str());
    res.warnings.push_back("override: " + os.str());
  }

  std::vector<int> bnodes = g.boundary_node_ids();
  if (bnodes.empty()) throw std::invalid_argument("complex has no boundary nodes");
  std::vector<std::pair<int, double>> sources;
  sources.reserve(bnodes.size());
  for (int n : bnodes) sources.emplace_back(n, boundary_value(p, g, n));

  res.field.values = distance_field(g, sources);
  int unreachable = 0;
  for (double v : res.field.values)
    if (!std::isfinite(v)) unreachable++;
  if (unreachable > 0)
    res.warnings.push_back(std::to_string(unreachable) +
                           " nodes are disconnected from the boundary and stay at +infinity");

  res.field.meta.h = g.params.h;
  res.field.meta.ring = g.params.ring;
  res.field.meta.steiner = g.params.steiner_per_edge;
  res.field.meta.hamiltonian = g.hamiltonian_desc;
  res.field.meta.boundary_data = p.g.describe();
  res.field.meta.complex_hash = g.complex_hash;
  res.field.meta.seed = p.seed;
  res.field.meta.hypotheses_overridden = p.override_hypotheses;
  return res;
}

SolveResult solve_dirichlet(const DirichletProblem& p) {
  MetricGraph g = build_metric_graph(*p.complex, *p.hamiltonian, p.mesh);
  return solve_dirichlet(p, g);
}

}  // namespace lep
