#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lep/complex.hpp"
#include "lep/hamiltonian.hpp"
#include "lep/metric_graph.hpp"

namespace lep {

// Dirichlet problem H(x, Du) = 0 in the complex, u = g on the boundary,
// solved by the representation formula u(x) = min { g(y) + S(y,x) } over
// boundary points realized as multi-source shortest paths on the metric graph.

struct BoundaryData {
  enum class Kind { Constant, VertexSamples };
  Kind kind = Kind::Constant;
  double value = 0;
  std::vector<double> vertex_values;  // per global vertex id

  static BoundaryData constant(double c) { return {Kind::Constant, c, {}}; }
  static BoundaryData samples(std::vector<double> vals) {
    return {Kind::VertexSamples, 0, std::move(vals)};
  }
  std::string describe() const;
};

struct DirichletProblem {
  const Complex* complex = nullptr;
  const HamiltonianFamily* hamiltonian = nullptr;
  BoundaryData g;
  MeshParams mesh;
  bool override_hypotheses = false;
  std::uint64_t seed = 1;
};

struct SolvabilityReport {
  bool pass = false;
  bool conclusive = true;
  double worst = 0;  // -min f (eikonal) or max H(x,0) (generic)
  std::string location;
  std::string note;
};

/// Strict subsolution hypothesis via a constant test function: passes when
/// H(x, 0) < 0 at every sampled point (min f > 0 for the eikonal kind).
SolvabilityReport check_h7(const DirichletProblem& p);

struct BoundaryCompatReport {
  bool pass = false;
  double worst = 0;  // max of g(x) - g(y) - S(y,x)
  double tolerance = 0;
  long long pairs_checked = 0;
  std::string location;
};

/// Boundary compatibility g(x) - g(y) <= S(y,x) over boundary node pairs,
/// randomly subsampled above 10^4 pairs. Graph distances stand in for S; the
/// tolerance carries a discretization slack of h times the Lipschitz bound.
BoundaryCompatReport check_boundary_compat(const DirichletProblem& p, const MetricGraph& g);

/// Dirichlet datum at a boundary node (constant, or vertex samples
/// interpolated along the boundary facet the node sits on).
double boundary_value(const DirichletProblem& p, const MetricGraph& g, int node);

class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  SolutionField field;
  std::vector<std::string> warnings;
};

/// Representation-formula solve on a prebuilt graph. Throws HypothesisError
/// when a hypothesis check fails and the problem does not override it; nodes
/// disconnected from the boundary get +infinity and a warning.
SolveResult solve_dirichlet(const DirichletProblem& p, const MetricGraph& g);

/// Convenience overload that builds the graph itself.
SolveResult solve_dirichlet(const DirichletProblem& p);

}  // namespace lep
