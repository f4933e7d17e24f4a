#pragma once

#include <string>
#include <vector>

#include "lep/complex.hpp"
#include "lep/hamiltonian.hpp"
#include "lep/metric_graph.hpp"

namespace lep {

// Numerical verification of the viscosity sub/supersolution conditions on a
// node field: classical conditions at interior sites, transition conditions at
// ramification sites via one-sided normal derivatives on the unfolded branch
// pairs. All checks are read-only over immutable inputs.

enum class ConditionClass {
  InteriorSubsolution,
  TransitionSubsolution,
  InteriorSupersolution,
  TransitionSupersolution,
};

struct SiteRecord {
  int node = -1;
  Vec3 pos;
  int branch = -1;    // owning branch for interior sites
  int ram_edge = -1;  // ramification edge for transition sites
  ConditionClass cond;
  double residual = 0;
  bool pass = true;
  bool vacuous = false;  // no admissible test function at the site
  std::string note;
};

struct CheckReport {
  std::vector<SiteRecord> sites;
  double tol = 0;
  double max_residual = 0;  // over non-vacuous sites
  int failures = 0;

  bool all_pass() const { return failures == 0; }
  std::string summary() const;
};

struct CheckOptions {
  double tol = -1;  // < 0: use 10 h (1 + C_K)
  bool exclude_sigma = false;
  std::vector<Vec3> exclude_near;  // skip sites within exclude_radius of these
  double exclude_radius = 0;
};

/// Subsolution check. Interior sites test H(x, Du) <= tol with a weighted
/// least-squares ring-1 gradient. Ramification sites test every incident pair
/// (j,k): an upper test function has its normal slope in the slab [a_j, -a_k]
/// built from the one-sided normal derivatives and its tangential slope in the
/// hull of the one-sided tangential derivatives; H is evaluated at the
/// extremes of that box (empty box: no upper test touches u, vacuous pass).
CheckReport check_subsolution(const MetricGraph& g, const HamiltonianFamily& H,
                              const std::vector<double>& u, const CheckOptions& opts = {});

/// Supersolution check. Interior sites use the stencil fit minimizing the
/// residual -H(x, Du) among one-sided sub-stencils. Ramification sites are
/// best-effort: only the measured one-sided slope hull stands in for the
/// definition's quantifier over all tangential slopes; for each incident j
/// some k != j must pass the classical test on the unfolded pair.
CheckReport check_supersolution(const MetricGraph& g, const HamiltonianFamily& H,
                                const std::vector<double>& u, const CheckOptions& opts = {});

struct LipschitzReport {
  double max_ratio = 0;
  int worst_edge = -1;
  double bound = 0;  // C used
  double tol_factor = 0;
  bool pass = true;
};

/// |u(a) - u(b)| <= C |b - a| over every graph edge; passes when the worst
/// ratio stays within C (1 + 10 h).
LipschitzReport check_lipschitz(const MetricGraph& g, const std::vector<double>& u, double C);

struct CompareReport {
  bool precondition_met = false;  // u <= v at boundary nodes
  double max_violation = 0;
  bool pass = false;
  std::string note;
};

/// Comparison-principle check: given u <= v on the boundary nodes, verifies
/// u <= v + tol everywhere. Reports "precondition unmet" without a verdict
/// when the boundary ordering fails.
CompareReport compare_fields(const MetricGraph& g, const std::vector<double>& u,
                             const std::vector<double>& v, double tol = 1e-9);

}  // namespace lep
