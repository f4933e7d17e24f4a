#pragma once

#include <stdexcept>

#include "lep/complex.hpp"
#include "lep/hamiltonian.hpp"
#include "lep/metric_graph.hpp"

namespace lep {

// Independent reference routes for the action distance. Nothing here touches
// the metric graph; the brute-force oracle also avoids the gauge reduction and
// minimizes over the path horizon numerically.

/// Distance between points of two branches across one shared edge, measured on
/// the unfolded plane. Exact when the straight unfolded segment crosses the
/// shared edge.
double unfold_distance(const Complex& c, int ram_edge, int branch_j, const Vec2& a_local,
                       int branch_k, const Vec2& b_local);

/// Minimum straight-line distance over all unfold chains visiting at most
/// `max_branches` branches.
double min_unfold_distance(const Complex& c, const BranchPoint& a, const BranchPoint& b,
                           int max_branches = 3);

struct BruteForceOptions {
  int depth = 2;              // free polyline vertices per visited branch
  int grid = 3;               // coarse grid resolution per free vertex coordinate
  int crossing_grid = 7;      // coarse crossing positions per crossed edge
  long long budget = 200000;  // coarse combination cap
  int quadrature = 16;        // subsegments of the action integral
  int refine_rounds = 2;      // coordinate-descent passes on the incumbent
};

class BruteForceBudgetExceeded : public std::runtime_error {
 public:
  BruteForceBudgetExceeded(double partial, long long budget);
  double partial_bound;  // best upper bound found before the budget ran out
};

/// Upper bound on the action distance by exhaustive minimization over polyline
/// connections: crossing points and free vertices range over coarse grids, the
/// action of each segment is integrated by quadrature of the Lagrangian with
/// an optimal constant-speed horizon found by golden section.
double brute_force_action(const Complex& c, const HamiltonianFamily& H, const BranchPoint& a,
                          const BranchPoint& b, const BruteForceOptions& opts = {});

}  // namespace lep
