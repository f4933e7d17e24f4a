#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lep/complex.hpp"
#include "lep/hamiltonian.hpp"

namespace lep {

// Steiner-refined weighted graph over a complex. Graph paths are piecewise
// straight connections; edge weights integrate the metric gauge, so shortest
// paths approximate the action distance. Construction is single-writer; a
// built graph is immutable and queries may run concurrently.

struct MeshParams {
  double h = 0.0625;        // target edge length
  int steiner_per_edge = 1; // facet sampling refinement: spacing h / steiner_per_edge
  int ring = 2;             // connectivity order (neighbor rings / radius ring*h)

  void validate() const;
};

struct GraphNode {
  Vec3 pos;
  int branch = -1;    // owning branch; -1 for shared ramification nodes
  int ram_edge = -1;  // ramification edge id for shared nodes
  int vertex_id = -1; // complex vertex id when the node sits on one
  int on_facet = -1;  // boundary facet index within `branch`
  double facet_t = 0; // parameter along that facet
  bool boundary = false;

  bool on_sigma() const { return ram_edge >= 0; }
};

struct GraphEdge {
  int a = -1;
  int b = -1;
  double w = 0;    // gauge integral along the segment
  double len = 0;  // Euclidean length
  int branch = -1; // branch whose mesh created the edge
  bool on_sigma = false; // segment lies along a ramification edge
};

struct MetricGraph {
  const Complex* complex = nullptr;
  MeshParams params;
  std::string hamiltonian_desc;
  std::uint64_t complex_hash = 0;

  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<int> adj_offset;  // CSR over nodes
  std::vector<int> adj_node;
  std::vector<int> adj_edge;

  std::vector<std::vector<int>> branch_nodes;  // per branch, sorted node ids
  std::vector<std::vector<std::array<int, 3>>> branch_tris;

  std::vector<int> boundary_node_ids() const;
  bool branch_has_node(int branch, int node) const;
  Vec2 local_of(int branch, int node) const {
    return complex->branches[std::size_t(branch)].frame.to_local(nodes[std::size_t(node)].pos);
  }
};

MetricGraph build_metric_graph(const Complex& complex, const HamiltonianFamily& H,
                               const MeshParams& params);

struct BranchPoint {
  int branch = 0;
  Vec2 local;
};

/// Shortest-path action between two points on the complex. Query points snap
/// to a graph node when one coincides, otherwise they are inserted as
/// temporary nodes linked into the containing triangle's neighborhood.
double graph_distance(const MetricGraph& g, const HamiltonianFamily& H, const BranchPoint& a,
                      const BranchPoint& b);

double graph_distance_nodes(const MetricGraph& g, int a, int b);

/// Multi-source shortest-path field: value(n) = min over sources of
/// offset + path cost. Unreachable nodes get +infinity.
std::vector<double> distance_field(const MetricGraph& g,
                                   const std::vector<std::pair<int, double>>& sources);

/// Value of a node field at an arbitrary point: the snapped node's value, or
/// the minimum of value + link weight over the same temporary attachment used
/// by distance queries.
double field_value_at(const MetricGraph& g, const HamiltonianFamily& H,
                      const std::vector<double>& u, const BranchPoint& p);

/// Nearest graph node of a branch point (for node-exact queries).
int nearest_node(const MetricGraph& g, const BranchPoint& p);

/// Scalar field attached to graph nodes with the provenance needed to rebuild
/// the graph it lives on.
struct FieldMeta {
  double h = 0;
  int ring = 0;
  int steiner = 1;
  std::string hamiltonian;
  std::string boundary_data;
  std::uint64_t complex_hash = 0;
  std::uint64_t seed = 0;
  bool hypotheses_overridden = false;
};

struct SolutionField {
  std::vector<double> values;
  FieldMeta meta;
};

}  // namespace lep
