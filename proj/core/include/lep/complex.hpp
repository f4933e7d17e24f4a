#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lep/geom.hpp"

namespace lep {

// A polygonal ramified complex: flat polygonal branches embedded in R^2 or
// R^3, glued along whole shared facets (segments for surface branches,
// endpoints for segment branches). Branches of dimension 1 and 2 are
// supported. Immutable after construction; all operations here are pure.

struct FacetRef {
  int branch = -1;
  int facet = -1;
  bool operator==(const FacetRef& o) const { return branch == o.branch && facet == o.facet; }
  bool operator<(const FacetRef& o) const {
    return branch != o.branch ? branch < o.branch : facet < o.facet;
  }
};

enum class FacetClass { Unclassified, Ramification, Boundary };

/// Isometric coordinate frame of a branch hyperplane.
struct Frame {
  Vec3 origin;
  Vec3 e1;
  Vec3 e2;      // zero for 1-d branches
  Vec3 normal;  // unit plane normal (2-d branches in R^3), else zero

  Vec2 to_local(const Vec3& p) const { return {dot(p - origin, e1), dot(p - origin, e2)}; }
  Vec3 to_ambient(const Vec2& q) const { return origin + e1 * q.x + e2 * q.y; }
};

struct Branch {
  int id = -1;
  std::vector<int> vertex_ids;  // polygon loop (dim 2) or endpoint pair (dim 1)

  // Derived geometry.
  Frame frame;
  std::vector<Vec2> local;  // vertex_ids mapped into branch coordinates
  bool degenerate = false;  // area/length below tolerance; geometry checks skipped
  double planarity_defect = 0;

  std::vector<FacetClass> facet_class;
  std::vector<int> facet_ram_edge;  // ram edge id per facet, -1 if none

  int dim() const { return vertex_ids.size() == 2 ? 1 : 2; }
  int facet_count() const { return dim() == 1 ? 2 : int(vertex_ids.size()); }
  /// Endpoint vertex ids of a facet (segment facets repeat the endpoint).
  std::pair<int, int> facet_vertices(int facet) const {
    if (dim() == 1) return {vertex_ids[facet], vertex_ids[facet]};
    return {vertex_ids[facet], vertex_ids[(facet + 1) % vertex_ids.size()]};
  }
};

struct RamEdge {
  int id = -1;
  int va = -1;  // segment endpoints; vb == va for point edges (dim 1 complexes)
  int vb = -1;

  struct Incident {
    int branch = -1;
    int facet = -1;
    Vec2 inward_normal;  // branch-local, unit, orthogonal to the edge
  };
  std::vector<Incident> incident;

  bool is_point() const { return va == vb; }
};

struct Complex {
  int ambient_dim = 3;  // 2 or 3
  int branch_dim = 2;   // 1 or 2
  std::vector<Vec3> vertices;
  std::vector<Branch> branches;
  std::vector<RamEdge> ram_edges;
  std::vector<FacetRef> boundary_facets;
  std::vector<int> boundary_vertices;  // explicitly excluded 0-strata (e.g. cube corners)

  double bbox_diameter() const;
  double tol_planar() const { return 1e-9 * bbox_diameter(); }
  double tol_len() const { return 1e-9 * bbox_diameter(); }

  Vec3 vertex(int id) const { return vertices.at(std::size_t(id)); }
  /// Facet endpoints in branch-local coordinates.
  std::pair<Vec2, Vec2> facet_local(int branch, int facet) const;
};

/// Derives frames, local coordinates and facet classification from the raw
/// lists. Throws std::invalid_argument on structural errors (out-of-range
/// indices, malformed glue); geometric axiom violations are left to validate().
void finalize_complex(Complex& c);

struct Violation {
  std::string rule;     // stable machine-readable rule name
  std::string message;  // human-readable detail with element ids
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Checks every complex axiom: planarity, distinct hyperplanes, closure
/// intersections confined to boundaries, connectivity, facet classification,
/// ramification order, corner exclusion. Violations are report entries.
ValidationReport validate(const Complex& c);

/// Branch ids incident to a ramification edge.
std::vector<int> incident_branches(const Complex& c, int ram_edge);

/// Same lookup addressed by facet; throws if the facet is not glued.
std::vector<int> incident_branches(const Complex& c, FacetRef facet);

/// Canonical identification chart at a point on the ramification set: one
/// isometry per incident branch into the model half-space, normal coordinate
/// first, all sharing the mapped edge {x1 = 0}.
struct Chart {
  Vec3 base;
  int ram_edge = -1;
  struct Entry {
    int branch;
    Iso2 to_model;  // branch-local -> (x1, x') with x1 >= 0 inside the branch
  };
  std::vector<Entry> entries;  // entry order realizes the index bijection
};

Chart canonical_chart(const Complex& c, const Vec3& x);

/// Unfolds two branches incident to an edge into one plane: both maps agree on
/// the edge and send the branches to opposite sides of it.
struct UnfoldPair {
  Iso2 first;   // branch j local -> plane, j side has xi >= 0
  Iso2 second;  // branch k local -> plane, k side has xi <= 0
};

UnfoldPair unfold_pair(const Complex& c, int ram_edge, int branch_j, int branch_k);

/// Inward unit normal of a facet in branch-local coordinates.
Vec2 facet_inward_normal(const Complex& c, int branch, int facet);

/// Locates a point on the complex: all branches whose closure contains p.
struct PointLocation {
  int branch;
  Vec2 local;
};
std::vector<PointLocation> locate_point(const Complex& c, const Vec3& p, double tol);

/// Ram edge within tol of p, or -1.
int locate_on_ramification(const Complex& c, const Vec3& p, double tol);

/// Deterministic sample points covering a branch closure (vertices, facet
/// midpoints, centroid mixes, a coarse interior grid), in local coordinates.
std::vector<Vec2> closure_sample_points(const Branch& b);

/// Bitwise structural hash over vertices, branches, glue and boundary; used to
/// tie output files back to the complex they were computed on.
std::uint64_t structural_hash(const Complex& c);

}  // namespace lep
