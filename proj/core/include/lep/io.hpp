#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lep/complex.hpp"
#include "lep/dirichlet.hpp"
#include "lep/hamiltonian.hpp"
#include "lep/metric_graph.hpp"

namespace lep {

// Textual complex format (canonical extension .lep). Line oriented, hash
// comments, sections closed by `end`:
//
//   lep 1
//   dim <ambient_dim> <branch_dim>
//   vertices
//     <id> <x> <y> [<z>]
//   end
//   branch <id>
//     loop <v0> <v1> ... | segment <v0> <v1>
//   end
//   glue <id>
//     facet <branch>:<facet>
//   end
//   boundary
//     facet <branch>:<facet>
//     vertex <vid>
//   end
//   field f
//     branch <id> const <c>
//     branch <id> poly <coef> <pu> <pv> [...]
//     samples            (followed by "<vid> <value>" lines)
//   end
//   field g
//     const <c> | samples (followed by "<vid> <value>" lines)
//   end
//
// Coordinates are serialized as shortest round-trip decimals, so
// parse -> serialize -> parse is the identity on the in-memory complex.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, int col, const std::string& msg);
  int line;
  int col;
};

struct LepFile {
  Complex complex;

  bool has_f = false;
  bool f_is_samples = false;
  std::vector<WeightField> f_fields;  // per branch, when not sample based
  std::vector<double> f_vertex_values;

  bool has_g = false;
  bool g_is_samples = false;
  double g_const = 0;
  std::vector<double> g_vertex_values;
};

/// Parses and finalizes a complex; does not run axiom validation.
LepFile parse_complex(std::string_view text, const std::string& filename = "<memory>");

std::string serialize_complex(const LepFile& f);

LepFile load_complex_file(const std::string& path);

/// Shortest round-trip decimal of a double.
std::string format_double(double v);

// ---- weight / boundary specs -------------------------------------------------

/// "const:<c>", "poly:<coef>,<pu>,<pv>[;...]" (applied to every branch), or
/// "file" to take the field block of the .lep file.
HamiltonianFamily make_hamiltonian(const LepFile& f, const std::string& f_spec,
                                   const std::string& kind = "eikonal");

/// "const:<c>" or "file".
BoundaryData make_boundary_data(const LepFile& f, const std::string& g_spec);

// ---- field CSV -----------------------------------------------------------------

/// CSV with provenance header; columns node,branch,u1,u2,x,y,z,value.
/// Infinite values are written as `inf`. Byte-deterministic.
std::string write_field_csv(const MetricGraph& g, const SolutionField& field);

/// Reads the values and provenance back. Throws on malformed input.
SolutionField read_field_csv(std::string_view text, const std::string& filename = "<memory>");

// ---- mesh export ----------------------------------------------------------------

struct MeshExport {
  std::string obj;      // OBJ-style vertex/face list over finite nodes
  std::string scalars;  // parallel per-vertex values
  int skipped_nodes = 0;
};

MeshExport export_mesh(const MetricGraph& g, const SolutionField& field);

// ---- run configuration -----------------------------------------------------------

struct RunConfig {
  double h = 0.03125;
  int ring = 2;
  int steiner = 1;
  double tol = -1;  // auto
  std::uint64_t seed = 1;

  MeshParams mesh() const { return {h, steiner, ring}; }

  /// Defaults, overlaid with the config file named by $LEP_CONFIG when set.
  static RunConfig from_env();
  void load(const std::string& path);
};

std::string tool_version();

}  // namespace lep
