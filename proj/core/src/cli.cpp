#include "lep/cli.hpp"

#include <fstream>
#include <memory>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lep/dirichlet.hpp"
#include "lep/io.hpp"
#include "lep/oracle.hpp"
#include "lep/viscosity.hpp"

namespace lep {

namespace {

BranchPoint parse_point(const std::string& s, const Complex& c) {
  // "<branch>:<u>[,<v>]" in branch-local coordinates.
  std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("point must look like <branch>:<u>[,<v>], got '" + s + "'");
  BranchPoint p;
  p.branch = std::stoi(s.substr(0, colon));
  std::string coords = s.substr(colon + 1);
  std::size_t comma = coords.find(',');
  p.local.x = std::stod(coords.substr(0, comma));
  p.local.y = comma == std::string::npos ? 0.0 : std::stod(coords.substr(comma + 1));
  if (p.branch < 0 || p.branch >= int(c.branches.size()))
    throw std::invalid_argument("point references unknown branch " + std::to_string(p.branch));
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_validate(const std::string& path) {
  LepFile file = load_complex_file(path);
  ValidationReport rep = validate(file.complex);
  for (const Violation& v : rep.violations)
    std::cout << "violation " << v.rule << ": " << v.message << "\n";
  if (rep.valid) {
    std::cout << "valid: " << file.complex.branches.size() << " branches, "
              << file.complex.ram_edges.size() << " ramification edges\n";
    return 0;
  }
  std::cout << "invalid (" << rep.violations.size() << " violations)\n";
  return 1;
}

// The graph and Hamiltonian hold pointers into the complex, so the parsed
// file lives on the heap where moves keep its address stable.
struct Loaded {
  std::unique_ptr<LepFile> file;
  std::unique_ptr<HamiltonianFamily> H;
  MetricGraph graph;
};

Loaded load_and_build(const std::string& path, const std::string& f_spec,
                      const std::string& kind, const MeshParams& mesh) {
  Loaded out;
  out.file = std::make_unique<LepFile>(load_complex_file(path));
  ValidationReport rep = validate(out.file->complex);
  if (!rep.valid) {
    std::ostringstream os;
    os << "complex fails validation (" << rep.violations.size()
       << " violations); run `lep validate`";
    throw std::runtime_error(os.str());
  }
  out.H = std::make_unique<HamiltonianFamily>(make_hamiltonian(*out.file, f_spec, kind));
  out.graph = build_metric_graph(out.file->complex, *out.H, mesh);
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
  RunConfig defaults = RunConfig::from_env();

  CLI::App app{"Action distances and Dirichlet solutions of eikonal equations on polygonal ramified complexes"};
  app.require_subcommand(1);
  // --h is the mesh size flag, so help only answers to --help.
  app.set_help_flag("--help", "print help");

  // Shared options.
  std::string complex_path, f_spec = "file", g_spec = "file", kind = "eikonal";
  double h = defaults.h;
  int ring = defaults.ring, steiner = defaults.steiner;
  std::uint64_t seed = defaults.seed;

  auto add_mesh_opts = [&](CLI::App* cmd) {
    cmd->add_option("--h", h, "target mesh edge length");
    cmd->add_option("--ring", ring, "graph connectivity order");
    cmd->add_option("--steiner", steiner, "facet Steiner refinement");
    cmd->add_option("--seed", seed, "random seed recorded in outputs");
  };
  auto add_field_opts = [&](CLI::App* cmd, bool with_g) {
    cmd->add_option("--f", f_spec, "weight field: const:<c>, poly:..., file");
    cmd->add_option("--hamiltonian", kind, "eikonal|generic");
    if (with_g) cmd->add_option("--g", g_spec, "boundary data: const:<c>, file");
  };

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check the complex axioms");
  validate_cmd->set_help_flag("--help", "print help");
  std::string validate_path;
  validate_cmd->add_option("complex", validate_path, "complex file (.lep)")->required();

  // distance
  auto* dist_cmd = app.add_subcommand("distance", "action distance between two points");
  dist_cmd->set_help_flag("--help", "print help");
  std::string from_str, to_str;
  dist_cmd->add_option("--complex", complex_path, "complex file (.lep)")->required();
  dist_cmd->add_option("--from", from_str, "source point <branch>:<u>[,<v>]")->required();
  dist_cmd->add_option("--to", to_str, "target point <branch>:<u>[,<v>]")->required();
  add_mesh_opts(dist_cmd);
  add_field_opts(dist_cmd, false);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve the Dirichlet problem");
  solve_cmd->set_help_flag("--help", "print help");
  std::string out_csv = "u.csv", mesh_out;
  bool override_hyp = false;
  std::string solve_positional;
  solve_cmd->add_option("--complex", complex_path, "complex file (.lep)");
  solve_cmd->add_option("complex_file", solve_positional, "complex file (.lep)");
  solve_cmd->add_option("--out", out_csv, "output CSV path");
  solve_cmd->add_option("--mesh-out", mesh_out, "also export <base>.obj and <base>.scalars");
  solve_cmd->add_flag("--override-hypotheses", override_hyp,
                      "solve even when a hypothesis check fails");
  add_mesh_opts(solve_cmd);
  add_field_opts(solve_cmd, true);

  // check
  auto* check_cmd = app.add_subcommand("check", "verify viscosity conditions on a field");
  check_cmd->set_help_flag("--help", "print help");
  std::string u_csv, u2_csv, mode = "sub", tol_str = "auto";
  bool exclude_sigma = false;
  check_cmd->add_option("--complex", complex_path, "complex file (.lep)")->required();
  check_cmd->add_option("--u", u_csv, "field CSV")->required();
  check_cmd->add_option("--u2", u2_csv, "second field CSV (compare mode)");
  check_cmd->add_option("--mode", mode, "sub|super|lipschitz|compare")->required();
  check_cmd->add_option("--tol", tol_str, "tolerance or 'auto'");
  check_cmd->add_flag("--exclude-sigma", exclude_sigma, "interior sites only (super mode)");
  add_field_opts(check_cmd, false);

  // export
  auto* export_cmd = app.add_subcommand("export", "re-export a field");
  export_cmd->set_help_flag("--help", "print help");
  std::string format = "csv", out_base = "field";
  export_cmd->add_option("--complex", complex_path, "complex file (.lep)")->required();
  export_cmd->add_option("--u", u_csv, "field CSV")->required();
  export_cmd->add_option("--format", format, "csv|mesh");
  export_cmd->add_option("--out", out_base, "output path (csv) or base name (mesh)");
  add_field_opts(export_cmd, false);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "independent distance oracles");
  oracle_cmd->set_help_flag("--help", "print help");
  std::string oracle_mode = "unfold";
  int depth = 2;
  oracle_cmd->add_option("--complex", complex_path, "complex file (.lep)")->required();
  oracle_cmd->add_option("--mode", oracle_mode, "unfold|brute");
  oracle_cmd->add_option("--from", from_str, "source point")->required();
  oracle_cmd->add_option("--to", to_str, "target point")->required();
  oracle_cmd->add_option("--depth", depth, "free vertices per branch (brute mode)");
  add_field_opts(oracle_cmd, false);

  std::vector<const char*> argv;
  argv.push_back("lep");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_path);

    MeshParams mesh{h, steiner, ring};

    if (dist_cmd->parsed()) {
      Loaded l = load_and_build(complex_path, f_spec, kind, mesh);
      BranchPoint a = parse_point(from_str, l.file->complex);
      BranchPoint b = parse_point(to_str, l.file->complex);
      std::cout << format_double(graph_distance(l.graph, *l.H, a, b)) << "\n";
      return 0;
    }

    if (solve_cmd->parsed()) {
      if (complex_path.empty()) complex_path = solve_positional;
      if (complex_path.empty()) {
        std::cerr << "solve: missing complex file\n";
        return 2;
      }
      Loaded l = load_and_build(complex_path, f_spec, kind, mesh);
      DirichletProblem prob{&l.file->complex, l.H.get(), make_boundary_data(*l.file, g_spec), mesh,
                            override_hyp, seed};
      SolveResult res;
      try {
        res = solve_dirichlet(prob, l.graph);
      } catch (const HypothesisError& e) {
        std::cerr << "hypothesis check failed: " << e.what() << "\n";
        return 1;
      }
      for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
      write_file(out_csv, write_field_csv(l.graph, res.field));
      std::cout << "wrote " << out_csv << " (" << l.graph.nodes.size() << " nodes)\n";
      if (!mesh_out.empty()) {
        MeshExport me = export_mesh(l.graph, res.field);
        if (me.skipped_nodes > 0)
          std::cerr << "warning: mesh export skipped " << me.skipped_nodes
                    << " non-finite nodes\n";
        write_file(mesh_out + ".obj", me.obj);
        write_file(mesh_out + ".scalars", me.scalars);
        std::cout << "wrote " << mesh_out << ".obj and " << mesh_out << ".scalars\n";
      }
      return 0;
    }

    if (check_cmd->parsed() || export_cmd->parsed()) {
      // Rebuild the graph the field was computed on from its provenance.
      SolutionField field = read_field_csv(read_file(u_csv), u_csv);
      MeshParams fmesh{field.meta.h > 0 ? field.meta.h : h,
                       field.meta.steiner > 0 ? field.meta.steiner : steiner,
                       field.meta.ring > 0 ? field.meta.ring : ring};
      Loaded l = load_and_build(complex_path, f_spec, kind, fmesh);
      if (field.meta.complex_hash != 0 && field.meta.complex_hash != l.graph.complex_hash) {
        std::cerr << "field provenance does not match the complex file\n";
        return 2;
      }
      if (field.values.size() != l.graph.nodes.size()) {
        std::cerr << "field has " << field.values.size() << " nodes, graph has "
                  << l.graph.nodes.size() << "\n";
        return 2;
      }

      if (export_cmd->parsed()) {
        if (format == "csv") {
          write_file(out_base, write_field_csv(l.graph, field));
          std::cout << "wrote " << out_base << "\n";
        } else if (format == "mesh") {
          MeshExport me = export_mesh(l.graph, field);
          if (me.skipped_nodes > 0)
            std::cerr << "warning: mesh export skipped " << me.skipped_nodes
                      << " non-finite nodes\n";
          write_file(out_base + ".obj", me.obj);
          write_file(out_base + ".scalars", me.scalars);
          std::cout << "wrote " << out_base << ".obj and " << out_base << ".scalars\n";
        } else {
          std::cerr << "unknown export format '" << format << "'\n";
          return 2;
        }
        return 0;
      }

      CheckOptions opts;
      if (tol_str != "auto") opts.tol = std::stod(tol_str);
      opts.exclude_sigma = exclude_sigma;

      if (mode == "sub" || mode == "super") {
        CheckReport rep = mode == "sub" ? check_subsolution(l.graph, *l.H, field.values, opts)
                                        : check_supersolution(l.graph, *l.H, field.values, opts);
        for (const SiteRecord& s : rep.sites)
          if (!s.pass)
            std::cout << "fail node " << s.node << " residual " << format_double(s.residual)
                      << (s.note.empty() ? "" : " (" + s.note + ")") << "\n";
        std::cout << (mode == "sub" ? "subsolution: " : "supersolution: ") << rep.summary()
                  << "\n";
        return rep.all_pass() ? 0 : 1;
      }
      if (mode == "lipschitz") {
        LipschitzReport rep = check_lipschitz(l.graph, field.values, l.H->lipschitz_bound());
        std::cout << "lipschitz: max ratio " << format_double(rep.max_ratio) << " bound "
                  << format_double(rep.bound) << " -> " << (rep.pass ? "pass" : "FAIL") << "\n";
        return rep.pass ? 0 : 1;
      }
      if (mode == "compare") {
        if (u2_csv.empty()) {
          std::cerr << "compare mode needs --u2\n";
          return 2;
        }
        SolutionField other = read_field_csv(read_file(u2_csv), u2_csv);
        if (other.values.size() != field.values.size()) {
          std::cerr << "fields have different sizes\n";
          return 2;
        }
        CompareReport rep = compare_fields(l.graph, field.values, other.values,
                                           opts.tol >= 0 ? opts.tol : 1e-9);
        if (!rep.precondition_met) {
          std::cout << "compare: precondition unmet, no verdict\n";
          return 1;
        }
        std::cout << "compare: max violation " << format_double(rep.max_violation) << " -> "
                  << (rep.pass ? "pass" : "FAIL") << "\n";
        return rep.pass ? 0 : 1;
      }
      std::cerr << "unknown check mode '" << mode << "'\n";
      return 2;
    }

    if (oracle_cmd->parsed()) {
      LepFile file = load_complex_file(complex_path);
      HamiltonianFamily H = make_hamiltonian(file, f_spec, kind);
      BranchPoint a = parse_point(from_str, file.complex);
      BranchPoint b = parse_point(to_str, file.complex);
      if (oracle_mode == "unfold") {
        std::cout << format_double(min_unfold_distance(file.complex, a, b)) << "\n";
        return 0;
      }
      if (oracle_mode == "brute") {
        BruteForceOptions opts;
        opts.depth = depth;
        std::cout << format_double(brute_force_action(file.complex, H, a, b, opts)) << "\n";
        return 0;
      }
      std::cerr << "unknown oracle mode '" << oracle_mode << "'\n";
      return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace lep
