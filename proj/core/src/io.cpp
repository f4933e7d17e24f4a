#include "lep/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

namespace lep {

std::string tool_version() { return "lep 0.1.0"; }

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ParseError::ParseError(const std::string& file, int l, int c, const std::string& msg)
    : std::runtime_error(file + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      col(c) {}

namespace {

struct Token {
  std::string text;
  int col;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    lineno++;
    Line out{lineno, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == '#') break;
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '#')
        ++i;
      out.tokens.push_back({std::string(line.substr(start, i - start)), int(start) + 1});
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

class Parser {
 public:
  Parser(std::string_view text, std::string filename)
      : file_(std::move(filename)), lines_(tokenize(text)) {}

  LepFile run() {
    expect_header();
    while (cur_ < lines_.size()) {
      const Line& l = line();
      const std::string& kw = l.tokens[0].text;
      if (kw == "vertices") {
        parse_vertices();
      } else if (kw == "branch") {
        parse_branch();
      } else if (kw == "glue") {
        parse_glue();
      } else if (kw == "boundary") {
        parse_boundary();
      } else if (kw == "field") {
        parse_field();
      } else {
        fail(l, 0, "unknown section '" + kw + "'");
      }
    }
    finalize();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& msg) const {
    int col = tok < l.tokens.size() ? l.tokens[tok].col : 1;
    throw ParseError(file_, l.number, col, msg);
  }

  const Line& line() const { return lines_[cur_]; }

  const Line& next_line(const char* what) {
    if (++cur_ >= lines_.size())
      throw ParseError(file_, lines_.empty() ? 1 : lines_.back().number, 1,
                       std::string("unexpected end of file, expected ") + what);
    return line();
  }

  long long parse_int(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) fail(l, tok, "missing integer");
    const std::string& s = l.tokens[tok].text;
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      fail(l, tok, "expected integer, got '" + s + "'");
    return v;
  }

  double parse_num(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) fail(l, tok, "missing number");
    const std::string& s = l.tokens[tok].text;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail(l, tok, "expected number, got '" + s + "'");
    return v;
  }

  FacetRef parse_facet_ref(const Line& l, std::size_t tok) const {
    if (tok >= l.tokens.size()) fail(l, tok, "missing facet reference");
    const std::string& s = l.tokens[tok].text;
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) fail(l, tok, "facet reference must look like <branch>:<facet>");
    try {
      return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
      fail(l, tok, "malformed facet reference '" + s + "'");
    }
  }

  void expect_header() {
    if (lines_.empty()) throw ParseError(file_, 1, 1, "empty file");
    const Line& l0 = line();
    if (l0.tokens[0].text != "lep" || l0.tokens.size() != 2 || l0.tokens[1].text != "1")
      fail(l0, 0, "expected header 'lep 1'");
    const Line& l1 = next_line("'dim'");
    if (l1.tokens[0].text != "dim" || l1.tokens.size() != 3) fail(l1, 0, "expected 'dim <d> <n>'");
    out_.complex.ambient_dim = int(parse_int(l1, 1));
    out_.complex.branch_dim = int(parse_int(l1, 2));
    if (out_.complex.ambient_dim < 2 || out_.complex.ambient_dim > 3)
      fail(l1, 1, "ambient dimension must be 2 or 3");
    if (out_.complex.branch_dim < 1 || out_.complex.branch_dim > 2 ||
        out_.complex.branch_dim >= out_.complex.ambient_dim)
      fail(l1, 2, "branch dimension must be 1 or 2 and below the ambient dimension");
    ++cur_;
  }

  void parse_vertices() {
    if (line().tokens.size() != 1) fail(line(), 1, "'vertices' takes no arguments");
    while (true) {
      const Line& l = next_line("vertex or 'end'");
      if (l.tokens[0].text == "end") {
        ++cur_;
        return;
      }
      long long id = parse_int(l, 0);
      if (id != (long long)out_.complex.vertices.size())
        fail(l, 0, "vertex ids must be consecutive starting at 0");
      std::size_t want = 1 + std::size_t(out_.complex.ambient_dim);
      if (l.tokens.size() != want)
        fail(l, l.tokens.size() - 1, "vertex needs exactly " +
                                         std::to_string(out_.complex.ambient_dim) +
                                         " coordinates");
      Vec3 v{parse_num(l, 1), parse_num(l, 2), 0};
      if (out_.complex.ambient_dim == 3) v.z = parse_num(l, 3);
      out_.complex.vertices.push_back(v);
    }
  }

  void parse_branch() {
    const Line& head = line();
    if (head.tokens.size() != 2) fail(head, 1, "expected 'branch <id>'");
    long long id = parse_int(head, 1);
    if (id != (long long)out_.complex.branches.size())
      fail(head, 1, "branch ids must be consecutive starting at 0");
    Branch b;
    b.id = int(id);
    const Line& body = next_line("'loop' or 'segment'");
    const std::string& kw = body.tokens[0].text;
    if (kw == "loop") {
      if (out_.complex.branch_dim != 2) fail(body, 0, "'loop' needs branch dimension 2");
      for (std::size_t i = 1; i < body.tokens.size(); ++i)
        b.vertex_ids.push_back(int(parse_int(body, i)));
      if (b.vertex_ids.size() < 3) fail(body, 0, "a loop needs at least three vertices");
    } else if (kw == "segment") {
      if (out_.complex.branch_dim != 1) fail(body, 0, "'segment' needs branch dimension 1");
      if (body.tokens.size() != 3) fail(body, 0, "expected 'segment <v0> <v1>'");
      b.vertex_ids = {int(parse_int(body, 1)), int(parse_int(body, 2))};
    } else {
      fail(body, 0, "expected 'loop' or 'segment'");
    }
    const Line& tail = next_line("'end'");
    if (tail.tokens[0].text != "end") fail(tail, 0, "branch block must end with 'end'");
    ++cur_;
    out_.complex.branches.push_back(std::move(b));
  }

  void parse_glue() {
    const Line& head = line();
    if (head.tokens.size() != 2) fail(head, 1, "expected 'glue <id>'");
    long long id = parse_int(head, 1);
    if (id != (long long)out_.complex.ram_edges.size())
      fail(head, 1, "glue ids must be consecutive starting at 0");
    RamEdge e;
    e.id = int(id);
    while (true) {
      const Line& l = next_line("'facet' or 'end'");
      if (l.tokens[0].text == "end") {
        ++cur_;
        break;
      }
      if (l.tokens[0].text != "facet" || l.tokens.size() != 2)
        fail(l, 0, "expected 'facet <branch>:<facet>'");
      FacetRef f = parse_facet_ref(l, 1);
      e.incident.push_back({f.branch, f.facet, {}});
    }
    if (e.incident.empty())
      throw ParseError(file_, head.number, 1, "glue block has no facets");
    out_.complex.ram_edges.push_back(std::move(e));
  }

  void parse_boundary() {
    if (line().tokens.size() != 1) fail(line(), 1, "'boundary' takes no arguments");
    while (true) {
      const Line& l = next_line("'facet', 'vertex' or 'end'");
      if (l.tokens[0].text == "end") {
        ++cur_;
        return;
      }
      if (l.tokens[0].text == "facet" && l.tokens.size() == 2) {
        out_.complex.boundary_facets.push_back(parse_facet_ref(l, 1));
      } else if (l.tokens[0].text == "vertex" && l.tokens.size() == 2) {
        out_.complex.boundary_vertices.push_back(int(parse_int(l, 1)));
      } else {
        fail(l, 0, "expected 'facet <branch>:<facet>' or 'vertex <id>'");
      }
    }
  }

  void parse_field() {
    const Line& head = line();
    if (head.tokens.size() != 2 ||
        (head.tokens[1].text != "f" && head.tokens[1].text != "g"))
      fail(head, 1, "expected 'field f' or 'field g'");
    bool is_f = head.tokens[1].text == "f";
    if ((is_f && out_.has_f) || (!is_f && out_.has_g))
      fail(head, 0, "duplicate field block");
    (is_f ? out_.has_f : out_.has_g) = true;
    bool in_samples = false;
    std::map<int, double> samples;
    std::map<int, WeightField> branch_fields;
    double g_const = 0;
    bool g_const_seen = false;
    while (true) {
      const Line& l = next_line("field entry or 'end'");
      const std::string& kw = l.tokens[0].text;
      if (kw == "end") {
        ++cur_;
        break;
      }
      if (in_samples) {
        if (l.tokens.size() != 2) fail(l, 0, "expected '<vertex> <value>'");
        samples[int(parse_int(l, 0))] = parse_num(l, 1);
        continue;
      }
      if (kw == "samples") {
        if (!branch_fields.empty() || g_const_seen)
          fail(l, 0, "samples cannot be mixed with other entries");
        in_samples = true;
      } else if (is_f && kw == "branch") {
        if (l.tokens.size() < 3) fail(l, 0, "expected 'branch <id> const|poly ...'");
        int id = int(parse_int(l, 1));
        const std::string& kind = l.tokens[2].text;
        if (kind == "const") {
          if (l.tokens.size() != 4) fail(l, 3, "expected 'const <value>'");
          branch_fields[id] = WeightField::constant(parse_num(l, 3));
        } else if (kind == "poly") {
          if (l.tokens.size() < 6 || (l.tokens.size() - 3) % 3 != 0)
            fail(l, 3, "poly needs coefficient triples '<coef> <pu> <pv>'");
          std::vector<Monomial> ms;
          for (std::size_t i = 3; i < l.tokens.size(); i += 3)
            ms.push_back({parse_num(l, i), int(parse_int(l, i + 1)), int(parse_int(l, i + 2))});
          branch_fields[id] = WeightField::polynomial(std::move(ms));
        } else {
          fail(l, 2, "unknown weight kind '" + kind + "'");
        }
      } else if (!is_f && kw == "const") {
        if (l.tokens.size() != 2) fail(l, 1, "expected 'const <value>'");
        g_const = parse_num(l, 1);
        g_const_seen = true;
      } else {
        fail(l, 0, "unknown field entry '" + kw + "'");
      }
    }
    std::size_t nv = out_.complex.vertices.size();
    if (in_samples) {
      std::vector<double> vals(nv, 0.0);
      for (auto [vid, val] : samples) {
        if (vid < 0 || std::size_t(vid) >= nv)
          throw ParseError(file_, head.number, 1,
                           "sample references unknown vertex " + std::to_string(vid));
        vals[std::size_t(vid)] = val;
      }
      if (is_f) {
        if (samples.size() != nv)
          throw ParseError(file_, head.number, 1, "field f samples must cover every vertex");
        out_.f_is_samples = true;
        out_.f_vertex_values = std::move(vals);
      } else {
        out_.g_is_samples = true;
        out_.g_vertex_values = std::move(vals);
      }
      return;
    }
    if (is_f) {
      out_.f_fields.assign(out_.complex.branches.size(), WeightField::constant(1.0));
      for (auto& [id, wf] : branch_fields) {
        if (id < 0 || std::size_t(id) >= out_.f_fields.size())
          throw ParseError(file_, head.number, 1,
                           "field references unknown branch " + std::to_string(id));
        out_.f_fields[std::size_t(id)] = wf;
      }
      if (branch_fields.size() != out_.complex.branches.size())
        throw ParseError(file_, head.number, 1, "field f must list every branch");
    } else {
      if (!g_const_seen) throw ParseError(file_, head.number, 1, "field g needs 'const' or 'samples'");
      out_.g_const = g_const;
    }
  }

  void finalize() {
    // Vertices may come after branches in principle; require the usual order.
    if (out_.complex.vertices.empty())
      throw ParseError(file_, 1, 1, "missing vertices section");
    finalize_complex(out_.complex);
  }

  std::string file_;
  std::vector<Line> lines_;
  std::size_t cur_ = 0;
  LepFile out_;
};

}  // namespace

LepFile parse_complex(std::string_view text, const std::string& filename) {
  return Parser(text, filename).run();
}

LepFile load_complex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str(), path);
}

std::string serialize_complex(const LepFile& f) {
  const Complex& c = f.complex;
  std::ostringstream os;
  os << "lep 1\n";
  os << "dim " << c.ambient_dim << " " << c.branch_dim << "\n";
  os << "vertices\n";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    os << "  " << i << " " << format_double(c.vertices[i].x) << " "
       << format_double(c.vertices[i].y);
    if (c.ambient_dim == 3) os << " " << format_double(c.vertices[i].z);
    os << "\n";
  }
  os << "end\n";
  for (const Branch& b : c.branches) {
    os << "branch " << b.id << "\n  " << (b.dim() == 1 ? "segment" : "loop");
    for (int v : b.vertex_ids) os << " " << v;
    os << "\nend\n";
  }
  for (const RamEdge& e : c.ram_edges) {
    os << "glue " << e.id << "\n";
    for (const auto& inc : e.incident) os << "  facet " << inc.branch << ":" << inc.facet << "\n";
    os << "end\n";
  }
  os << "boundary\n";
  for (const FacetRef& fr : c.boundary_facets)
    os << "  facet " << fr.branch << ":" << fr.facet << "\n";
  for (int v : c.boundary_vertices) os << "  vertex " << v << "\n";
  os << "end\n";
  if (f.has_f) {
    os << "field f\n";
    if (f.f_is_samples) {
      os << "  samples\n";
      for (std::size_t i = 0; i < f.f_vertex_values.size(); ++i)
        os << "  " << i << " " << format_double(f.f_vertex_values[i]) << "\n";
    } else {
      for (std::size_t j = 0; j < f.f_fields.size(); ++j) {
        const WeightField& wf = f.f_fields[j];
        os << "  branch " << j << " ";
        if (wf.kind == WeightField::Kind::Constant) {
          os << "const " << format_double(wf.value);
        } else {
          os << "poly";
          for (const Monomial& m : wf.monomials)
            os << " " << format_double(m.coef) << " " << m.pu << " " << m.pv;
        }
        os << "\n";
      }
    }
    os << "end\n";
  }
  if (f.has_g) {
    os << "field g\n";
    if (f.g_is_samples) {
      os << "  samples\n";
      for (std::size_t i = 0; i < f.g_vertex_values.size(); ++i)
        os << "  " << i << " " << format_double(f.g_vertex_values[i]) << "\n";
    } else {
      os << "  const " << format_double(f.g_const) << "\n";
    }
    os << "end\n";
  }
  return os.str();
}

// ---- weight / boundary specs ---------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

}  // namespace

HamiltonianFamily make_hamiltonian(const LepFile& f, const std::string& f_spec,
                                   const std::string& kind) {
  const Complex& c = f.complex;
  std::vector<WeightField> fields;
  std::vector<double> vertex_values;
  if (f_spec == "file" || f_spec.empty()) {
    if (!f.has_f) {
      fields.assign(c.branches.size(), WeightField::constant(1.0));
    } else if (f.f_is_samples) {
      fields.assign(c.branches.size(), WeightField::samples());
      vertex_values = f.f_vertex_values;
    } else {
      fields = f.f_fields;
    }
  } else if (f_spec.rfind("const:", 0) == 0) {
    fields.assign(c.branches.size(), WeightField::constant(std::stod(f_spec.substr(6))));
  } else if (f_spec.rfind("poly:", 0) == 0) {
    std::vector<Monomial> ms;
    for (const std::string& term : split(f_spec.substr(5), ';')) {
      std::vector<std::string> parts = split(term, ',');
      if (parts.size() != 3) throw std::invalid_argument("bad poly term '" + term + "'");
      ms.push_back({std::stod(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])});
    }
    fields.assign(c.branches.size(), WeightField::polynomial(ms));
  } else {
    throw std::invalid_argument("unknown weight spec '" + f_spec + "' (const:<c>, poly:..., file)");
  }
  if (kind == "eikonal")
    return HamiltonianFamily::eikonal(c, std::move(fields), std::move(vertex_values));
  if (kind == "generic") {
    // Same weighted family routed through the numeric generic path.
    auto base = std::make_shared<HamiltonianFamily>(
        HamiltonianFamily::eikonal(c, std::move(fields), std::move(vertex_values)));
    return HamiltonianFamily::generic(
        c, [base](int j, const Vec2& x, const Vec2& p) { return base->value(j, x, p); }, true, 16.0);
  }
  throw std::invalid_argument("unknown hamiltonian kind '" + kind + "'");
}

BoundaryData make_boundary_data(const LepFile& f, const std::string& g_spec) {
  if (g_spec == "file" || g_spec.empty()) {
    if (!f.has_g) return BoundaryData::constant(0.0);
    if (f.g_is_samples) return BoundaryData::samples(f.g_vertex_values);
    return BoundaryData::constant(f.g_const);
  }
  if (g_spec.rfind("const:", 0) == 0) return BoundaryData::constant(std::stod(g_spec.substr(6)));
  throw std::invalid_argument("unknown boundary spec '" + g_spec + "' (const:<c> or file)");
}

// ---- field CSV ---------------------------------------------------------------------

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int field_branch(const MetricGraph& g, int node) {
  const GraphNode& n = g.nodes[std::size_t(node)];
  if (n.branch >= 0) return n.branch;
  if (n.on_sigma()) {
    auto inc = incident_branches(*g.complex, n.ram_edge);
    return inc.empty() ? 0 : inc.front();
  }
  return 0;
}

}  // namespace

std::string write_field_csv(const MetricGraph& g, const SolutionField& field) {
  std::ostringstream os;
  const FieldMeta& m = field.meta;
  os << "# " << tool_version() << "\n";
  os << "# complex-hash " << hex64(m.complex_hash) << "\n";
  os << "# hamiltonian " << m.hamiltonian << "\n";
  os << "# g " << m.boundary_data << "\n";
  os << "# mesh h=" << format_double(m.h) << " ring=" << m.ring << " steiner=" << m.steiner
     << "\n";
  os << "# seed " << m.seed << "\n";
  if (m.hypotheses_overridden) os << "# override-hypotheses 1\n";
  os << "node,branch,u1,u2,x,y,z,value\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    int br = field_branch(g, int(i));
    Vec2 local = g.local_of(br, int(i));
    const Vec3& p = g.nodes[i].pos;
    double v = field.values[i];
    os << i << "," << br << "," << format_double(local.x) << "," << format_double(local.y) << ","
       << format_double(p.x) << "," << format_double(p.y) << "," << format_double(p.z) << ",";
    if (std::isfinite(v))
      os << format_double(v);
    else
      os << "inf";
    os << "\n";
  }
  return os.str();
}

SolutionField read_field_csv(std::string_view text, const std::string& filename) {
  SolutionField f;
  int lineno = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                    : eol - pos));
    lineno++;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      std::string key;
      is >> key;
      if (key == "complex-hash") {
        std::string hex;
        is >> hex;
        f.meta.complex_hash = std::strtoull(hex.c_str(), nullptr, 16);
      } else if (key == "hamiltonian") {
        std::string rest;
        std::getline(is, rest);
        f.meta.hamiltonian = rest.empty() ? "" : rest.substr(1);
      } else if (key == "g") {
        is >> f.meta.boundary_data;
      } else if (key == "mesh") {
        std::string kv;
        while (is >> kv) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) continue;
          std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
          if (k == "h") f.meta.h = std::stod(v);
          if (k == "ring") f.meta.ring = std::stoi(v);
          if (k == "steiner") f.meta.steiner = std::stoi(v);
        }
      } else if (key == "seed") {
        is >> f.meta.seed;
      } else if (key == "override-hypotheses") {
        f.meta.hypotheses_overridden = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "node,branch,u1,u2,x,y,z,value")
        throw ParseError(filename, lineno, 1, "unexpected CSV column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols = split(line, ',');
    if (cols.size() != 8) throw ParseError(filename, lineno, 1, "expected 8 CSV columns");
    double v = cols[7] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(cols[7]);
    std::size_t id = std::stoul(cols[0]);
    if (id != f.values.size()) throw ParseError(filename, lineno, 1, "node ids must be in order");
    f.values.push_back(v);
  }
  if (!header_seen) throw ParseError(filename, lineno, 1, "missing CSV column header");
  return f;
}

MeshExport export_mesh(const MetricGraph& g, const SolutionField& field) {
  MeshExport out;
  std::ostringstream obj, sc;
  for (std::ostringstream* os : {&obj, &sc}) {
    *os << "# " << tool_version() << "\n";
    *os << "# complex-hash " << hex64(field.meta.complex_hash) << "\n";
    *os << "# hamiltonian " << field.meta.hamiltonian << "\n";
    *os << "# mesh h=" << format_double(field.meta.h) << " ring=" << field.meta.ring
        << " steiner=" << field.meta.steiner << "\n";
    *os << "# seed " << field.meta.seed << "\n";
  }
  std::vector<int> remap(g.nodes.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!std::isfinite(field.values[i])) {
      out.skipped_nodes++;
      continue;
    }
    remap[i] = next++;
    const Vec3& p = g.nodes[i].pos;
    obj << "v " << format_double(p.x) << " " << format_double(p.y) << " " << format_double(p.z)
        << "\n";
    sc << format_double(field.values[i]) << "\n";
  }
  for (const auto& tris : g.branch_tris)
    for (const auto& t : tris) {
      if (remap[std::size_t(t[0])] < 0 || remap[std::size_t(t[1])] < 0 ||
          remap[std::size_t(t[2])] < 0)
        continue;
      obj << "f " << remap[std::size_t(t[0])] + 1 << " " << remap[std::size_t(t[1])] + 1 << " "
          << remap[std::size_t(t[2])] + 1 << "\n";
    }
  out.obj = obj.str();
  out.scalars = sc.str();
  return out;
}

// ---- run configuration ----------------------------------------------------------------

RunConfig RunConfig::from_env() {
  RunConfig cfg;
  if (const char* path = std::getenv("LEP_CONFIG")) {
    if (path[0] != '\0') cfg.load(path);
  }
  return cfg;
}

void RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string key;
  while (in >> key) {
    if (key.empty() || key[0] == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    std::string value;
    if (!(in >> value)) throw std::runtime_error("config key '" + key + "' needs a value");
    if (key == "h")
      h = std::stod(value);
    else if (key == "ring")
      ring = std::stoi(value);
    else if (key == "steiner")
      steiner = std::stoi(value);
    else if (key == "tol")
      tol = std::stod(value);
    else if (key == "seed")
      seed = std::stoull(value);
    else
      throw std::runtime_error("unknown config key '" + key + "'");
  }
  if (!(h > 0) || ring < 1 || steiner < 1)
    throw std::runtime_error("config: numeric parameters must be positive");
}

}  // namespace lep
