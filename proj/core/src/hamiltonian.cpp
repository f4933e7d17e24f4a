#include "lep/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lep {

namespace {

constexpr double kTolL = 1e-8;

}  // namespace

HamiltonianFamily HamiltonianFamily::eikonal(const Complex& complex,
                                             std::vector<WeightField> fields,
                                             std::vector<double> vertex_values) {
  if (fields.size() != complex.branches.size())
    throw std::invalid_argument("one weight field per branch required");
  HamiltonianFamily H;
  H.kind_ = Kind::EikonalWeighted;
  H.complex_ = &complex;
  H.fields_ = std::move(fields);
  H.vertex_values_ = std::move(vertex_values);
  H.convex_ = true;
  for (const Branch& b : complex.branches) {
    if (H.fields_[std::size_t(b.id)].kind == WeightField::Kind::VertexSamples &&
        H.vertex_values_.size() != complex.vertices.size())
      throw std::invalid_argument("vertex-sampled weight field needs one value per vertex");
    if (b.degenerate) continue;
    for (const Vec2& x : closure_sample_points(b))
      if (H.weight(b.id, x) < 0)
        throw std::invalid_argument("weight field is negative on branch " + std::to_string(b.id));
  }
  return H;
}

HamiltonianFamily HamiltonianFamily::eikonal_constant(const Complex& complex, double f) {
  return eikonal(complex,
                 std::vector<WeightField>(complex.branches.size(), WeightField::constant(f)));
}

HamiltonianFamily HamiltonianFamily::generic(const Complex& complex, GenericEvaluator evaluator,
                                             bool convex, double p_radius) {
  HamiltonianFamily H;
  H.kind_ = Kind::GenericConvex;
  H.complex_ = &complex;
  H.evaluator_ = std::move(evaluator);
  H.convex_ = convex;
  H.p_radius_ = p_radius;
  return H;
}

double HamiltonianFamily::weight(int branch, const Vec2& x) const {
  const WeightField& f = fields_.at(std::size_t(branch));
  switch (f.kind) {
    case WeightField::Kind::Constant:
      return f.value;
    case WeightField::Kind::Polynomial: {
      double s = 0;
      for (const Monomial& m : f.monomials)
        s += m.coef * std::pow(x.x, m.pu) * std::pow(x.y, m.pv);
      return s;
    }
    case WeightField::Kind::VertexSamples: {
      const Branch& b = complex_->branches[std::size_t(branch)];
      if (b.dim() == 1) {
        double len = b.local[1].x;
        double t = len > 0 ? std::clamp(x.x / len, 0.0, 1.0) : 0.0;
        return (1 - t) * vertex_values_[std::size_t(b.vertex_ids[0])] +
               t * vertex_values_[std::size_t(b.vertex_ids[1])];
      }
      std::vector<double> w = mean_value_coordinates(b.local, x);
      double s = 0;
      for (std::size_t i = 0; i < w.size(); ++i)
        s += w[i] * vertex_values_[std::size_t(b.vertex_ids[i])];
      return s;
    }
  }
  return 0;
}

void HamiltonianFamily::check_inside(int branch, const Vec2& x) const {
  const Branch& b = complex_->branches.at(std::size_t(branch));
  double tol = complex_->tol_len() + 1e-12 * complex_->bbox_diameter();
  bool inside;
  if (b.dim() == 1) {
    inside = x.x >= -tol && x.x <= b.local[1].x + tol && std::abs(x.y) <= tol;
  } else {
    inside = point_in_polygon(b.local, x, tol);
  }
  if (!inside)
    throw std::domain_error("point outside the closure of branch " + std::to_string(branch));
}

double HamiltonianFamily::value(int branch, const Vec2& x, const Vec2& p) const {
  check_inside(branch, x);
  if (kind_ == Kind::EikonalWeighted) return sqnorm(p) - weight(branch, x);
  return evaluator_(branch, x, p);
}

namespace {

/// sup_p { p.q - H(x,p) } by projected gradient ascent from a start grid.
double ascend_legendre(const std::function<double(const Vec2&)>& H, const Vec2& q, double Rp,
                       bool one_dim) {
  // The maximizer grows with |q| for coercive H; only escape past this cap
  // signals a non-coercive evaluator.
  const double cap = 8.0 * Rp + 4.0 * norm(q);
  auto phi = [&](const Vec2& p) { return dot(p, q) - H(p); };
  std::vector<Vec2> starts{{0, 0}, q * 0.5};
  for (int i = -1; i <= 1; ++i) {
    if (one_dim) {
      starts.push_back({0.7 * Rp * i, 0});
    } else {
      for (int j = -1; j <= 1; ++j) starts.push_back({0.7 * Rp * i, 0.7 * Rp * j});
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (Vec2 p : starts) {
    double step = 0.25 * (1 + norm(q));
    double fp = phi(p);
    for (int it = 0; it < 250 && step > kTolL; ++it) {
      double h = 1e-6 * (1 + norm(p));
      Vec2 grad{(phi({p.x + h, p.y}) - phi({p.x - h, p.y})) / (2 * h), 0};
      if (!one_dim) grad.y = (phi({p.x, p.y + h}) - phi({p.x, p.y - h})) / (2 * h);
      double gn = norm(grad);
      if (gn == 0) break;
      Vec2 cand = p + grad * (step / gn);
      if (norm(cand) > cap) {
        // Radial escape at the cap means sup_p is not attained.
        throw std::runtime_error("Hamiltonian not coercive at x");
      }
      double fc = phi(cand);
      if (fc > fp) {
        p = cand;
        fp = fc;
        step *= 1.6;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, fp);
  }
  return best;
}

}  // namespace

double HamiltonianFamily::numeric_lagrangian(int branch, const Vec2& x, const Vec2& q) const {
  check_inside(branch, x);
  auto H = [&](const Vec2& p) {
    return kind_ == Kind::EikonalWeighted ? sqnorm(p) - weight(branch, x)
                                          : evaluator_(branch, x, p);
  };
  return ascend_legendre(H, q, p_radius_, complex_->branch_dim == 1);
}

double HamiltonianFamily::lagrangian(int branch, const Vec2& x, const Vec2& q) const {
  if (kind_ == Kind::EikonalWeighted) {
    check_inside(branch, x);
    return 0.25 * sqnorm(q) + weight(branch, x);
  }
  return numeric_lagrangian(branch, x, q);
}

double HamiltonianFamily::numeric_gauge(int branch, const Vec2& x, const Vec2& q) const {
  if (sqnorm(q) == 0) return 0;
  auto action = [&](double log_t) {
    double t = std::exp(log_t);
    return t * lagrangian(branch, x, q / t);
  };
  return golden_min(std::log(1e-6), std::log(1e6), 48, action);
}

double HamiltonianFamily::gauge(int branch, const Vec2& x, const Vec2& q) const {
  if (kind_ == Kind::EikonalWeighted) {
    check_inside(branch, x);
    double f = weight(branch, x);
    return std::sqrt(std::max(f, 0.0)) * norm(q);
  }
  return numeric_gauge(branch, x, q);
}

double HamiltonianFamily::lipschitz_bound() const {
  double bound = 0;
  for (const Branch& b : complex_->branches) {
    if (b.degenerate) continue;
    for (const Vec2& x : closure_sample_points(b)) {
      if (kind_ == Kind::EikonalWeighted) {
        bound = std::max(bound, std::sqrt(std::max(weight(b.id, x), 0.0)));
      } else {
        // Largest |p| with H(x,p) <= 0 along sampled directions.
        const int ndir = complex_->branch_dim == 1 ? 2 : 8;
        for (int k = 0; k < ndir; ++k) {
          double ang = 2 * M_PI * k / ndir;
          Vec2 d = complex_->branch_dim == 1 ? Vec2{k == 0 ? 1.0 : -1.0, 0}
                                             : Vec2{std::cos(ang), std::sin(ang)};
          double lo = 0, hi = 8 * p_radius_;
          if (evaluator_(b.id, x, d * hi) <= 0) {
            bound = std::max(bound, hi);
            continue;
          }
          for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (evaluator_(b.id, x, d * mid) <= 0 ? lo : hi) = mid;
          }
          bound = std::max(bound, lo);
        }
      }
    }
  }
  return bound;
}

std::string HamiltonianFamily::describe() const {
  if (kind_ == Kind::GenericConvex) return "generic";
  std::ostringstream os;
  os << "eikonal";
  for (std::size_t j = 0; j < fields_.size(); ++j) {
    const WeightField& f = fields_[j];
    os << " f" << j << "=";
    switch (f.kind) {
      case WeightField::Kind::Constant:
        os << "const:" << f.value;
        break;
      case WeightField::Kind::Polynomial:
        os << "poly:";
        for (std::size_t m = 0; m < f.monomials.size(); ++m) {
          if (m) os << ";";
          os << f.monomials[m].coef << "," << f.monomials[m].pu << "," << f.monomials[m].pv;
        }
        break;
      case WeightField::Kind::VertexSamples:
        os << "samples";
        break;
    }
  }
  return os.str();
}

// ---- hypothesis checks -------------------------------------------------------

namespace {

struct EdgeSample {
  Vec3 point;
  Chart chart;
  std::string where;
};

void worse(HypothesisVerdict& v, double violation, const std::string& where) {
  if (violation > v.violation) {
    v.violation = violation;
    v.location = where;
  }
}

}  // namespace

std::string CompatReport::summary() const {
  auto line = [](const char* name, const HypothesisVerdict& v) {
    std::ostringstream os;
    os << name << ": " << (v.pass ? "pass" : "FAIL") << " (violation " << v.violation;
    if (!v.location.empty()) os << " at " << v.location;
    os << ")\n";
    return os.str();
  };
  return line("continuity (H-cont)", continuity) + line("coercivity (H-coer)", coercivity) +
         line("normal monotonicity (H-mono)", normal_monotonicity) +
         line("cross-branch equality (H-eq)", cross_branch_equality) +
         line("normal symmetry (H-sym)", normal_symmetry);
}

CompatReport check_compatibility(const Complex& complex, const HamiltonianFamily& H,
                                 int n_samples, std::uint64_t seed) {
  CompatReport rep;
  const double Rp = H.p_radius();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const bool one_dim = complex.branch_dim == 1;

  // Covector samples (x: tangential, y: normal) with |p| <= Rp. Segment
  // complexes have no tangential direction at a ramification point.
  std::vector<Vec2> ps;
  for (int i = 0; i < n_samples; ++i) {
    Vec2 p{one_dim ? 0.0 : unif(rng) * Rp, unif(rng) * Rp};
    while (norm(p) > Rp) p = {one_dim ? 0.0 : unif(rng) * Rp, unif(rng) * Rp};
    ps.push_back(p);
  }

  double h_scale = 1.0;
  auto tol = [&]() { return 1e-8 * (1 + h_scale); };

  std::vector<EdgeSample> samples;
  for (const RamEdge& e : complex.ram_edges) {
    if (e.incident.size() < 2) continue;
    Vec3 a = complex.vertex(e.va), b = complex.vertex(e.vb);
    int pts = e.is_point() ? 1 : n_samples;
    for (int i = 0; i < pts; ++i) {
      double t = e.is_point() ? 0.0 : (i + 0.5) / pts;
      Vec3 x = a + (b - a) * t;
      std::ostringstream os;
      os << "edge " << e.id << " t=" << t;
      Chart chart;
      try {
        chart = canonical_chart(complex, x);
      } catch (const std::exception& ex) {
        rep.sampling_failures.push_back(os.str() + ": " + ex.what());
        continue;
      }
      samples.push_back({x, chart, os.str()});
    }
  }

  // H^j at a chart point, covector given as (tangential, normal) components.
  auto eval_chart = [&](const EdgeSample& s, std::size_t entry, double pt, double pn,
                        double x1_offset) {
    const Chart::Entry& en = s.chart.entries[entry];
    const Branch& b = complex.branches[std::size_t(en.branch)];
    Iso2 inv = en.to_model.inverse();
    Vec2 x_local = inv.apply({x1_offset, 0});
    // Covector rows of the chart: row0 = inward normal, row1 = edge tangent.
    Vec2 nu{en.to_model.r00, en.to_model.r01};
    Vec2 tv{en.to_model.r10, en.to_model.r11};
    Vec2 p_local = nu * pn + tv * pt;
    return H.value(b.id, x_local, p_local);
  };

  for (const EdgeSample& s : samples)
    for (std::size_t j = 0; j < s.chart.entries.size(); ++j)
      for (const Vec2& p : ps)
        h_scale = std::max(h_scale, std::abs(eval_chart(s, j, p.x, p.y, 0)));

  // (H-eq) cross-branch equality and (H-sym) normal symmetry.
  for (const EdgeSample& s : samples) {
    for (std::size_t j = 0; j < s.chart.entries.size(); ++j) {
      for (const Vec2& p : ps) {
        double hj = eval_chart(s, j, p.x, p.y, 0);
        worse(rep.normal_symmetry, std::abs(hj - eval_chart(s, j, p.x, -p.y, 0)), s.where);
        for (std::size_t k = j + 1; k < s.chart.entries.size(); ++k)
          worse(rep.cross_branch_equality, std::abs(hj - eval_chart(s, k, p.x, p.y, 0)), s.where);
      }
    }
  }

  // (H-mono) monotone in p_n >= 0 at the ramification set.
  for (const EdgeSample& s : samples)
    for (std::size_t j = 0; j < s.chart.entries.size(); ++j)
      for (const Vec2& p : ps) {
        double prev = eval_chart(s, j, p.x, 0, 0);
        for (int step = 1; step <= 6; ++step) {
          double pn = Rp * step / 6.0;
          double cur = eval_chart(s, j, p.x, pn, 0);
          worse(rep.normal_monotonicity, prev - cur, s.where);
          prev = cur;
        }
      }

  // (H-coer) growth probes along sampled directions.
  for (const EdgeSample& s : samples)
    for (std::size_t j = 0; j < s.chart.entries.size(); ++j) {
      const int ndir = one_dim ? 1 : 8;
      for (int k = 0; k < ndir; ++k) {
        double ang = M_PI * (k + 0.5) / ndir;
        double pt = one_dim ? 0.0 : std::cos(ang);
        double pn = one_dim ? 1.0 : std::sin(ang);
        double h1 = eval_chart(s, j, pt * Rp, pn * Rp, 0);
        double h2 = eval_chart(s, j, pt * 2 * Rp, pn * 2 * Rp, 0);
        double h4 = eval_chart(s, j, pt * 4 * Rp, pn * 4 * Rp, 0);
        worse(rep.coercivity, std::max(h1 - h2, h2 - h4), s.where);
      }
    }

  // (H-cont) sampled modulus bound within each branch closure.
  {
    double diam = complex.bbox_diameter();
    double delta = 1e-6 * diam;
    double slope = 0;
    // Slope estimate from medium-distance pairs along each edge.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const EdgeSample& s0 = samples[i];
      const EdgeSample& s1 = samples[i + 1];
      double dist = norm(s1.point - s0.point);
      if (dist <= delta || dist > 0.5 * diam) continue;
      for (std::size_t j = 0; j < s0.chart.entries.size(); ++j) {
        int bj = s0.chart.entries[j].branch;
        for (std::size_t k = 0; k < s1.chart.entries.size(); ++k) {
          if (s1.chart.entries[k].branch != bj) continue;
          for (const Vec2& p : ps)
            slope = std::max(slope, std::abs(eval_chart(s0, j, p.x, p.y, 0) -
                                             eval_chart(s1, k, p.x, p.y, 0)) /
                                        dist);
        }
      }
    }
    for (const EdgeSample& s : samples)
      for (std::size_t j = 0; j < s.chart.entries.size(); ++j)
        for (const Vec2& p : ps) {
          double jump = std::abs(eval_chart(s, j, p.x, p.y, 0) - eval_chart(s, j, p.x, p.y, delta));
          worse(rep.continuity, jump - 10 * slope * delta, s.where);
        }
  }

  double t = tol();
  for (HypothesisVerdict* v : {&rep.continuity, &rep.coercivity, &rep.normal_monotonicity,
                               &rep.cross_branch_equality, &rep.normal_symmetry}) {
    v->pass = v->violation <= t;
    if (v->violation < 0) v->violation = 0;
  }
  return rep;
}

}  // namespace lep
