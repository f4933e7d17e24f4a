#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lep/complex.hpp"
#include "lep/geom.hpp"

namespace lep {

// Per-branch Hamiltonian family H = (H^j). Two kinds are supported: the
// weighted eikonal family |p|^2 - f^j(x) with closed-form Legendre transform,
// and a generic convex coercive evaluator handled numerically. Immutable and
// thread-safe once constructed.

struct Monomial {
  double coef = 0;
  int pu = 0;
  int pv = 0;
};

struct WeightField {
  enum class Kind { Constant, Polynomial, VertexSamples };
  Kind kind = Kind::Constant;
  double value = 1.0;              // Constant
  std::vector<Monomial> monomials; // Polynomial, in branch-local coordinates

  static WeightField constant(double c) { return {Kind::Constant, c, {}}; }
  static WeightField polynomial(std::vector<Monomial> ms) {
    return {Kind::Polynomial, 0.0, std::move(ms)};
  }
  static WeightField samples() { return {Kind::VertexSamples, 0.0, {}}; }
};

using GenericEvaluator = std::function<double(int branch, const Vec2& x, const Vec2& p)>;

class HamiltonianFamily {
 public:
  enum class Kind { EikonalWeighted, GenericConvex };

  /// Weighted eikonal family. `fields` has one entry per branch; vertex-sample
  /// fields read `vertex_values` indexed by global vertex id, so shared
  /// vertices carry one value by construction. Throws if any sampled weight is
  /// negative.
  static HamiltonianFamily eikonal(const Complex& complex, std::vector<WeightField> fields,
                                   std::vector<double> vertex_values = {});

  static HamiltonianFamily eikonal_constant(const Complex& complex, double f);

  static HamiltonianFamily generic(const Complex& complex, GenericEvaluator evaluator,
                                   bool convex = true, double p_radius = 16.0);

  Kind kind() const { return kind_; }
  bool convex() const { return convex_; }
  double p_radius() const { return p_radius_; }
  const Complex& complex() const { return *complex_; }

  /// Weight f^j(x) in branch-local coordinates (eikonal kind).
  double weight(int branch, const Vec2& x) const;

  /// H^j(x, p). Throws std::domain_error when x is outside the branch closure.
  double value(int branch, const Vec2& x, const Vec2& p) const;

  /// Legendre transform L^j(x, q) = sup_p { p.q - H^j(x,p) }. Closed form for
  /// the eikonal kind; multi-start projected gradient ascent otherwise.
  /// Throws std::runtime_error when the evaluator is not coercive at x.
  double lagrangian(int branch, const Vec2& x, const Vec2& q) const;

  /// Metric line element inf_{T>0} T L(x, q/T); positively 1-homogeneous in q.
  double gauge(int branch, const Vec2& x, const Vec2& q) const;

  /// Largest metric slope sup { |p| : H(x,p) <= 0 } sampled over the complex;
  /// the Lipschitz constant of subsolutions. Equals max sqrt(f) for the
  /// eikonal kind.
  double lipschitz_bound() const;

  /// One-line description used in provenance headers.
  std::string describe() const;

  /// Forces the numeric Legendre/gauge path; used to cross-check closed forms.
  double numeric_lagrangian(int branch, const Vec2& x, const Vec2& q) const;
  double numeric_gauge(int branch, const Vec2& x, const Vec2& q) const;

 private:
  void check_inside(int branch, const Vec2& x) const;

  Kind kind_ = Kind::EikonalWeighted;
  const Complex* complex_ = nullptr;
  std::vector<WeightField> fields_;
  std::vector<double> vertex_values_;
  GenericEvaluator evaluator_;
  bool convex_ = true;
  double p_radius_ = 16.0;
};

// ---- structural hypothesis checks ------------------------------------------

struct HypothesisVerdict {
  bool pass = true;
  double violation = 0;  // worst violation magnitude
  std::string location;
};

struct CompatReport {
  HypothesisVerdict continuity;             // sampled modulus bound
  HypothesisVerdict coercivity;             // growth probes at 2R, 4R
  HypothesisVerdict normal_monotonicity;    // nondecreasing in p_n >= 0 on the ramification set
  HypothesisVerdict cross_branch_equality;  // H^j = H^k on shared edges
  HypothesisVerdict normal_symmetry;        // even in the normal covector component
  std::vector<std::string> sampling_failures;  // sites that could not be evaluated

  bool all_pass() const {
    return continuity.pass && coercivity.pass && normal_monotonicity.pass &&
           cross_branch_equality.pass && normal_symmetry.pass;
  }
  std::string summary() const;
};

/// Samples every hypothesis at `n_samples` points per ramification edge and
/// `n_samples` covectors under the shared canonical chart of each point.
CompatReport check_compatibility(const Complex& complex, const HamiltonianFamily& H,
                                 int n_samples = 16, std::uint64_t seed = 1);

}  // namespace lep
