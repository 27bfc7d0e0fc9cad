// Target manifolds: the round sphere and polynomial perturbations of it.
#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bwm/jet.hpp"

namespace bwm {

enum class TargetKind { sphere, perturbed_sphere };

std::string to_string(TargetKind k);
TargetKind target_kind_from_string(const std::string& s);

/// coeff · y^exponents added to component `component` of p(y).
struct PolynomialTerm {
  int component = 0;
  double coeff = 0.0;
  std::vector<int> exponents;
};

struct TargetSpec {
  TargetKind kind = TargetKind::sphere;
  int L = 3;
  double epsilon = 0.0;
  std::vector<PolynomialTerm> poly;
  /// 0: derivative tensors from the exact composition at every point.
  /// K > 0: from the degree-K Taylor polynomial of Π about `series_base`.
  int series_order = 0;
  std::vector<double> series_base;
};

/// N = Φ(S^{L-1}) with Φ(y) = y + ε p(y), and the projection
/// Π_N = Φ ∘ Π_S ∘ Φ⁻¹ onto it (Π_S(y) = y/|y|). With ε = 0 or kind = sphere
/// this is the round sphere.
class TargetManifold {
 public:
  explicit TargetManifold(TargetSpec spec);
  static TargetManifold sphere(int L);

  const TargetSpec& spec() const { return spec_; }
  int ambient_dim() const { return spec_.L; }
  bool is_round() const { return round_; }

  /// Copy with the series expansion point replaced.
  TargetManifold with_series_base(std::span<const double> base) const;

  /// Π(p); throws OutsideTube when p is outside the tube.
  std::vector<double> project(std::span<const double> p) const;

  struct NearestPoint {
    std::vector<double> point;
    /// dΠ_p, row-major: dpi[i*L + j] = ∂Π^i/∂p_j
    std::vector<double> dpi;
  };
  NearestPoint nearest_point(std::span<const double> p) const;

  /// Taylor jets of the components Π^J(p + h) in the space's variables
  /// (space.vars() must equal L).
  std::vector<Jet> projection_jets(std::span<const double> p, const std::shared_ptr<const JetSpace>& space) const;

  /// Sphere: ||p| − 1|. Perturbed: |p − Π(p)|.
  double distance(std::span<const double> p) const;
  /// Unit normal of N at Π(p).
  std::vector<double> normal(std::span<const double> p) const;

  /// Φ(y) and DΦ(y) (row-major).
  std::vector<double> phi(std::span<const double> y) const;
  std::vector<double> phi_jacobian(std::span<const double> y) const;

 private:
  std::vector<double> phi_inverse(std::span<const double> p) const;
  std::vector<Jet> exact_jets(std::span<const double> p, const std::shared_ptr<const JetSpace>& space) const;
  std::vector<Jet> phi_jets(const std::vector<Jet>& y) const;
  void build_series();
  void validate_projection() const;

  TargetSpec spec_;
  bool round_;
  int max_exponent_ = 0;
  std::shared_ptr<const JetSpace> series_space_;
  std::vector<Jet> series_;
};

/// Solve A x = b for a small dense n×n system (partial pivoting).
std::vector<double> solve_dense(int n, std::vector<double> A, std::vector<double> b);

}  // namespace bwm
