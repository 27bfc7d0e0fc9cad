// Right-hand sides of the constrained system and the null-form identity.
#pragma once

#include <vector>

#include "bwm/bilinear.hpp"
#include "bwm/manifold.hpp"
#include "bwm/propagator.hpp"
#include "bwm/spacetime.hpp"

namespace bwm {

/// Spatial derivatives of u (and u_t) interpolated onto the grid refined by
/// 2 per axis, where pointwise cubic products of the coarse modes are exact.
struct PaddedDerivatives {
  Grid fine;
  Field u;
  Field ut;
  Field lap;
  std::vector<Field> grad;     // ∂_i u
  std::vector<Field> hess;     // ∂_i∂_j u, i ≤ j, see hessian_index
  std::vector<Field> gradlap;  // ∂_i Δu
};

PaddedDerivatives padded_derivatives(const Field& u, const Field& ut);

/// Fourier-truncate a field on the padded grid back to `coarse`.
Field restrict_to(const Field& fine, const Grid& coarse);

/// Throws ConstraintViolation naming the first grid point with |u| < min_radius.
void check_constraint(const Field& u, double min_radius = 0.5);

/// −(|u_t|² + |Δu|² + 4⟨∇u, ∇Δu⟩ + 2 Σ_ij |∂_i∂_j u|²) u
Field sphere_nonlinearity(const State& s);

/// Σ of all second-, third- and fourth-order terms of L(Π∘u) − dΠ_u(Lu),
/// with L = ∂_t² + Δ², contracted against jets of Π at u(x).
Field general_nonlinearity(const State& s, const TargetManifold& target);

/// sphere_nonlinearity for a round target, general_nonlinearity otherwise.
Forcing target_forcing(const TargetManifold& target);

// ---------------------------------------------------------------------------

struct NullFormResult {
  int stencil_order = 4;
  std::vector<double> times;
  /// ½ Q_u(L(u^K u^M) − u^K L u^M − u^M L u^K)
  std::vector<Field> commutator;
  /// Q_u(u_t,u_t) + Q_u(Δu,Δu) + 4 Q_u(∇u,∇Δu) + 2 Q_u(∇²u,∇²u)
  std::vector<Field> expanded;
  /// −Q_u(u · L u); coincides with the others when |u| ≡ 1
  std::vector<Field> reduced;
  /// max_t ‖commutator − expanded‖₂ / max_t ‖expanded‖₂
  double discrepancy = 0.0;
  /// same, reduced against commutator
  double reduced_discrepancy = 0.0;
};

/// Second time derivatives use the centred stencil of `stencil_order`
/// ∈ {2, 4, 6, 8}; results are reported at every time whose stencil fits
/// in the block. The block must carry velocities.
NullFormResult null_form(const SpaceTimeBlock& block, const BilinearFamily& Q, int stencil_order = 4);

/// Central weights of the second-derivative stencil (length order + 1).
std::vector<double> second_difference_weights(int order);

}  // namespace bwm
