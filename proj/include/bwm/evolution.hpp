// Nonlinear runs, Picard iterates, energy and constraint monitors, scaling.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwm/initial_data.hpp"
#include "bwm/manifold.hpp"
#include "bwm/propagator.hpp"
#include "bwm/spacetime.hpp"

namespace bwm {

struct RunConfig {
  int dim = 3;
  int n = 32;
  double box = kTwoPi;
  TargetSpec target;
  InitialDataSpec data;
  /// 0 selects default_timestep(grid, safety).
  double dt = 0.0;
  double safety = 1.0;
  double t_final = 1.0;
  int record_every = 1;
  int picard_iterations = 6;
  bool renormalize = false;
  /// false replaces 𝒬 by zero.
  bool nonlinear = true;

  Grid grid() const { return Grid(dim, n, box); }
  double timestep() const;
  int steps() const;
  void validate() const;
};

/// ½ ∫ |∂_t u|² + |Δu|² dx via Parseval.
double energy(const State& s);

struct ConstraintDrift {
  double geometric = 0.0;  // max_x dist(u(x), N)
  double tangency = 0.0;   // max_x |⟨u_t(x), ν(u(x))⟩|
};
ConstraintDrift constraint_monitor(const State& s, const TargetManifold& target);

/// Project u onto N and u_t onto the tangent space, pointwise.
State renormalize(const State& s, const TargetManifold& target);

struct MonitorRow {
  double time = 0.0;
  double energy = 0.0;
  double energy_drift = 0.0;  // |E(t) − E(0)| / E(0), or |E(t)| when E(0) = 0
  double geometric_drift = 0.0;
  double tangency_drift = 0.0;
  double besov = 0.0;         // Ḃ^{2,1}_{d/2} of u
  double sobolev = 0.0;       // Ḣ² of u
  double forcing_l1l2 = 0.0;  // ∫₀^t ‖𝒬(u)‖_{L²} dt
};

struct Trajectory {
  std::vector<MonitorRow> monitors;
  std::vector<State> snapshots;  // every record_every steps, starting at t = 0
  State final_state;
  bool halted = false;
  std::string flag;  // "", "constraint breach", "non-finite"
  double max_energy_drift = 0.0;
  double max_geometric_drift = 0.0;
  double max_tangency_drift = 0.0;

  /// Snapshots as a space-time block (needs at least 8 records).
  SpaceTimeBlock block(Taper window = Taper::hann) const;
};

inline constexpr double kConstraintHardLimit = 1e-2;

Trajectory evolve(const RunConfig& cfg, const State& s0, const TargetManifold& target);

struct PicardResult {
  /// d[k] = max over sampled t of ‖(u_{k+1} − u_k)(t)‖ in Ḃ^{2,1}_{d/2}, k = 0..K−1
  std::vector<double> d;
  /// r[k] = d[k+1] / d[k]
  std::vector<double> r;
  /// Last iterate sampled at the recorded times.
  std::vector<State> last;
  bool halted = false;
  std::string flag;  // "" or "no contraction at this delta"
};

/// Iterates u_0 ≡ 0, u_{k+1} = S u[0] + V(𝒬(u_k)) with the trapezoidal
/// Duhamel quadrature on the run's time grid; cfg.picard_iterations = K.
PicardResult picard_solve(const RunConfig& cfg, const State& s0, const TargetManifold& target);

struct ScalingReport {
  State scaled;
  double lambda = 1.0;
  double measured = 0.0;  // E(u_λ) / E(u)
  double expected = 0.0;  // λ^{4−d}
};

/// u_λ(x) = u(λx), ∂_t u_λ(x) = λ² ∂_t u(λx) on the grid with box/λ and the
/// same n, where the samples coincide. λ must be a power of two.
ScalingReport parabolic_rescale(const State& s, double lambda);

}  // namespace bwm
