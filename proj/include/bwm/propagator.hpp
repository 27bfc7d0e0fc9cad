// Exact flow of ∂_t² + Δ² and the exponential trapezoidal Duhamel step.
#pragma once

#include <functional>

#include "bwm/field.hpp"

namespace bwm {

/// Cauchy pair (u, ∂_t u) at one time.
struct State {
  Field u;
  Field ut;
  double time = 0.0;

  State(Field u_, Field ut_, double t);
  const Grid& grid() const { return u.grid(); }
  int components() const { return u.components(); }
};

/// Per mode k ≠ 0 with ω = |k|²:
///   û ← cos(ωt) û + sin(ωt)/ω û_t,   û_t ← −ω sin(ωt) û + cos(ωt) û_t;
/// the zero mode moves as û ← û + t û_t.
State linear_flow(const State& s, double dt);

/// Apply the same flow to coefficients in place.
void linear_flow_spectral(SpectralField& u, SpectralField& ut, double dt);

/// Relative discrepancy between the direct flow and the half-wave split
/// u(t) = ½e^{−itΔ}(u₀ − i(−Δ)⁻¹u₁) + ½e^{itΔ}(u₀ + i(−Δ)⁻¹u₁) (and its time
/// derivative). Requires mean-free data.
double schrodinger_factorization_check(const State& s, double dt);

/// Right-hand side 𝒬 evaluated on a state (the state carries its time).
using Forcing = std::function<Field(const State&)>;

/// One exponential trapezoidal step for u_tt + Δ²u = 𝒬(u):
///   ũ      = S(dt)(s + (0, dt·𝒬(s)))
///   s(t+dt) = S(dt)(s + (0, dt/2·𝒬(s))) + (0, dt/2·𝒬(ũ)).
/// Second order; the linear part is exact for any dt.
State duhamel_step(const State& s, double dt, const Forcing& forcing);

/// 0.25 (box/n)² · safety.
double default_timestep(const Grid& grid, double safety = 1.0);

}  // namespace bwm
