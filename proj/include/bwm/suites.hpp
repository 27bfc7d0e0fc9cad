// Verification suites behind the CLI, and the synthetic data they use.
#pragma once

#include <cstdint>
#include <string>

#include "bwm/bilinear.hpp"
#include "bwm/config.hpp"
#include "bwm/report.hpp"
#include "bwm/spacetime.hpp"

namespace bwm {

/// Real band-limited field with modes |k_a| ≤ max_mode (Nyquist excluded),
/// Gaussian-weighted random coefficients, unit-order amplitude.
Field random_smooth_field(const Grid& grid, int L, std::uint64_t seed, int max_mode = 3, bool mean_free = false);

/// u(t, x) = Σ_{j=0..3} t^j a_j(x) sampled at t_n = (n − (N−1)/2)·dt with exact
/// velocities; a_0 of unit size, a_1..a_3 scaled by `time_amplitude`.
SpaceTimeBlock analytic_block(const Grid& grid, int L, double dt, int samples, std::uint64_t seed,
                              double time_amplitude = 0.3);

/// Sphere-valued block u = cos θ p + sin θ (cos ψ q + sin ψ r) with θ, ψ
/// quadratic in t and trigonometric in x, exact velocities.
SpaceTimeBlock sphere_block(const Grid& grid, int L, double dt, int samples, std::uint64_t seed,
                            double amplitude = 0.3);

/// "zero", "sphere", "dot" (⟨a,b⟩ e₀) or "random-linear".
BilinearFamily bilinear_family_from_name(const std::string& name, int L, std::uint64_t seed);

/// Snapshots from a block file; times must be uniformly spaced.
SpaceTimeBlock read_block_file(const std::string& path, Taper window = Taper::hann);

/// Run the experiment's suite, writing CSV outputs and report.json into
/// e.output. The report is written even when checks fail.
Report run_suite(const Experiment& e);

}  // namespace bwm
