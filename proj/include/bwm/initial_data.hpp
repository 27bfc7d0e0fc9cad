// Sphere-valued Cauchy data with compactly supported profiles.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bwm/manifold.hpp"
#include "bwm/propagator.hpp"

namespace bwm {

enum class ProfileKind { geodesic_bump, multi_bump, plane_mode };

std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

struct InitialDataSpec {
  ProfileKind kind = ProfileKind::geodesic_bump;
  double delta = 0.05;
  std::uint64_t seed = 1;
  /// Sharpness a of the bump exp(−a|y|²/(1−|y|²)).
  double sharpness = 4.0;
  /// Bump radius as a fraction of the box.
  double radius = 0.25;
  /// Lattice mode for plane-mode data.
  int mode = 1;
};

/// C^∞ bump exp(−a r²/(1−r²)) for r < 1, zero otherwise.
double bump(double r2, double sharpness);

/// u₀ = cos θ p + sin θ q and u₁ = δ b₂ (−sin θ p + cos θ q) with random
/// orthonormal p, q; θ = δ·profile. For a perturbed target both are pushed
/// forward through Φ and DΦ.
State generate_initial_data(const Grid& grid, const TargetManifold& target, const InitialDataSpec& spec);

/// Orthonormal pair (p, q) in ℝ^L drawn from the seed.
std::pair<std::vector<double>, std::vector<double>> random_frame(int L, std::uint64_t seed);

}  // namespace bwm
