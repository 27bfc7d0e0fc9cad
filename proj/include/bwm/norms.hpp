// Dyadic, modulation, lateral and mixed space-time norms of sampled fields.
#pragma once

#include <string>
#include <vector>

#include "bwm/field.hpp"
#include "bwm/spacetime.hpp"
#include "bwm/spectral.hpp"

namespace bwm {

/// A norm value together with the dyadic exponents actually summed.
struct NormValue {
  double value = 0.0;
  int truncation_low = 0;
  int truncation_high = 0;
};

/// (Σ_λ λ^{sp} ‖P_λ f‖₂^p)^{1/p} over the resolvable shells; p = ∞ gives the sup.
NormValue besov_norm(const Field& f, double s, double p);
/// (Σ_ξ≠0 |ξ|^{2s} |f̂(ξ)|²)^{1/2} in the continuous normalisation.
NormValue sobolev_norm(const Field& f, double s);

struct XbpResult {
  double value = 0.0;
  /// Modulation shells summed, 2^mu_low .. 2^mu_high; the lowest absorbs w below it.
  int mu_low = 0;
  int mu_high = 0;
  /// Share of the L² mass per shell (partition weights, sums to 1).
  std::vector<double> shell_fraction;
  /// Share of mass in the two lowest shells.
  double concentration = 0.0;
  /// Exponent of the shell carrying the most mass.
  int dominant_shell = 0;
  /// Share of mass at |τ| ≥ τ_Nyquist / 2, where the temporal sampling is poor.
  double mass_outside = 0.0;
  bool reliable = true;
};

/// ‖P_λ(D) f‖_{X^{b,p}} = (Σ_μ μ^{pb} ‖Q_μ(D) P_λ(D) f‖_{L²_{t,x}}^p)^{1/p}
/// on the tapered block. Flagged unreliable when more than 20% of the mass
/// sits in the poorly sampled band.
XbpResult xbp_norm(const SpaceTimeBlock& block, DyadicIndex lambda, double b, double p);

/// (∫ (∫∫ |f(t, r e + x⊥)|^q dt dx⊥)^{p/q} dr)^{1/p} on the raw samples, e an
/// axis direction or a face diagonal (±e_a ± e_b)/√2.
double lateral_norm(const SpaceTimeBlock& block, const Direction& e, double p, double q);

/// ‖f‖_{L^p_t L^q_x} on the raw samples.
double strichartz_norm(const SpaceTimeBlock& block, double p, double q);

/// 2/p + d/q ≤ d/2, excluding (2, ∞) when d = 2.
bool admissible(double p, double q, int d);

enum class NormFamily { besov, sobolev, xbp, lateral, mixed_strichartz };
std::string to_string(NormFamily f);
NormFamily norm_family_from_string(const std::string& s);

struct NormSpec {
  NormFamily family = NormFamily::besov;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double b = 0.5;
  int lambda = 0;  // dyadic exponent for xbp
  std::vector<double> e;
};

/// Throws InvalidArgument when p or q is outside [1, ∞] or b > 1 for xbp.
void validate(const NormSpec& spec);

}  // namespace bwm
