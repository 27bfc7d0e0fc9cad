// Uniformly sampled trajectories and the space-time multipliers P_λ(D), Q_μ(D), P₀.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bwm/field.hpp"
#include "bwm/fft.hpp"

namespace bwm {

enum class Taper { none, hann };

std::string to_string(Taper t);
Taper taper_from_string(const std::string& s);

/// Snapshots u(t0 + n·dt), n = 0..N_t-1, with an optional matching set of
/// time derivatives and a taper applied before any temporal transform.
class SpaceTimeBlock {
 public:
  SpaceTimeBlock(double t0, double dt, std::vector<Field> snapshots, Taper window = Taper::hann,
                 std::vector<Field> velocities = {});

  const Grid& grid() const { return snapshots_.front().grid(); }
  int components() const { return snapshots_.front().components(); }
  std::size_t steps() const { return snapshots_.size(); }
  double t0() const { return t0_; }
  double dt() const { return dt_; }
  double time(std::size_t n) const { return t0_ + static_cast<double>(n) * dt_; }
  Taper window() const { return window_; }

  const std::vector<Field>& snapshots() const { return snapshots_; }
  const Field& snapshot(std::size_t n) const { return snapshots_[n]; }
  bool has_velocities() const { return !velocities_.empty(); }
  const std::vector<Field>& velocities() const { return velocities_; }

  /// Taper weight in [0, 1] for sample n (periodic Hann or 1).
  double taper_weight(std::size_t n) const;
  /// Copy with the taper multiplied in and the window reset to none.
  SpaceTimeBlock tapered() const;

 private:
  double t0_;
  double dt_;
  std::vector<Field> snapshots_;
  std::vector<Field> velocities_;
  Taper window_;
};

/// |τ² − |ξ|⁴| / (τ² + |ξ|⁴)^{1/2}; rejects (τ, ξ) = (0, 0).
double modulation_weight(double tau, double xi_norm);
double modulation_weight(double tau, std::span<const double> xi);
/// (τ² + |ξ|⁴)^{1/4}
double spacetime_frequency(double tau, double xi_norm2);

/// Coefficients of a tapered block over (t, x) in the half-spectrum layout
/// of the shape {N_t, n, ..., n}.
class SpacetimeSpectrum {
 public:
  explicit SpacetimeSpectrum(const SpaceTimeBlock& block);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t steps() const { return steps_; }
  double dt() const { return dt_; }
  double t0() const { return t0_; }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t modes() const { return fft::half_size(shape_); }

  std::span<complex> component(int c) { return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()}; }
  std::span<const complex> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * modes(), modes()};
  }

  /// Temporal resolution 2π/(N_t dt) and Nyquist π/dt.
  double tau_resolution() const;
  double tau_nyquist() const;

  /// fn(index, tau, xi_norm2, weight, temporal_nyquist)
  template <class Fn>
  void for_each(Fn&& fn) const {
    const double tunit = tau_resolution();
    const double xunit = grid_.wavenumber();
    const int d = grid_.dim();
    fft::for_each_mode(shape_, [&](std::size_t i, const int* k, unsigned mask, double w) {
      double x2 = 0.0;
      for (int a = 1; a <= d; ++a) {
        const double x = xunit * k[a];
        x2 += x * x;
      }
      fn(i, tunit * k[0], x2, w, (mask & 1u) != 0);
    });
  }

  /// Physical L²_{t,x} mass of the coefficients restricted by a weight
  /// function: Σ weight(τ,|ξ|²)·|v̂|² scaled to (dt h^d)·Σ|v|².
  template <class Fn>
  double weighted_mass(Fn&& weight_of) const {
    double s = 0.0;
    for (int c = 0; c < components_; ++c) {
      auto coeffs = component(c);
      for_each([&](std::size_t i, double tau, double x2, double w, bool) {
        s += w * weight_of(tau, x2) * std::norm(coeffs[i]);
      });
    }
    return s * mass_scale();
  }

  /// Factor turning Σ w|v̂|² into ∫∫|v|² dt dx.
  double mass_scale() const;

  SpaceTimeBlock inverse() const;

 private:
  Grid grid_;
  int components_;
  std::size_t steps_;
  double t0_;
  double dt_;
  std::vector<int> shape_;
  ComplexVector coeffs_;
};

enum class SpacetimeFilter { frequency, modulation, nearcone, farcone };

/// Cut-off levels of the cone multiplier χ(τ,ξ) = η(|τ²−|ξ|⁴|/(τ²+|ξ|⁴)):
/// η = 1 below `inner`, 0 above `outer`.
struct ConeThresholds {
  double inner = 0.01;
  double outer = 0.1;
};

double cone_cutoff(double tau, double xi_norm2, const ConeThresholds& th);

struct SpacetimeProjection {
  SpacetimeFilter kind = SpacetimeFilter::frequency;
  double scale = 1.0;  // λ or μ, dyadic
  ConeThresholds cone{};
};

/// Apply the multiplier to the tapered block; returns an untapered block of
/// the filtered samples. Throws Unresolvable for λ or μ outside the range
/// the sampling can represent.
SpaceTimeBlock spacetime_project(const SpaceTimeBlock& block, const SpacetimeProjection& projection);

struct ScaleRange {
  double lo;
  double hi;
};
ScaleRange frequency_range(const SpacetimeSpectrum& s);
ScaleRange modulation_range(const SpacetimeSpectrum& s);

/// Fraction of tapered L² mass located where w(τ,ξ) exceeds `threshold`.
double modulation_mass_fraction_above(const SpaceTimeBlock& block, double threshold);

}  // namespace bwm
