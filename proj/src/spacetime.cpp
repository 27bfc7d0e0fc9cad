#include "bwm/spacetime.hpp"

#include <cmath>
#include <sstream>

#include "bwm/spectral.hpp"

namespace bwm {

std::string to_string(Taper t) { return t == Taper::hann ? "hann" : "none"; }

Taper taper_from_string(const std::string& s) {
  if (s == "hann") return Taper::hann;
  if (s == "none") return Taper::none;
  throw InvalidArgument("unknown taper '" + s + "'");
}

SpaceTimeBlock::SpaceTimeBlock(double t0, double dt, std::vector<Field> snapshots, Taper window,
                               std::vector<Field> velocities)
    : t0_(t0), dt_(dt), snapshots_(std::move(snapshots)), velocities_(std::move(velocities)), window_(window) {
  if (snapshots_.size() < 8) throw InvalidArgument("space-time block needs at least 8 samples");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw InvalidArgument("block time step must be positive");
  for (const auto& s : snapshots_) {
    if (s.grid() != snapshots_.front().grid() || s.components() != snapshots_.front().components()) {
      throw InvalidArgument("block snapshots must share grid and component count");
    }
  }
  if (!velocities_.empty()) {
    if (velocities_.size() != snapshots_.size()) throw InvalidArgument("velocity samples must match snapshots");
    for (const auto& v : velocities_) {
      if (v.grid() != grid() || v.components() != components()) {
        throw InvalidArgument("velocity samples must share grid and component count");
      }
    }
  }
}

double SpaceTimeBlock::taper_weight(std::size_t n) const {
  if (window_ == Taper::none) return 1.0;
  const double x = static_cast<double>(n) / static_cast<double>(snapshots_.size());
  return 0.5 * (1.0 - std::cos(kTwoPi * x));
}

SpaceTimeBlock SpaceTimeBlock::tapered() const {
  std::vector<Field> s = snapshots_;
  for (std::size_t n = 0; n < s.size(); ++n) s[n] *= taper_weight(n);
  return SpaceTimeBlock(t0_, dt_, std::move(s), Taper::none);
}

double modulation_weight(double tau, double xi_norm) {
  const double x4 = xi_norm * xi_norm * xi_norm * xi_norm;
  const double denom2 = tau * tau + x4;
  if (denom2 == 0.0) throw InvalidArgument("modulation weight undefined at (tau, xi) = (0, 0)");
  return std::abs(tau * tau - x4) / std::sqrt(denom2);
}

double modulation_weight(double tau, std::span<const double> xi) {
  double n2 = 0.0;
  for (double v : xi) n2 += v * v;
  return modulation_weight(tau, std::sqrt(n2));
}

double spacetime_frequency(double tau, double xi_norm2) { return std::pow(tau * tau + xi_norm2 * xi_norm2, 0.25); }

// ---------------------------------------------------------------------------

SpacetimeSpectrum::SpacetimeSpectrum(const SpaceTimeBlock& block)
    : grid_(block.grid()),
      components_(block.components()),
      steps_(block.steps()),
      t0_(block.t0()),
      dt_(block.dt()) {
  shape_.push_back(static_cast<int>(steps_));
  for (int a = 0; a < grid_.dim(); ++a) shape_.push_back(grid_.n());
  coeffs_.resize(static_cast<std::size_t>(components_) * modes());
  const std::size_t pts = grid_.points();
  RealVector packed(steps_ * pts);
  for (int c = 0; c < components_; ++c) {
    for (std::size_t n = 0; n < steps_; ++n) {
      const double w = block.taper_weight(n);
      auto src = block.snapshot(n).component(c);
      for (std::size_t i = 0; i < pts; ++i) packed[n * pts + i] = w * src[i];
    }
    fft::forward(shape_, packed.data(), component(c).data());
  }
}

double SpacetimeSpectrum::tau_resolution() const { return kTwoPi / (static_cast<double>(steps_) * dt_); }

double SpacetimeSpectrum::tau_nyquist() const { return kPi / dt_; }

double SpacetimeSpectrum::mass_scale() const {
  const double total = static_cast<double>(steps_) * static_cast<double>(grid_.points());
  return dt_ * grid_.cell_volume() / total;
}

SpaceTimeBlock SpacetimeSpectrum::inverse() const {
  const std::size_t pts = grid_.points();
  RealVector packed(steps_ * pts);
  std::vector<Field> snaps(steps_, Field(grid_, components_));
  for (int c = 0; c < components_; ++c) {
    fft::inverse(shape_, component(c).data(), packed.data());
    for (std::size_t n = 0; n < steps_; ++n) {
      auto dst = snaps[n].component(c);
      for (std::size_t i = 0; i < pts; ++i) dst[i] = packed[n * pts + i];
    }
  }
  return SpaceTimeBlock(t0_, dt_, std::move(snaps), Taper::none);
}

// ---------------------------------------------------------------------------

namespace {

double smooth_step_f(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

// 0 at y <= 0, 1 at y >= 1, C∞ in between.
double smooth_step(double y) {
  const double a = smooth_step_f(y);
  const double b = smooth_step_f(1.0 - y);
  return a / (a + b);
}

}  // namespace

double cone_cutoff(double tau, double xi_norm2, const ConeThresholds& th) {
  const double x4 = xi_norm2 * xi_norm2;
  const double denom = tau * tau + x4;
  if (denom == 0.0) return 0.0;
  const double r = std::abs(tau * tau - x4) / denom;
  if (r <= th.inner) return 1.0;
  if (r >= th.outer) return 0.0;
  return smooth_step((th.outer - r) / (th.outer - th.inner));
}

ScaleRange frequency_range(const SpacetimeSpectrum& s) {
  double lo = INFINITY;
  double hi = 0.0;
  s.for_each([&](std::size_t, double tau, double x2, double, bool) {
    const double rho = spacetime_frequency(tau, x2);
    if (rho > 0.0) {
      lo = std::min(lo, rho);
      hi = std::max(hi, rho);
    }
  });
  return {lo, hi};
}

ScaleRange modulation_range(const SpacetimeSpectrum& s) {
  double hi = 0.0;
  s.for_each([&](std::size_t, double tau, double x2, double, bool) {
    if (tau != 0.0 || x2 != 0.0) hi = std::max(hi, modulation_weight(tau, std::sqrt(x2)));
  });
  return {s.tau_resolution(), hi};
}

SpaceTimeBlock spacetime_project(const SpaceTimeBlock& block, const SpacetimeProjection& projection) {
  SpacetimeSpectrum spec(block);
  const double scale = projection.scale;
  auto reject = [&](const char* what, ScaleRange r) {
    std::ostringstream os;
    os << what << " " << scale << " is not resolvable; resolvable range is [" << r.lo << ", " << r.hi << "]";
    throw Unresolvable(os.str());
  };
  if (projection.kind == SpacetimeFilter::frequency) {
    const ScaleRange r = frequency_range(spec);
    if (!(2.0 * scale > r.lo && 0.5 * scale < r.hi)) reject("frequency", r);
  } else if (projection.kind == SpacetimeFilter::modulation) {
    const ScaleRange r = modulation_range(spec);
    if (!(2.0 * scale > r.lo && 0.5 * scale < r.hi)) reject("modulation", r);
  }

  auto symbol = [&](double tau, double x2) -> double {
    switch (projection.kind) {
      case SpacetimeFilter::frequency:
        return lp_phi(spacetime_frequency(tau, x2) / scale);
      case SpacetimeFilter::modulation:
        if (tau == 0.0 && x2 == 0.0) return 0.0;
        return lp_phi(modulation_weight(tau, std::sqrt(x2)) / scale);
      case SpacetimeFilter::nearcone:
        return cone_cutoff(tau, x2, projection.cone);
      case SpacetimeFilter::farcone:
        return 1.0 - cone_cutoff(tau, x2, projection.cone);
    }
    return 0.0;
  };
  for (int c = 0; c < spec.components(); ++c) {
    auto coeffs = spec.component(c);
    spec.for_each([&](std::size_t i, double tau, double x2, double, bool) { coeffs[i] *= symbol(tau, x2); });
  }
  return spec.inverse();
}

double modulation_mass_fraction_above(const SpaceTimeBlock& block, double threshold) {
  SpacetimeSpectrum spec(block);
  const double total = spec.weighted_mass([](double, double) { return 1.0; });
  if (total == 0.0) return 0.0;
  const double above = spec.weighted_mass([&](double tau, double x2) {
    if (tau == 0.0 && x2 == 0.0) return 0.0;
    return modulation_weight(tau, std::sqrt(x2)) > threshold ? 1.0 : 0.0;
  });
  return above / total;
}

}  // namespace bwm
