#include "bwm/initial_data.hpp"

#include <cmath>
#include <random>

namespace bwm {

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::geodesic_bump:
      return "geodesic-bump";
    case ProfileKind::multi_bump:
      return "multi-bump";
    case ProfileKind::plane_mode:
      return "plane-mode";
  }
  return "geodesic-bump";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  for (auto k : {ProfileKind::geodesic_bump, ProfileKind::multi_bump, ProfileKind::plane_mode}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown initial data profile '" + s + "'");
}

double bump(double r2, double sharpness) {
  if (!(r2 < 1.0)) return 0.0;
  return std::exp(-sharpness * r2 / (1.0 - r2));
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gaussian(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(kTwoPi * u2);
}

struct BumpSite {
  std::array<double, kMaxDim> centre{};
  double radius;
  double sign;
};

}  // namespace

std::pair<std::vector<double>, std::vector<double>> random_frame(int L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::size_t>(L);
  std::vector<double> p(n), q(n);
  for (;;) {
    for (auto& v : p) v = gaussian(rng);
    for (auto& v : q) v = gaussian(rng);
    double pp = 0.0;
    for (double v : p) pp += v * v;
    if (pp < 1e-6) continue;
    for (auto& v : p) v /= std::sqrt(pp);
    double pq = 0.0;
    for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
    for (std::size_t i = 0; i < n; ++i) q[i] -= pq * p[i];
    double qq = 0.0;
    for (double v : q) qq += v * v;
    if (qq < 1e-6) continue;
    for (auto& v : q) v /= std::sqrt(qq);
    return {p, q};
  }
}

State generate_initial_data(const Grid& grid, const TargetManifold& target, const InitialDataSpec& spec) {
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) throw InvalidArgument("initial data amplitude must be >= 0");
  if (!(spec.radius > 0.0 && spec.radius <= 0.25)) throw InvalidArgument("bump radius must be in (0, 0.25] of the box");
  if (!(spec.sharpness > 0.0)) throw InvalidArgument("bump sharpness must be positive");
  const int L = target.ambient_dim();
  const int d = grid.dim();
  auto [p, q] = random_frame(L, spec.seed);

  std::vector<BumpSite> sites;
  const double box = grid.box();
  if (spec.kind == ProfileKind::geodesic_bump) {
    BumpSite s;
    for (int a = 0; a < d; ++a) s.centre[static_cast<std::size_t>(a)] = 0.5 * box;
    s.radius = spec.radius * box;
    s.sign = 1.0;
    sites.push_back(s);
  } else if (spec.kind == ProfileKind::multi_bump) {
    // Three smaller bumps, each fully inside the central half of the box.
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int b = 0; b < 3; ++b) {
      BumpSite s;
      s.radius = 0.4 * spec.radius * box;
      for (int a = 0; a < d; ++a) {
        const double room = 0.25 * box - s.radius;
        s.centre[static_cast<std::size_t>(a)] = 0.5 * box + room * (2.0 * uniform01(rng) - 1.0);
      }
      s.sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
      sites.push_back(s);
    }
  }

  Field u(grid, L), ut(grid, L);
  const double k = grid.wavenumber() * spec.mode;
  for (std::size_t pt = 0; pt < grid.points(); ++pt) {
    const IntVec idx = grid.unflatten(pt);
    double prof = 0.0;
    double prof2 = 0.0;
    if (spec.kind == ProfileKind::plane_mode) {
      const double x = grid.coordinate(idx[0]);
      prof = std::cos(k * x);
      prof2 = std::sin(k * x);
    } else {
      for (const auto& s : sites) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const double y = (grid.coordinate(idx[static_cast<std::size_t>(a)]) - s.centre[static_cast<std::size_t>(a)]) / s.radius;
          r2 += y * y;
        }
        prof += s.sign * bump(r2, spec.sharpness);
        prof2 += s.sign * bump(1.5625 * r2, spec.sharpness);
      }
    }
    const double th = spec.delta * prof;
    const double c = std::cos(th);
    const double sn = std::sin(th);
    std::vector<double> u0(static_cast<std::size_t>(L)), u1(static_cast<std::size_t>(L));
    for (std::size_t i = 0; i < u0.size(); ++i) {
      u0[i] = c * p[i] + sn * q[i];
      u1[i] = spec.delta * prof2 * (-sn * p[i] + c * q[i]);
    }
    if (!target.is_round()) {
      const auto J = target.phi_jacobian(u0);
      std::vector<double> v(u1.size(), 0.0);
      for (std::size_t i = 0; i < u1.size(); ++i)
        for (std::size_t j = 0; j < u1.size(); ++j) v[i] += J[i * u1.size() + j] * u1[j];
      u1 = v;
      u0 = target.phi(u0);
    }
    for (int i = 0; i < L; ++i) {
      u(i, pt) = u0[static_cast<std::size_t>(i)];
      ut(i, pt) = u1[static_cast<std::size_t>(i)];
    }
  }
  return State(std::move(u), std::move(ut), 0.0);
}

}  // namespace bwm
