#include <gtest/gtest.h>

#include <cmath>

#include "bwm/norms.hpp"
#include "bwm/suites.hpp"

using namespace bwm;

namespace {

// Snapshots of cos(k x₀) cos(ν t) on a d-dimensional grid.
SpaceTimeBlock standing_wave(const Grid& g, int k, double nu, int samples, double dt) {
  std::vector<Field> snaps;
  for (int n = 0; n < samples; ++n) {
    Field f(g, 1);
    for (std::size_t x = 0; x < g.points(); ++x) {
      const double x0 = g.coordinate(g.unflatten(x)[0]);
      f(0, x) = std::cos(g.wavenumber() * k * x0) * std::cos(nu * n * dt);
    }
    snaps.push_back(std::move(f));
  }
  return SpaceTimeBlock(0.0, dt, std::move(snaps));
}

double discrete_lp(const std::vector<double>& v, double p, double w) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  }
  double s = 0.0;
  for (double a : v) s += std::pow(std::abs(a), p) * w;
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST(Besov, TwoShellOracle) {
  const Grid g(1, 32, kTwoPi);
  Field f(g, 1);
  for (std::size_t x = 0; x < 32; ++x) {
    const double t = g.coordinate(static_cast<int>(x));
    f(0, x) = std::cos(t) + std::cos(4 * t);
  }
  const double rp = std::sqrt(kPi);
  EXPECT_NEAR(besov_norm(f, 1.0, 1.0).value, 5.0 * rp, 1e-12);
  EXPECT_NEAR(besov_norm(f, 1.0, 2.0).value, std::sqrt(17.0) * rp, 1e-12);
  EXPECT_NEAR(besov_norm(f, 0.5, INFINITY).value, 2.0 * rp, 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 1.0).value, std::sqrt(17.0 * kPi), 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 2.0).value, std::sqrt(257.0 * kPi), 1e-10);
  const NormValue v = besov_norm(f, 1.0, 1.0);
  const ShellRange r = resolvable_shells(g);
  EXPECT_EQ(v.truncation_low, r.lo);
  EXPECT_EQ(v.truncation_high, r.hi);
}

TEST(Besov, SingleShellMatchesSobolev) {
  const Grid g(2, 16, kTwoPi);
  Field f(g, 2);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const IntVec i = g.unflatten(x);
    f(1, x) = std::sin(2 * g.coordinate(i[1]));
  }
  for (double s : {0.0, 1.0, 1.5, 3.0}) {
    EXPECT_NEAR(besov_norm(f, s, 2.0).value, sobolev_norm(f, s).value, 1e-12 * sobolev_norm(f, s).value);
  }
}

TEST(Besov, HomogeneityAndTriangleInequality) {
  const Grid g(3, 16, 5.0);
  const Field f = random_smooth_field(g, 2, 8, 5);
  const Field h = random_smooth_field(g, 2, 9, 5);
  for (double p : {1.0, 2.0, 3.0, double(INFINITY)}) {
    const double nf = besov_norm(f, 1.5, p).value;
    EXPECT_NEAR(besov_norm(-2.5 * f, 1.5, p).value, 2.5 * nf, 1e-12 * nf);
    EXPECT_LE(besov_norm(f + h, 1.5, p).value, nf + besov_norm(h, 1.5, p).value + 1e-12);
  }
  EXPECT_NEAR(sobolev_norm(3.0 * f, 2.0).value, 3.0 * sobolev_norm(f, 2.0).value, 1e-10);
  // Constants carry no homogeneous norm.
  Field c(g, 1);
  for (std::size_t x = 0; x < g.points(); ++x) c(0, x) = 4.0;
  EXPECT_LT(besov_norm(c, 1.0, 1.0).value, 1e-12);
}

TEST(Xbp, ZeroBlockHasZeroNorm) {
  const Grid g(1, 16, kTwoPi);
  const SpaceTimeBlock b(0.0, 0.1, std::vector<Field>(16, Field(g, 1)));
  const XbpResult r = xbp_norm(b, DyadicIndex(1), 0.5, 2.0);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Xbp, ModulationShellFollowsTemporalFrequency) {
  const Grid g(1, 16, kTwoPi);
  // On the characteristic τ = |ξ|² the symbol weight vanishes; off it the mass moves up.
  const XbpResult on = xbp_norm(standing_wave(g, 2, 4.0, 256, 0.05), DyadicIndex(1), 0.5, 2.0);
  const XbpResult off = xbp_norm(standing_wave(g, 2, 0.0, 256, 0.05), DyadicIndex(1), 0.5, 2.0);
  const XbpResult far = xbp_norm(standing_wave(g, 2, 12.0, 256, 0.05), DyadicIndex(1), 0.5, 2.0);
  EXPECT_TRUE(on.reliable);
  EXPECT_TRUE(off.reliable);
  EXPECT_LT(on.dominant_shell, off.dominant_shell);
  EXPECT_LT(off.dominant_shell, far.dominant_shell);
  EXPECT_GT(on.concentration, 0.8);
  double total = 0.0;
  for (double w : far.shell_fraction) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Xbp, IncreasesWithB) {
  const Grid g(1, 16, kTwoPi);
  const SpaceTimeBlock b = standing_wave(g, 2, 12.0, 256, 0.05);
  double prev = 0.0;
  for (double bb : {-0.5, 0.0, 0.5, 1.0}) {
    const double v = xbp_norm(b, DyadicIndex(1), bb, 2.0).value;
    EXPECT_GT(v, prev) << bb;
    prev = v;
  }
}

TEST(Xbp, PoorSamplingIsFlagged) {
  const Grid g(1, 16, kTwoPi);
  // τ = 55 sits close to the temporal Nyquist π/dt ≈ 62.8.
  const XbpResult r = xbp_norm(standing_wave(g, 2, 55.0, 64, 0.05), DyadicIndex(3), 0.5, 2.0);
  EXPECT_FALSE(r.reliable);
  EXPECT_GT(r.mass_outside, 0.2);
}

TEST(Lateral, SeparableDataFactorizes) {
  const Grid g(2, 16, 4.0);
  const int N = 10;
  const double dt = 0.2;
  std::vector<double> a(16), b(16), c(N);
  for (int i = 0; i < 16; ++i) {
    a[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(0.7 * i);
    b[static_cast<std::size_t>(i)] = std::cos(0.3 * i) - 0.2;
  }
  for (int n = 0; n < N; ++n) c[static_cast<std::size_t>(n)] = 1.0 + 0.1 * n * n;
  std::vector<Field> snaps;
  for (int n = 0; n < N; ++n) {
    Field f(g, 1);
    for (std::size_t x = 0; x < g.points(); ++x) {
      const IntVec i = g.unflatten(x);
      f(0, x) = a[static_cast<std::size_t>(i[0])] * b[static_cast<std::size_t>(i[1])] * c[static_cast<std::size_t>(n)];
    }
    snaps.push_back(std::move(f));
  }
  const SpaceTimeBlock blk(0.0, dt, std::move(snaps));
  const double h = g.spacing();
  for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{1.0, 3.0}, std::pair{double(INFINITY), 2.0}, std::pair{4.0, 1.5}}) {
    const double expect = discrete_lp(a, p, h) * discrete_lp(b, q, h) * discrete_lp(c, q, dt);
    EXPECT_NEAR(lateral_norm(blk, make_direction({1, 0}), p, q), expect, 1e-12 * expect) << p << " " << q;
    const double swapped = discrete_lp(b, p, h) * discrete_lp(a, q, h) * discrete_lp(c, q, dt);
    EXPECT_NEAR(lateral_norm(blk, make_direction({0, -1}), p, q), swapped, 1e-12 * swapped);
  }
  EXPECT_THROW(lateral_norm(blk, make_direction({1, 2}), 2, 2), InvalidArgument);
  EXPECT_THROW(lateral_norm(blk, make_direction({1, 0, 0}), 2, 2), InvalidArgument);
}

TEST(Strichartz, ConstantInTimeSeparates) {
  const Grid g(1, 16, 2.0);
  Field f(g, 1);
  std::vector<double> a(16);
  for (std::size_t x = 0; x < 16; ++x) f(0, x) = a[x] = std::sin(0.4 * static_cast<double>(x)) + 0.1;
  const SpaceTimeBlock b(0.0, 0.5, std::vector<Field>(8, f));
  EXPECT_NEAR(strichartz_norm(b, 2.0, 4.0), std::sqrt(8 * 0.5) * discrete_lp(a, 4.0, g.spacing()), 1e-13);
  EXPECT_NEAR(strichartz_norm(b, INFINITY, 1.0), discrete_lp(a, 1.0, g.spacing()), 1e-13);
}

TEST(Admissible, Examples) {
  EXPECT_TRUE(admissible(INFINITY, 2.0, 1));
  EXPECT_FALSE(admissible(2.0, INFINITY, 1));
  EXPECT_FALSE(admissible(2.0, INFINITY, 2));  // endpoint excluded
  EXPECT_TRUE(admissible(2.0, INFINITY, 3));
  EXPECT_TRUE(admissible(4.0, 4.0, 2));
  EXPECT_FALSE(admissible(4.0, 3.0, 2));
  EXPECT_TRUE(admissible(2.0, 4.0, 4));
  EXPECT_FALSE(admissible(2.0, 4.0, 3));
}

TEST(NormSpec, Validation) {
  NormSpec s;
  EXPECT_NO_THROW(validate(s));
  s.p = 0.5;
  EXPECT_THROW(validate(s), InvalidArgument);
  s = {};
  s.family = NormFamily::xbp;
  s.b = 1.5;
  EXPECT_THROW(validate(s), InvalidArgument);
  s = {};
  s.q = NAN;
  EXPECT_THROW(validate(s), InvalidArgument);
  for (auto f : {NormFamily::besov, NormFamily::sobolev, NormFamily::xbp, NormFamily::lateral, NormFamily::mixed_strichartz}) {
    EXPECT_EQ(norm_family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(norm_family_from_string("bmo"), InvalidArgument);
}
