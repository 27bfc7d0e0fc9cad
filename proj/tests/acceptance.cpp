// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bwm/bilinear.hpp"
#include "bwm/evolution.hpp"
#include "bwm/initial_data.hpp"
#include "bwm/nonlinearity.hpp"
#include "bwm/norms.hpp"
#include "bwm/propagator.hpp"
#include "bwm/spectral.hpp"
#include "bwm/suites.hpp"

using namespace bwm;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += (cond ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_abs_diff(const Field& a, const Field& b) { return max_abs(a - b); }

// ---------------------------------------------------------------------------

Outcome linear_exactness() {
  Outcome out;
  const Grid g(3, 16, kTwoPi);
  const int modes[20][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},  {1, -1, 2}, {2, 0, -1}, {3, 1, 1},
                            {-2, 2, 2}, {4, 0, 0}, {0, -3, 2}, {1, 2, 3}, {5, -1, 0}, {-4, 3, 1}, {2, 5, -2},
                            {6, 0, 1}, {0, 0, -7}, {3, -3, 3}, {7, 1, -1}, {-5, 4, 2}, {2, -6, 4}};
  double worst = 0.0;
  for (int m = 0; m < 20; ++m) {
    const int* k = modes[m];
    const double omega = static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    const double A = 0.7 + 0.01 * m;
    const double B = -0.4 + 0.03 * m;
    Field c(g, 1), s(g, 1);
    for (std::size_t x = 0; x < g.points(); ++x) {
      const IntVec idx = g.unflatten(x);
      long long lattice = 0;
      for (int a = 0; a < 3; ++a) lattice += static_cast<long long>(k[a]) * idx[static_cast<std::size_t>(a)];
      const double phase = kTwoPi * static_cast<double>(((lattice % 16) + 16) % 16) / 16.0;
      c(0, x) = std::cos(phase);
      s(0, x) = std::sin(phase);
    }
    const State s0(A * c, (B * omega) * s, 0.0);
    for (int j = 0; j <= 20; ++j) {
      const double t = 0.5 * j;
      const State st = linear_flow(s0, t);
      const Field eu = (A * std::cos(omega * t)) * c + (B * std::sin(omega * t)) * s;
      const Field ev = (-A * omega * std::sin(omega * t)) * c + (B * omega * std::cos(omega * t)) * s;
      const double scale = std::abs(A) + std::abs(B);
      worst = std::max(worst, max_abs_diff(st.u, eu) / scale);
      worst = std::max(worst, max_abs_diff(st.ut, ev) / (omega * scale));
    }
  }
  out.require(worst < 1e-12, "eigenmode relative error " + fmt("%.3e", worst) + " < 1e-12");

  double fact = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const State s0(random_smooth_field(g, 3, seed, 4, true), random_smooth_field(g, 3, seed + 100, 4, true), 0.0);
    for (double dt : {0.3, 1.7, 10.0}) fact = std::max(fact, schrodinger_factorization_check(s0, dt));
  }
  out.require(fact < 1e-11, "factorization residual " + fmt("%.3e", fact) + " < 1e-11");
  return out;
}

Outcome null_form_identity() {
  Outcome out;
  const int dims[10] = {1, 1, 1, 1, 2, 2, 2, 3, 3, 3};
  double worst = 0.0;
  double worst_ratio = INFINITY;
  for (int b = 0; b < 10; ++b) {
    const Grid g(dims[b], 16, kTwoPi);
    const int L = 3;
    std::vector<double> v{0.0, 1.0, 0.0};
    const BilinearFamily Q =
        b % 2 == 0 ? BilinearFamily::random_linear(L, 40 + static_cast<std::uint64_t>(b)) : BilinearFamily::dot_times_vector(v);
    const std::uint64_t seed = 500 + static_cast<std::uint64_t>(b);
    const auto coarse = null_form(analytic_block(g, L, 1e-2, 9, seed), Q, 4);
    const auto fine = null_form(analytic_block(g, L, 5e-3, 9, seed), Q, 4);
    worst = std::max(worst, coarse.discrepancy);
    worst_ratio = std::min(worst_ratio, coarse.discrepancy / fine.discrepancy);
  }
  out.require(worst < 1e-8, "max relative discrepancy " + fmt("%.3e", worst) + " < 1e-8");
  out.require(worst_ratio >= 12.0, "min halving ratio " + fmt("%.2f", worst_ratio) + " >= 12");
  return out;
}

Outcome sphere_specialization() {
  Outcome out;
  const TargetManifold sphere = TargetManifold::sphere(3);
  const int dims[10] = {1, 1, 1, 2, 2, 2, 2, 3, 3, 3};
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Grid g(dims[i], 32, kTwoPi);
    const auto block = sphere_block(g, 3, 0.05, 9, 900 + static_cast<std::uint64_t>(i), 0.3);
    const State s(block.snapshot(4), block.velocities()[4], 0.0);
    const Field a = sphere_nonlinearity(s);
    const Field b = general_nonlinearity(s, sphere);
    worst = std::max(worst, max_abs_diff(a, b) / max_abs(a));
  }
  out.require(worst < 1e-9, "max relative difference " + fmt("%.3e", worst) + " < 1e-9");
  return out;
}

Outcome conservation() {
  Outcome out;
  RunConfig cfg;
  cfg.dim = 3;
  cfg.n = 32;
  cfg.t_final = 1.0;
  cfg.record_every = 1000;
  cfg.data.kind = ProfileKind::plane_mode;
  cfg.data.delta = 0.05;
  cfg.data.seed = 1;
  const TargetManifold sphere = TargetManifold::sphere(3);
  const State s0 = generate_initial_data(cfg.grid(), sphere, cfg.data);
  const Trajectory a = evolve(cfg, s0, sphere);
  RunConfig half = cfg;
  half.dt = 0.5 * cfg.timestep();
  const Trajectory b = evolve(half, s0, sphere);
  out.require(!a.halted && !b.halted, "no halt");
  out.require(a.max_energy_drift < 1e-5, "energy drift " + fmt("%.3e", a.max_energy_drift) + " < 1e-5");
  out.require(a.max_geometric_drift < 1e-5, "geometric drift " + fmt("%.3e", a.max_geometric_drift) + " < 1e-5");
  out.require(a.max_tangency_drift < 1e-5, "tangency drift " + fmt("%.3e", a.max_tangency_drift) + " < 1e-5");
  const double re = a.max_energy_drift / b.max_energy_drift;
  const double rg = a.max_geometric_drift / b.max_geometric_drift;
  const double rt = a.max_tangency_drift / b.max_tangency_drift;
  out.require(re >= 3.5, "energy ratio " + fmt("%.3f", re) + " >= 3.5");
  out.require(rg >= 3.5, "geometric ratio " + fmt("%.3f", rg) + " >= 3.5");
  out.require(rt >= 3.5, "tangency ratio " + fmt("%.3f", rt) + " >= 3.5");
  return out;
}

Outcome picard_contraction() {
  Outcome out;
  RunConfig cfg;
  cfg.dim = 3;
  cfg.n = 16;
  cfg.t_final = 1.0;
  cfg.record_every = 4;
  cfg.picard_iterations = 6;
  const TargetManifold sphere = TargetManifold::sphere(3);
  const double deltas[3] = {0.01, 0.02, 0.04};
  double rates[3];
  for (int i = 0; i < 3; ++i) {
    cfg.data.delta = deltas[i];
    const State s0 = generate_initial_data(cfg.grid(), sphere, cfg.data);
    const PicardResult res = picard_solve(cfg, s0, sphere);
    const std::string tag = fmt("delta %.2f", deltas[i]);
    out.require(!res.halted && res.d.size() == 7, tag + " completed");
    if (res.d.size() != 7) return out;
    bool decay = true;
    double logsum = 0.0;
    for (int k = 2; k <= 5; ++k) {
      decay = decay && res.d[static_cast<std::size_t>(k) + 1] < res.d[static_cast<std::size_t>(k)] &&
              res.r[static_cast<std::size_t>(k)] < 0.5;
      logsum += std::log(res.r[static_cast<std::size_t>(k)]);
    }
    rates[i] = std::exp(logsum / 4.0);
    out.require(decay, tag + " geometric decay k=2..6, r=" + fmt("%.4f", rates[i]));
  }
  for (int i = 1; i < 3; ++i) {
    const double q = (rates[i] / rates[0]) / (deltas[i] / deltas[0]);
    out.require(std::abs(q - 1.0) <= 0.3, fmt("r ratio / delta ratio %.3f", q) + " within 30%");
  }
  return out;
}

Outcome scaling_law() {
  Outcome out;
  const TargetManifold sphere = TargetManifold::sphere(3);
  for (int d = 1; d <= 4; ++d) {
    const Grid g(d, d == 4 ? 8 : 16, kTwoPi);
    InitialDataSpec spec;
    spec.delta = 0.3;
    const State s = generate_initial_data(g, sphere, spec);
    const ScalingReport rep = parabolic_rescale(s, 2.0);
    const double expected = std::pow(2.0, 4 - d);
    const double rel = std::abs(rep.measured - expected) / expected;
    out.require(rel < 1e-8, "d=" + std::to_string(d) + fmt(" ratio %.15g", rep.measured));
    if (d == 4) out.require(rep.measured == 1.0, "d=4 ratio exactly 1");
  }
  return out;
}

Outcome norm_machinery() {
  Outcome out;
  // Dyadic and angular partitions of unity.
  double part = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const Grid g(d, d == 3 ? 16 : 32, kTwoPi);
    const Field f = remove_mean(random_smooth_field(g, 2, 70 + static_cast<std::uint64_t>(d), 7));
    Field dy(g, 2);
    const ShellRange r = resolvable_shells(g);
    for (int j = r.lo; j <= r.hi; ++j) dy += littlewood_paley_project(f, DyadicIndex(j));
    part = std::max(part, max_abs_diff(dy, f) / max_abs(f));
    const DirectionSet fam(d);
    Field sec(g, 2);
    for (std::size_t i = 0; i < fam.size(); ++i) sec += sector_project(f, fam, fam[i]);
    part = std::max(part, max_abs_diff(sec, f) / max_abs(f));
  }
  out.require(part < 1e-10, "partition reconstruction " + fmt("%.3e", part) + " < 1e-10");

  // Lateral p = q against the plain space-time norm, summed directly here.
  double collapse = 0.0;
  {
    const Grid g(2, 16, kTwoPi);
    std::vector<Field> snaps;
    for (int n = 0; n < 12; ++n) snaps.push_back(random_smooth_field(g, 2, 300 + static_cast<std::uint64_t>(n), 5));
    const SpaceTimeBlock block(0.0, 0.1, snaps, Taper::none);
    for (double p : {1.0, 2.0, 3.5, 6.0}) {
      double sum = 0.0;
      for (const auto& f : snaps) {
        for (std::size_t x = 0; x < g.points(); ++x) {
          const double m = std::hypot(f(0, x), f(1, x));
          sum += std::pow(m, p);
        }
      }
      const double plain = std::pow(sum * 0.1 * g.cell_volume(), 1.0 / p);
      for (auto e : {make_direction({1, 0}), make_direction({0, -1}), make_direction({1, 1}), make_direction({1, -1})}) {
        collapse = std::max(collapse, std::abs(lateral_norm(block, e, p, p) - plain) / plain);
      }
    }
  }
  out.require(collapse < 1e-10, "lateral collapse " + fmt("%.3e", collapse) + " < 1e-10");

  // Single dyadic shell |k| = 1: every s gives the L² norm. Roundoff leaking into
  // higher shells grows like eps * lambda_max^s, so s stays moderate.
  double single = 0.0;
  {
    const Grid g(3, 16, kTwoPi);
    Field f(g, 1);
    for (std::size_t x = 0; x < g.points(); ++x) {
      const IntVec idx = g.unflatten(x);
      f(0, x) = std::cos(g.coordinate(idx[0])) + 0.5 * std::sin(g.coordinate(idx[2]));
    }
    const double l2 = l2_norm(f);
    for (double s : {-1.0, 0.0, 1.0, 1.5, 2.0}) {
      for (double p : {1.0, 2.0, double(INFINITY)}) single = std::max(single, std::abs(besov_norm(f, s, p).value - l2) / l2);
    }
  }
  out.require(single < 1e-14, "single-shell Besov " + fmt("%.3e", single) + " < 1e-14");

  // Free wave on the characteristic: 128 Hann samples, τ on the lattice.
  double conc = 1.0;
  {
    const Grid g(2, 16, kTwoPi);
    const double dt = kTwoPi / 32.0;
    std::vector<Field> snaps;
    for (int n = 0; n < 128; ++n) {
      Field f(g, 1);
      for (std::size_t x = 0; x < g.points(); ++x) {
        const IntVec idx = g.unflatten(x);
        f(0, x) = std::cos(g.coordinate(idx[0]) + g.coordinate(idx[1]) - 2.0 * n * dt);
      }
      snaps.push_back(std::move(f));
    }
    const SpaceTimeBlock block(0.0, dt, snaps, Taper::hann);
    for (int lam : {0, 1}) conc = std::min(conc, xbp_norm(block, DyadicIndex(lam), 0.5, 2.0).concentration);
  }
  out.require(conc >= 0.8, "free-wave concentration " + fmt("%.4f", conc) + " >= 0.8");

  // Lateral smoothing: Schrödinger-type packets, R(λ) = ‖u₀‖₂ / ‖u‖_{L^∞_x L²_t}.
  std::vector<double> logl, logr;
  {
    const Grid g(1, 1024, 128.0);
    const double T = 3.0;
    const int steps = 601;
    const double dt = T / (steps - 1);
    for (double lam : {2.0, 4.0, 8.0}) {
      // f = exp(−(x−c)²/(2σ²)) e^{iλx}; u = Re e^{itΔ} f with u₁ = −Im Δf.
      const double sigma = 2.0;
      SpectralField Fre(g, 1), Fim(g, 1);
      Field fr(g, 1), fi(g, 1);
      for (int i = 0; i < g.n(); ++i) {
        const double x = g.coordinate(i) - 0.5 * g.box();
        const double env = std::exp(-x * x / (2.0 * sigma * sigma));
        fr(0, static_cast<std::size_t>(i)) = env * std::cos(lam * x);
        fi(0, static_cast<std::size_t>(i)) = env * std::sin(lam * x);
      }
      const Field lap_im = transform_inverse(laplacian(transform_forward(fi)));
      const State s0(fr, -1.0 * lap_im, 0.0);
      std::vector<Field> snaps;
      for (int n = 0; n < steps; ++n) snaps.push_back(linear_flow(s0, n * dt).u);
      const SpaceTimeBlock block(0.0, dt, snaps, Taper::none);
      const double lat = lateral_norm(block, make_direction({1.0}), INFINITY, 2.0);
      logl.push_back(std::log(lam));
      logr.push_back(std::log(l2_norm(fr) / lat));
    }
  }
  const double ml = (logl[0] + logl[1] + logl[2]) / 3.0;
  const double mr = (logr[0] + logr[1] + logr[2]) / 3.0;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (logl[static_cast<std::size_t>(i)] - ml) * (logr[static_cast<std::size_t>(i)] - mr);
    den += (logl[static_cast<std::size_t>(i)] - ml) * (logl[static_cast<std::size_t>(i)] - ml);
  }
  const double slope = num / den;
  out.require(logr[1] > logr[0] && logr[2] > logr[1], "smoothing gain monotone in lambda");
  out.require(std::abs(slope - 0.5) <= 0.15, "smoothing exponent " + fmt("%.4f", slope) + " in 0.5 +- 0.15");
  return out;
}

Outcome admissibility_table() {
  Outcome out;
  // Checked by hand and with exact rational arithmetic.
  const double pairs[10][2] = {{INFINITY, 2}, {2, INFINITY}, {2, 6}, {4, 3}, {4, 4},
                               {8, 4},        {2, 4},        {3, 6}, {6, 3}, {1, INFINITY}};
  const char* table[5] = {
      "TFFFFTFFFF",  // d = 1
      "TFFFTTFTTF",  // d = 2
      "TTTTTTFTTF",  // d = 3
      "TTTTTTTTTT",  // d = 4
      "TTTTTTTTTT",  // d = 5
  };
  int mismatches = 0;
  for (int d = 1; d <= 5; ++d) {
    for (int i = 0; i < 10; ++i) {
      const bool expected = table[d - 1][i] == 'T';
      if (admissible(pairs[i][0], pairs[i][1], d) != expected) ++mismatches;
    }
  }
  out.require(mismatches == 0, std::to_string(50 - mismatches) + "/50 pairs match");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"linear exactness", 10.0, linear_exactness},
      {"null-form identity", 60.0, null_form_identity},
      {"sphere specialization", 30.0, sphere_specialization},
      {"conservation and constraint", 300.0, conservation},
      {"picard contraction", 600.0, picard_contraction},
      {"scaling law", 10.0, scaling_law},
      {"norm machinery", 120.0, norm_machinery},
      {"admissibility table", 1.0, admissibility_table},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < criteria[i].limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %zu %s (%.2f s, limit %.0f s%s): %s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                criteria[i].limit_seconds, in_time ? "" : ", EXCEEDED", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
