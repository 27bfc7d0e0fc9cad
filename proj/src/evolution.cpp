#include "bwm/evolution.hpp"

#include <cmath>

#include "bwm/nonlinearity.hpp"
#include "bwm/norms.hpp"
#include "bwm/spectral.hpp"

namespace bwm {

double RunConfig::timestep() const { return dt > 0.0 ? dt : default_timestep(grid(), safety); }

int RunConfig::steps() const {
  const double k = t_final / timestep();
  const double r = std::round(k);
  return static_cast<int>(std::abs(k - r) < 1e-9 * std::max(1.0, k) ? r : std::ceil(k));
}

void RunConfig::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be positive");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive (or 0 for the default)");
  if (!(safety > 0.0)) throw InvalidArgument("safety factor must be positive");
  if (!(data.delta >= 0.0)) throw InvalidArgument("delta must be non-negative");
  if (record_every < 1) throw InvalidArgument("record_every must be at least 1");
  if (picard_iterations < 2) throw InvalidArgument("picard_iterations must be at least 2");
  (void)grid();
}

double energy(const State& s) {
  const SpectralField V = transform_forward(s.ut);
  const SpectralField LU = laplacian(transform_forward(s.u));
  const double a = l2_norm(V);
  const double b = l2_norm(LU);
  return 0.5 * (a * a + b * b);
}

ConstraintDrift constraint_monitor(const State& s, const TargetManifold& target) {
  const int L = s.components();
  if (L != target.ambient_dim()) throw InvalidArgument("state components do not match the target dimension");
  ConstraintDrift out;
  std::vector<double> p(static_cast<std::size_t>(L));
  for (std::size_t pt = 0; pt < s.grid().points(); ++pt) {
    for (int c = 0; c < L; ++c) p[static_cast<std::size_t>(c)] = s.u(c, pt);
    out.geometric = std::max(out.geometric, target.distance(p));
    const auto nu = target.normal(p);
    double dot = 0.0;
    for (int c = 0; c < L; ++c) dot += s.ut(c, pt) * nu[static_cast<std::size_t>(c)];
    out.tangency = std::max(out.tangency, std::abs(dot));
  }
  return out;
}

State renormalize(const State& s, const TargetManifold& target) {
  const int L = s.components();
  const auto Ls = static_cast<std::size_t>(L);
  Field u = s.u;
  Field ut = s.ut;
  std::vector<double> p(Ls);
  for (std::size_t pt = 0; pt < s.grid().points(); ++pt) {
    for (int c = 0; c < L; ++c) p[static_cast<std::size_t>(c)] = s.u(c, pt);
    const auto q = target.project(p);
    const auto np = target.nearest_point(q);
    for (std::size_t i = 0; i < Ls; ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < Ls; ++j) v += np.dpi[i * Ls + j] * s.ut(static_cast<int>(j), pt);
      u(static_cast<int>(i), pt) = q[i];
      ut(static_cast<int>(i), pt) = v;
    }
  }
  return State(std::move(u), std::move(ut), s.time);
}

SpaceTimeBlock Trajectory::block(Taper window) const {
  if (snapshots.size() < 8) throw InvalidArgument("trajectory has fewer than 8 recorded snapshots");
  std::vector<Field> u, ut;
  for (const auto& s : snapshots) {
    u.push_back(s.u);
    ut.push_back(s.ut);
  }
  const double dt = snapshots[1].time - snapshots[0].time;
  return SpaceTimeBlock(snapshots.front().time, dt, std::move(u), window, std::move(ut));
}

namespace {

MonitorRow monitor(const State& s, const TargetManifold& target, double e0, double forcing_integral) {
  MonitorRow row;
  row.time = s.time;
  row.energy = energy(s);
  row.energy_drift = e0 > 0.0 ? std::abs(row.energy - e0) / e0 : std::abs(row.energy);
  const auto drift = constraint_monitor(s, target);
  row.geometric_drift = drift.geometric;
  row.tangency_drift = drift.tangency;
  row.besov = besov_norm(s.u, 0.5 * s.grid().dim(), 1.0).value;
  row.sobolev = sobolev_norm(s.u, 2.0).value;
  row.forcing_l1l2 = forcing_integral;
  return row;
}

Forcing zero_forcing() {
  return [](const State& s) { return Field(s.grid(), s.components()); };
}

}  // namespace

Trajectory evolve(const RunConfig& cfg, const State& s0, const TargetManifold& target) {
  cfg.validate();
  if (s0.components() != target.ambient_dim()) throw InvalidArgument("state components do not match the target");
  const double dt = cfg.timestep();
  const int steps = cfg.steps();
  const Forcing base = cfg.nonlinear ? target_forcing(target) : zero_forcing();

  Trajectory tr{{}, {}, s0, false, "", 0.0, 0.0, 0.0};
  double fnorm_first = 0.0;
  double fnorm_second = 0.0;
  int call = 0;
  const Forcing counted = [&](const State& s) {
    Field f = base(s);
    (call++ % 2 == 0 ? fnorm_first : fnorm_second) = l2_norm(f);
    return f;
  };

  const double e0 = energy(s0);
  double integral = 0.0;
  auto record = [&](const State& s, bool snapshot) {
    tr.monitors.push_back(monitor(s, target, e0, integral));
    const auto& m = tr.monitors.back();
    tr.max_energy_drift = std::max(tr.max_energy_drift, m.energy_drift);
    tr.max_geometric_drift = std::max(tr.max_geometric_drift, m.geometric_drift);
    tr.max_tangency_drift = std::max(tr.max_tangency_drift, m.tangency_drift);
    if (snapshot) tr.snapshots.push_back(s);
  };
  record(s0, true);

  State cur = s0;
  for (int k = 0; k < steps; ++k) {
    const double h = std::min(dt, cfg.t_final - cur.time);
    if (!(h > 0.0)) break;
    try {
      State next = duhamel_step(cur, h, counted);
      if (cfg.renormalize) next = renormalize(next, target);
      integral += 0.5 * h * (fnorm_first + fnorm_second);
      cur = std::move(next);
    } catch (const ConstraintViolation&) {
      tr.halted = true;
      tr.flag = "constraint breach";
      break;
    } catch (const OutsideTube&) {
      tr.halted = true;
      tr.flag = "constraint breach";
      break;
    } catch (const NonFinite&) {
      tr.halted = true;
      tr.flag = "non-finite";
      break;
    }
    const bool snap = (k + 1) % cfg.record_every == 0 || k + 1 == steps;
    try {
      record(cur, snap);
    } catch (const OutsideTube&) {
      tr.halted = true;
      tr.flag = "constraint breach";
      break;
    }
    if (tr.monitors.back().geometric_drift > kConstraintHardLimit) {
      tr.halted = true;
      tr.flag = "constraint breach";
      break;
    }
  }
  tr.final_state = cur;
  return tr;
}

// ---------------------------------------------------------------------------

PicardResult picard_solve(const RunConfig& cfg, const State& s0, const TargetManifold& target) {
  cfg.validate();
  const double dt = cfg.timestep();
  const int steps = cfg.steps();
  // Iterates leave N, so the nonlinearity is taken in its form extended off N.
  const Forcing F = cfg.nonlinear ? Forcing([&target](const State& s) { return general_nonlinearity(s, target); })
                                  : zero_forcing();
  const Grid& g = s0.grid();
  const int L = s0.components();
  const double s_index = 0.5 * g.dim();
  const auto count = static_cast<std::size_t>(steps) + 1;

  std::vector<double> times(count);
  times[0] = s0.time;
  for (int n = 1; n <= steps; ++n) {
    times[static_cast<std::size_t>(n)] = std::min(s0.time + n * dt, s0.time + cfg.t_final);
  }
  auto sampled = [&](std::size_t n) { return n % static_cast<std::size_t>(cfg.record_every) == 0 || n + 1 == count; };

  // u_k = S u[0] + w_k. Keeping the Duhamel part w_k apart from the free
  // flow lets differences of iterates be formed without cancelling the O(1)
  // constant part of u.
  std::vector<State> free_flow;
  free_flow.reserve(count);
  for (std::size_t n = 0; n < count; ++n) free_flow.push_back(linear_flow(s0, times[n] - s0.time));

  PicardResult res;
  std::vector<Field> forcing(count, Field(g, L));  // 𝒬(u_k); u_0 ≡ 0 contributes nothing
  std::vector<State> w_prev;
  std::vector<State> w(count, State(Field(g, L), Field(g, L), s0.time));
  int growth = 0;
  for (int k = 0; k <= cfg.picard_iterations; ++k) {
    std::vector<State> w_next;
    w_next.reserve(count);
    w_next.emplace_back(Field(g, L), Field(g, L), s0.time);
    for (std::size_t n = 0; n + 1 < count; ++n) {
      const State& cur = w_next.back();
      const double h = times[n + 1] - times[n];
      SpectralField U = transform_forward(cur.u);
      SpectralField V = transform_forward(cur.ut);
      const SpectralField Fn = transform_forward(forcing[n]);
      for (std::size_t i = 0; i < V.coeffs().size(); ++i) V.coeffs()[i] += 0.5 * h * Fn.coeffs()[i];
      linear_flow_spectral(U, V, h);
      Field ut = transform_inverse(V);
      ut.axpy(0.5 * h, forcing[n + 1]);
      w_next.emplace_back(transform_inverse(U), std::move(ut), times[n + 1]);
    }
    double dk = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      if (!sampled(n)) continue;
      // d_0 compares u_1 = S u[0] + w_1 against u_0 ≡ 0.
      const Field diff = k == 0 ? free_flow[n].u + w_next[n].u : w_next[n].u - w[n].u;
      dk = std::max(dk, besov_norm(diff, s_index, 1.0).value);
    }
    res.d.push_back(dk);
    w = std::move(w_next);

    const std::size_t m = res.d.size();
    if (m >= 2) {
      growth = res.d[m - 1] > res.d[m - 2] ? growth + 1 : 0;
      if (growth >= 3) {
        res.halted = true;
        res.flag = "no contraction at this delta";
        break;
      }
    }
    if (k == cfg.picard_iterations) break;
    try {
      for (std::size_t n = 0; n < count; ++n) {
        forcing[n] = F(State(free_flow[n].u + w[n].u, free_flow[n].ut + w[n].ut, times[n]));
      }
    } catch (const Error&) {
      res.halted = true;
      res.flag = "no contraction at this delta";
      break;
    }
  }
  for (std::size_t k = 0; k + 1 < res.d.size(); ++k) res.r.push_back(res.d[k] > 0.0 ? res.d[k + 1] / res.d[k] : 0.0);
  for (std::size_t n = 0; n < count; ++n) {
    if (sampled(n)) res.last.emplace_back(free_flow[n].u + w[n].u, free_flow[n].ut + w[n].ut, times[n]);
  }
  return res;
}

// ---------------------------------------------------------------------------

ScalingReport parabolic_rescale(const State& s, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("scaling factor must be positive");
  int exp2 = 0;
  const double mant = std::frexp(lambda, &exp2);
  if (mant != 0.5) throw InvalidArgument("scaling factor must be a power of two");
  const Grid& g = s.grid();
  const Grid scaled_grid(g.dim(), g.n(), g.box() / lambda);
  Field u(scaled_grid, s.components());
  Field ut(scaled_grid, s.components());
  std::copy(s.u.values().begin(), s.u.values().end(), u.values().begin());
  std::copy(s.ut.values().begin(), s.ut.values().end(), ut.values().begin());
  ut *= lambda * lambda;
  ScalingReport rep{State(std::move(u), std::move(ut), s.time / (lambda * lambda)), lambda, 0.0,
                    std::pow(lambda, 4 - g.dim())};
  const double e = energy(s);
  rep.measured = e > 0.0 ? energy(rep.scaled) / e : 0.0;
  return rep;
}

}  // namespace bwm
