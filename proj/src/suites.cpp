#include "bwm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "bwm/evolution.hpp"
#include "bwm/initial_data.hpp"
#include "bwm/nonlinearity.hpp"
#include "bwm/norms.hpp"
#include "bwm/propagator.hpp"
#include "bwm/snapshot_io.hpp"
#include "bwm/spectral.hpp"

namespace bwm {

namespace {

double uniform_pm1(std::mt19937_64& rng) { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; }

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double max_abs_diff(const Field& a, const Field& b) { return max_abs(a - b); }

}  // namespace

Field random_smooth_field(const Grid& grid, int L, std::uint64_t seed, int max_mode, bool mean_free) {
  if (max_mode < 0) throw InvalidArgument("max_mode must be non-negative");
  std::mt19937_64 rng(seed);
  SpectralField F(grid, L);
  const double scale = static_cast<double>(grid.points());
  for (int c = 0; c < L; ++c) {
    auto coeffs = F.component(c);
    fft::for_each_mode(grid.shape(), [&](std::size_t i, const int* k, unsigned mask, double) {
      if (mask != 0) return;
      int k2 = 0;
      for (int a = 0; a < grid.dim(); ++a) {
        if (std::abs(k[a]) > max_mode) return;
        k2 += k[a] * k[a];
      }
      if (mean_free && k2 == 0) return;
      const double w = scale * std::exp(-0.125 * k2);
      const double re = uniform_pm1(rng);
      const double im = k2 == 0 ? 0.0 : uniform_pm1(rng);
      coeffs[i] = w * complex(re, im);
    });
  }
  Field f = transform_inverse(F);
  const double m = max_abs(f);
  if (m > 0.0) f *= 1.0 / m;
  return f;
}

SpaceTimeBlock analytic_block(const Grid& grid, int L, double dt, int samples, std::uint64_t seed,
                              double time_amplitude) {
  if (samples < 1 || !(dt > 0.0)) throw InvalidArgument("block needs positive dt and at least one sample");
  std::vector<Field> a;
  for (int j = 0; j <= 3; ++j) {
    a.push_back(random_smooth_field(grid, L, seed * 4 + static_cast<std::uint64_t>(j), 2));
    if (j > 0) a.back() *= time_amplitude;
  }
  const double t0 = -0.5 * (samples - 1) * dt;
  std::vector<Field> u, ut;
  for (int n = 0; n < samples; ++n) {
    const double t = t0 + n * dt;
    Field un(grid, L), vn(grid, L);
    double tp = 1.0;
    for (int j = 0; j <= 3; ++j) {
      un.axpy(tp, a[static_cast<std::size_t>(j)]);
      if (j < 3) vn.axpy((j + 1) * tp, a[static_cast<std::size_t>(j) + 1]);
      tp *= t;
    }
    u.push_back(std::move(un));
    ut.push_back(std::move(vn));
  }
  return SpaceTimeBlock(t0, dt, std::move(u), Taper::none, std::move(ut));
}

SpaceTimeBlock sphere_block(const Grid& grid, int L, double dt, int samples, std::uint64_t seed, double amplitude) {
  if (L < 2) throw InvalidArgument("sphere block needs L >= 2");
  if (samples < 1 || !(dt > 0.0)) throw InvalidArgument("block needs positive dt and at least one sample");
  std::vector<Field> th, ps;
  for (int j = 0; j < 3; ++j) {
    th.push_back(amplitude * random_smooth_field(grid, 1, seed * 8 + static_cast<std::uint64_t>(j), 2));
    ps.push_back(amplitude * random_smooth_field(grid, 1, seed * 8 + 4 + static_cast<std::uint64_t>(j), 2));
  }
  const bool third = L >= 3;
  const double t0 = -0.5 * (samples - 1) * dt;
  std::vector<Field> u, ut;
  for (int n = 0; n < samples; ++n) {
    const double t = t0 + n * dt;
    Field un(grid, L), vn(grid, L);
    for (std::size_t x = 0; x < grid.points(); ++x) {
      const double theta = th[0](0, x) + t * th[1](0, x) + t * t * th[2](0, x);
      const double theta_t = th[1](0, x) + 2.0 * t * th[2](0, x);
      const double psi = third ? ps[0](0, x) + t * ps[1](0, x) + t * t * ps[2](0, x) : 0.0;
      const double psi_t = third ? ps[1](0, x) + 2.0 * t * ps[2](0, x) : 0.0;
      const double ct = std::cos(theta), st = std::sin(theta);
      const double cp = std::cos(psi), sp = std::sin(psi);
      un(0, x) = ct;
      un(1, x) = st * cp;
      vn(0, x) = -st * theta_t;
      vn(1, x) = ct * cp * theta_t - st * sp * psi_t;
      if (third) {
        un(2, x) = st * sp;
        vn(2, x) = ct * sp * theta_t + st * cp * psi_t;
      }
    }
    u.push_back(std::move(un));
    ut.push_back(std::move(vn));
  }
  return SpaceTimeBlock(t0, dt, std::move(u), Taper::none, std::move(ut));
}

BilinearFamily bilinear_family_from_name(const std::string& name, int L, std::uint64_t seed) {
  if (name == "zero") return BilinearFamily::zero(L);
  if (name == "sphere") return BilinearFamily::sphere(L);
  if (name == "dot") {
    std::vector<double> v(static_cast<std::size_t>(L), 0.0);
    v[0] = 1.0;
    return BilinearFamily::dot_times_vector(v);
  }
  if (name == "random-linear") return BilinearFamily::random_linear(L, seed);
  throw InvalidArgument("unknown bilinear family '" + name + "'");
}

SpaceTimeBlock read_block_file(const std::string& path, Taper window) {
  auto records = read_snapshot_file(path);
  if (records.size() < 2) throw InvalidArgument("block file '" + path + "' needs at least two snapshots");
  const double t0 = records.front().time;
  const double dt = records[1].time - t0;
  if (!(dt > 0.0)) throw InvalidArgument("block file times must increase");
  std::vector<Field> fields;
  for (std::size_t n = 0; n < records.size(); ++n) {
    const double expect = t0 + static_cast<double>(n) * dt;
    if (std::abs(records[n].time - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
      throw InvalidArgument("block file times are not uniformly spaced");
    }
    fields.push_back(std::move(records[n].field));
  }
  return SpaceTimeBlock(t0, dt, std::move(fields), window);
}

// ---------------------------------------------------------------------------

namespace {

TargetManifold build_target(const RunConfig& run, std::uint64_t seed) {
  TargetManifold target(run.target);
  if (!target.is_round() && run.target.series_order > 0 && run.target.series_base.empty()) {
    // Expand about the far-field value of the generated data.
    const auto frame = random_frame(run.target.L, seed);
    target = target.with_series_base(target.phi(frame.first));
  }
  return target;
}

State initial_state(const RunConfig& run, const TargetManifold& target) {
  return generate_initial_data(run.grid(), target, run.data);
}

void run_linear(const Experiment& e, Report& rep) {
  const Grid g = e.run.grid();
  const int d = g.dim();
  const int L = 2;
  const double kappa = g.wavenumber();
  std::mt19937_64 rng(e.seed);

  // Eigenmodes against cos/sin closed forms.
  const int kmax = std::min(4, g.n() / 2 - 1);
  double worst = 0.0;
  for (int m = 0; m < 20; ++m) {
    IntVec k{};
    int k2 = 0;
    while (k2 == 0) {
      k2 = 0;
      for (int a = 0; a < d; ++a) {
        k[static_cast<std::size_t>(a)] = static_cast<int>(rng() % static_cast<std::uint64_t>(2 * kmax + 1)) - kmax;
        k2 += k[static_cast<std::size_t>(a)] * k[static_cast<std::size_t>(a)];
      }
    }
    const double omega = kappa * kappa * k2;
    const double beta = uniform_pm1(rng);
    Field c(g, L), s(g, L);
    for (std::size_t x = 0; x < g.points(); ++x) {
      const IntVec idx = g.unflatten(x);
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase += kappa * k[static_cast<std::size_t>(a)] * g.coordinate(idx[static_cast<std::size_t>(a)]);
      c(0, x) = std::cos(phase);
      c(1, x) = std::sin(phase);
      s(0, x) = std::sin(phase);
      s(1, x) = -std::cos(phase);
    }
    // u₀ = c, u₁ = β ω s  ⇒  u(t) = cos(ωt) c + β sin(ωt) s.
    const State s0(c, beta * omega * s, 0.0);
    for (int j = 0; j <= 10; ++j) {
      const double t = j;
      const State st = linear_flow(s0, t);
      const Field exact_u = std::cos(omega * t) * c + (beta * std::sin(omega * t)) * s;
      const Field exact_v = (-omega * std::sin(omega * t)) * c + (beta * omega * std::cos(omega * t)) * s;
      worst = std::max(worst, max_abs_diff(st.u, exact_u) / (1.0 + std::abs(beta)));
      worst = std::max(worst, max_abs_diff(st.ut, exact_v) / (omega * (1.0 + std::abs(beta))));
    }
  }
  rep.below("eigenmode closed form", worst, 1e-12, "20 modes, t in [0, 10]");

  const Field u0 = random_smooth_field(g, L, e.seed + 11, 3, true);
  const Field u1 = random_smooth_field(g, L, e.seed + 12, 3, true);
  const State s0(u0, u1, 0.0);
  rep.below("factorization residual", schrodinger_factorization_check(s0, 1.3), 1e-11);

  const State ab = linear_flow(linear_flow(s0, 0.7), 1.1);
  const State direct = linear_flow(s0, 1.8);
  auto state_gap = [](const State& a, const State& b) {
    return std::max(max_abs_diff(a.u, b.u) / max_abs(b.u), max_abs_diff(a.ut, b.ut) / max_abs(b.ut));
  };
  rep.below("group law", state_gap(ab, direct), 1e-12);
  rep.below("reversibility", state_gap(linear_flow(linear_flow(s0, 0.9), -0.9), s0), 1e-12);

  const double e0 = energy(s0);
  double edrift = 0.0;
  for (int j = 1; j <= 10; ++j) edrift = std::max(edrift, relative(energy(linear_flow(s0, j)), e0));
  rep.below("linear energy", edrift, 1e-12);

  const Forcing none = [](const State& st) { return Field(st.grid(), st.components()); };
  const State duh = duhamel_step(s0, 0.05, none);
  const State lin = linear_flow(s0, 0.05);
  rep.below("zero forcing step", max_abs_diff(duh.u, lin.u) + max_abs_diff(duh.ut, lin.ut), 1e-14);

  Field cu(g, L), cv(g, L);
  for (std::size_t x = 0; x < g.points(); ++x) {
    cu(0, x) = 0.3;
    cu(1, x) = -0.2;
    cv(0, x) = 0.5;
    cv(1, x) = 0.1;
  }
  const State zm = linear_flow(State(cu, cv, 0.0), 2.5);
  rep.below("zero mode", max_abs_diff(zm.u, cu + 2.5 * cv) + max_abs_diff(zm.ut, cv), 1e-14);

  // Forced single mode from rest: F = cos(νt) φ e₀, u = (cos νt − cos ωt)/(ω² − ν²) φ e₀.
  const double nu = 0.5 * kappa * kappa;
  const double omega = 2.0 * kappa * kappa;
  Field phi(g, L);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const IntVec idx = g.unflatten(x);
    double phase = 0.0;
    for (int a = 0; a < std::min(d, 2); ++a) phase += kappa * g.coordinate(idx[static_cast<std::size_t>(a)]);
    phi(0, x) = std::cos(phase);
  }
  const double omega_used = d >= 2 ? omega : kappa * kappa;
  const Forcing forced = [&](const State& st) { return std::cos(nu * st.time) * phi; };
  auto forced_error = [&](int steps) {
    State st(Field(g, L), Field(g, L), 0.0);
    const double h = 1.0 / steps;
    for (int i = 0; i < steps; ++i) st = duhamel_step(st, h, forced);
    const double amp = (std::cos(nu) - std::cos(omega_used)) / (omega_used * omega_used - nu * nu);
    return max_abs_diff(st.u, amp * phi);
  };
  const double e1 = forced_error(16);
  const double e2 = forced_error(32);
  const double e3 = forced_error(64);
  const double order = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
  rep.within("duhamel convergence order", order, 1.9, 2.1, "forced single mode, 16/32/64 steps to t = 1");
}

void run_identity(const Experiment& e, Report& rep) {
  const Grid g = e.run.grid();
  const int L = e.run.target.L;
  const auto& opt = e.identity;
  const BilinearFamily Q = bilinear_family_from_name(opt.family, L, e.seed);
  double worst = 0.0;
  double worst_ratio = INFINITY;
  double worst_abs = 0.0;
  for (int b = 0; b < opt.blocks; ++b) {
    const std::uint64_t seed = e.seed * 1000 + static_cast<std::uint64_t>(b);
    const auto res = null_form(analytic_block(g, L, opt.dt, opt.samples, seed), Q, opt.stencil_order);
    worst = std::max(worst, res.discrepancy);
    for (std::size_t n = 0; n < res.expanded.size(); ++n) {
      worst_abs = std::max({worst_abs, max_abs(res.expanded[n]), max_abs(res.commutator[n])});
    }
    if (e.refinement_check && !Q.is_zero()) {
      const auto half = null_form(analytic_block(g, L, 0.5 * opt.dt, opt.samples, seed), Q, opt.stencil_order);
      worst_ratio = std::min(worst_ratio, res.discrepancy / half.discrepancy);
    }
  }
  if (Q.is_zero()) {
    rep.below("zero family vanishes", worst_abs, 1e-300);
  } else {
    rep.below("commutator vs expanded", worst, 1e-8);
    if (e.refinement_check) rep.at_least("halving ratio", worst_ratio, 12.0);
  }
  if (opt.family == "sphere") {
    double red = 0.0;
    for (int b = 0; b < opt.blocks; ++b) {
      const auto res = null_form(sphere_block(g, L, opt.dt, opt.samples, e.seed * 77 + static_cast<std::uint64_t>(b)),
                                 Q, opt.stencil_order);
      red = std::max(red, res.reduced_discrepancy);
    }
    rep.below("sphere reduction", red, 1e-8);
  }
}

void write_monitors(const std::string& path, const Trajectory& tr) {
  CsvWriter csv(path, {"time", "energy", "energy_drift", "geometric_drift", "tangency_drift", "besov", "sobolev",
                       "forcing_l1l2"});
  for (const auto& m : tr.monitors) {
    csv.row({format_double(m.time), format_double(m.energy), format_double(m.energy_drift),
             format_double(m.geometric_drift), format_double(m.tangency_drift), format_double(m.besov),
             format_double(m.sobolev), format_double(m.forcing_l1l2)});
  }
}

void run_conservation(const Experiment& e, Report& rep) {
  const TargetManifold target = build_target(e.run, e.seed);
  const State s0 = initial_state(e.run, target);
  const Trajectory tr = evolve(e.run, s0, target);
  if (tr.halted) rep.flag(tr.flag);

  const auto monitors = join_path(e.output, "monitors.csv");
  write_monitors(monitors, tr);
  rep.output(monitors);
  std::vector<Snapshot> snaps;
  for (const auto& s : tr.snapshots) snaps.push_back({s.u, s.time});
  const auto traj = join_path(e.output, "trajectory.bwm");
  write_snapshot_file(traj, snaps);
  rep.output(traj);
  const auto fin = join_path(e.output, "final_state.bwm");
  write_snapshot_file(fin, {{tr.final_state.u, tr.final_state.time}, {tr.final_state.ut, tr.final_state.time}});
  rep.output(fin);

  rep.below("energy drift", tr.max_energy_drift, 1e-5);
  rep.below("geometric drift", tr.max_geometric_drift, 1e-5);
  rep.below("tangency drift", tr.max_tangency_drift, 1e-5);
  if (!e.refinement_check) return;
  RunConfig half = e.run;
  half.dt = 0.5 * e.run.timestep();
  const Trajectory tr2 = evolve(half, s0, target);
  if (tr2.halted) rep.flag(tr2.flag + " (half step)");
  rep.at_least("energy drift ratio", tr.max_energy_drift / tr2.max_energy_drift, 3.5);
  rep.at_least("geometric drift ratio", tr.max_geometric_drift / tr2.max_geometric_drift, 3.5);
  rep.at_least("tangency drift ratio", tr.max_tangency_drift / tr2.max_tangency_drift, 3.5);
}

void run_picard(const Experiment& e, Report& rep) {
  const TargetManifold target = build_target(e.run, e.seed);
  const auto path = join_path(e.output, "picard.csv");
  CsvWriter csv(path, {"delta", "k", "d_k", "r_k"});
  rep.output(path);
  const int K = e.run.picard_iterations;
  std::vector<double> rates;
  for (double delta : e.picard_deltas) {
    RunConfig cfg = e.run;
    cfg.data.delta = delta;
    const State s0 = initial_state(cfg, target);
    const PicardResult res = picard_solve(cfg, s0, target);
    for (std::size_t k = 0; k < res.d.size(); ++k) {
      csv.row({format_double(delta), std::to_string(k), format_double(res.d[k]),
               k < res.r.size() ? format_double(res.r[k]) : std::string()});
    }
    const std::string tag = "delta " + format_double(delta);
    if (res.halted) rep.flag(res.flag + " (" + tag + ")");
    bool monotone = static_cast<int>(res.d.size()) == K + 1;
    for (int k = 2; monotone && k < K; ++k) {
      monotone = res.d[static_cast<std::size_t>(k) + 1] < res.d[static_cast<std::size_t>(k)];
    }
    rep.holds("monotone decay " + tag, monotone, "d_k decreasing for k = 2.." + std::to_string(K));
    // Geometric-mean contraction rate over k = 2..K-1.
    double logsum = 0.0;
    int count = 0;
    for (int k = 2; k < K && k < static_cast<int>(res.r.size()); ++k) {
      logsum += std::log(res.r[static_cast<std::size_t>(k)]);
      ++count;
    }
    rates.push_back(count > 0 ? std::exp(logsum / count) : NAN);
  }
  for (std::size_t i = 1; i < rates.size(); ++i) {
    const double expected = e.picard_deltas[i] / e.picard_deltas[0];
    const double measured = rates[i] / rates[0];
    rep.within("rate scaling delta " + format_double(e.picard_deltas[i]), measured / expected, 0.7, 1.3,
               "r(delta) / r(delta_0) over delta / delta_0");
  }
}

void run_scaling(const Experiment& e, Report& rep) {
  const TargetManifold target = build_target(e.run, e.seed);
  const State s0 = initial_state(e.run, target);
  const ScalingReport sr = parabolic_rescale(s0, e.rescale_lambda);
  rep.below("energy ratio", relative(sr.measured, sr.expected), 1e-8,
            "expected " + format_double(sr.expected) + ", measured " + format_double(sr.measured));
  if (e.run.dim == 4) rep.below("critical dimension ratio", std::abs(sr.measured - 1.0), 1e-8);
}

std::vector<NormSpec> default_norm_specs(int dim) {
  std::vector<NormSpec> specs;
  NormSpec b;
  b.family = NormFamily::besov;
  b.s = 0.5 * dim;
  b.p = 1.0;
  specs.push_back(b);
  NormSpec h;
  h.family = NormFamily::sobolev;
  h.s = 2.0;
  specs.push_back(h);
  NormSpec l;
  l.family = NormFamily::lateral;
  l.p = 2.0;
  l.q = 2.0;
  l.e.assign(static_cast<std::size_t>(dim), 0.0);
  l.e[0] = 1.0;
  specs.push_back(l);
  NormSpec m;
  m.family = NormFamily::mixed_strichartz;
  m.p = INFINITY;
  m.q = 2.0;
  specs.push_back(m);
  return specs;
}

Direction to_direction(const std::vector<double>& e, int dim) {
  if (static_cast<int>(e.size()) != dim) throw InvalidArgument("direction length does not match the grid dimension");
  Direction dir;
  dir.dim = dim;
  double n2 = 0.0;
  for (int a = 0; a < dim; ++a) n2 += e[static_cast<std::size_t>(a)] * e[static_cast<std::size_t>(a)];
  if (!(n2 > 0.0)) throw InvalidArgument("direction must be nonzero");
  for (int a = 0; a < dim; ++a) dir.e[static_cast<std::size_t>(a)] = e[static_cast<std::size_t>(a)] / std::sqrt(n2);
  return dir;
}

std::string join_direction(const std::vector<double>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + format_double(e[i]);
  return s;
}

void run_norms(const Experiment& e, Report& rep) {
  SpaceTimeBlock block = [&] {
    if (!e.norms.input.empty()) return read_block_file(e.norms.input);
    const TargetManifold target = build_target(e.run, e.seed);
    const State s0 = initial_state(e.run, target);
    const double dt = e.run.timestep();
    std::vector<Field> snaps;
    for (int n = 0; n < e.norms.block_steps; ++n) snaps.push_back(linear_flow(s0, n * dt).u);
    return SpaceTimeBlock(0.0, dt, std::move(snaps));
  }();
  const Grid& g = block.grid();
  const int dim = g.dim();

  // Partition reconstructions on the first snapshot.
  const Field f0 = remove_mean(block.snapshot(0));
  const double fscale = std::max(max_abs(f0), 1e-300);
  Field dyadic(g, f0.components());
  const ShellRange shells = resolvable_shells(g);
  for (int j = shells.lo; j <= shells.hi; ++j) dyadic += littlewood_paley_project(f0, DyadicIndex(j));
  rep.below("dyadic partition", max_abs_diff(dyadic, f0) / fscale, 1e-10);
  const DirectionSet family(dim);
  Field sectors(g, f0.components());
  for (std::size_t i = 0; i < family.size(); ++i) sectors += sector_project(f0, family, family[i]);
  rep.below("sector partition", max_abs_diff(sectors, f0) / fscale, 1e-10);

  const auto path = join_path(e.output, "norms.csv");
  CsvWriter csv(path, {"family", "s", "p", "q", "b", "lambda", "e", "value", "truncation_low", "truncation_high",
                       "flag"});
  rep.output(path);
  const auto specs = e.norms.specs.empty() ? default_norm_specs(dim) : e.norms.specs;
  for (const auto& spec : specs) {
    validate(spec);
    double value = 0.0;
    int lo = 0, hi = 0;
    std::string flag;
    switch (spec.family) {
      case NormFamily::besov:
      case NormFamily::sobolev: {
        bool first = true;
        for (const auto& snap : block.snapshots()) {
          const NormValue v = spec.family == NormFamily::besov ? besov_norm(snap, spec.s, spec.p)
                                                                : sobolev_norm(snap, spec.s);
          value = std::max(value, v.value);
          lo = first ? v.truncation_low : std::min(lo, v.truncation_low);
          hi = first ? v.truncation_high : std::max(hi, v.truncation_high);
          first = false;
        }
        break;
      }
      case NormFamily::xbp:
        try {
          const XbpResult x = xbp_norm(block, DyadicIndex(spec.lambda), spec.b, spec.p);
          value = x.value;
          lo = x.mu_low;
          hi = x.mu_high;
          if (!x.reliable) flag = "unreliable";
        } catch (const Unresolvable&) {
          value = NAN;
          flag = "unresolvable";
        }
        break;
      case NormFamily::lateral: {
        value = lateral_norm(block, to_direction(spec.e, dim), spec.p, spec.q);
        if (spec.p == spec.q) {
          const double plain = strichartz_norm(block, spec.p, spec.p);
          rep.below("lateral collapse " + join_direction(spec.e) + " p " + format_double(spec.p),
                    relative(value, plain), 1e-10);
        }
        break;
      }
      case NormFamily::mixed_strichartz:
        value = strichartz_norm(block, spec.p, spec.q);
        if (!admissible(spec.p, spec.q, dim)) flag = "non-admissible";
        break;
    }
    if (!flag.empty() && flag != "non-admissible") rep.flag(to_string(spec.family) + " " + flag);
    csv.row({to_string(spec.family), format_double(spec.s), format_double(spec.p), format_double(spec.q),
             format_double(spec.b), std::to_string(spec.lambda), join_direction(spec.e), format_double(value),
             std::to_string(lo), std::to_string(hi), flag});
  }
}

}  // namespace

Report run_suite(const Experiment& e) {
  e.run.validate();
  std::filesystem::create_directories(e.output);
  Report rep(e.name, to_string(e.suite), e.seed);
  try {
    switch (e.suite) {
      case Suite::linear:
        run_linear(e, rep);
        break;
      case Suite::identity:
        run_identity(e, rep);
        break;
      case Suite::conservation:
        run_conservation(e, rep);
        break;
      case Suite::picard:
        run_picard(e, rep);
        break;
      case Suite::scaling:
        run_scaling(e, rep);
        break;
      case Suite::norms:
        run_norms(e, rep);
        break;
    }
  } catch (const Error& err) {
    rep.holds("suite completed", false, err.what());
  }
  rep.write_json(join_path(e.output, "report.json"));
  return rep;
}

}  // namespace bwm
