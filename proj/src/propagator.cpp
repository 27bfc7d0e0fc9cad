#include "bwm/propagator.hpp"

#include <cmath>

#include "bwm/spectral.hpp"

namespace bwm {

State::State(Field u_, Field ut_, double t) : u(std::move(u_)), ut(std::move(ut_)), time(t) {
  if (u.grid() != ut.grid() || u.components() != ut.components()) {
    throw InvalidArgument("state position and velocity must share grid and component count");
  }
  if (!std::isfinite(time)) throw NonFinite("state time is not finite");
  u.require_finite("state u");
  ut.require_finite("state ut");
}

void linear_flow_spectral(SpectralField& u, SpectralField& ut, double dt) {
  if (!std::isfinite(dt)) throw InvalidArgument("flow time must be finite");
  const Grid& g = u.grid();
  std::vector<double> cs(g.modes()), sn(g.modes()), om(g.modes());
  for_each_wavevector(g, [&](std::size_t i, const Mode& m) {
    om[i] = m.norm2;
    cs[i] = std::cos(m.norm2 * dt);
    sn[i] = std::sin(m.norm2 * dt);
  });
  for (int c = 0; c < u.components(); ++c) {
    auto U = u.component(c);
    auto V = ut.component(c);
    for (std::size_t i = 0; i < om.size(); ++i) {
      if (om[i] == 0.0) {
        U[i] += dt * V[i];
        continue;
      }
      const complex a = U[i];
      const complex b = V[i];
      U[i] = cs[i] * a + (sn[i] / om[i]) * b;
      V[i] = -om[i] * sn[i] * a + cs[i] * b;
    }
  }
}

State linear_flow(const State& s, double dt) {
  if (dt == 0.0) return s;
  SpectralField U = transform_forward(s.u);
  SpectralField V = transform_forward(s.ut);
  linear_flow_spectral(U, V, dt);
  return State(transform_inverse(U), transform_inverse(V), s.time + dt);
}

double schrodinger_factorization_check(const State& s, double dt) {
  const double scale = std::max(max_abs(s.u), max_abs(s.ut));
  for (double m : component_means(s.u)) {
    if (std::abs(m) > 1e-12 * std::max(scale, 1.0)) throw InvalidArgument("factorization check needs mean-free u");
  }
  for (double m : component_means(s.ut)) {
    if (std::abs(m) > 1e-12 * std::max(scale, 1.0)) throw InvalidArgument("factorization check needs mean-free ut");
  }
  SpectralField U = transform_forward(s.u);
  SpectralField V = transform_forward(s.ut);
  SpectralField Ud = U;
  SpectralField Vd = V;
  linear_flow_spectral(Ud, Vd, dt);

  double diff2 = 0.0;
  double ref2 = 0.0;
  std::vector<double> om(U.grid().modes()), wt(U.grid().modes());
  for_each_wavevector(U.grid(), [&](std::size_t i, const Mode& m) {
    om[i] = m.norm2;
    wt[i] = m.weight;
  });
  const complex I(0.0, 1.0);
  for (int c = 0; c < U.components(); ++c) {
    auto u0 = U.component(c);
    auto u1 = V.component(c);
    auto ud = Ud.component(c);
    auto vd = Vd.component(c);
    for (std::size_t i = 0; i < om.size(); ++i) {
      if (om[i] == 0.0) continue;
      // e^{-itΔ} has symbol e^{iωt}; (−Δ)⁻¹ has symbol 1/ω.
      const complex w = u1[i] / om[i];
      const complex plus = 0.5 * std::exp(I * (om[i] * dt)) * (u0[i] - I * w);
      const complex minus = 0.5 * std::exp(-I * (om[i] * dt)) * (u0[i] + I * w);
      const complex uh = plus + minus;
      const complex vh = I * om[i] * (plus - minus);
      // velocity measured in units of ω so both blocks weigh alike
      diff2 += wt[i] * (std::norm(uh - ud[i]) + std::norm((vh - vd[i]) / om[i]));
      ref2 += wt[i] * (std::norm(ud[i]) + std::norm(vd[i] / om[i]));
    }
  }
  if (ref2 == 0.0) return std::sqrt(diff2);
  return std::sqrt(diff2 / ref2);
}

namespace {

Field checked_forcing(const Forcing& forcing, const State& s) {
  Field f = forcing(s);
  if (f.grid() != s.grid() || f.components() != s.components()) {
    throw InvalidArgument("forcing returned a field of the wrong shape");
  }
  if (!f.all_finite()) {
    throw NonFinite("non-finite forcing at t = " + std::to_string(s.time));
  }
  return f;
}

}  // namespace

State duhamel_step(const State& s, double dt, const Forcing& forcing) {
  const Field f0 = checked_forcing(forcing, s);
  SpectralField U = transform_forward(s.u);
  SpectralField F0 = transform_forward(f0);

  SpectralField Vp = transform_forward(s.ut);
  SpectralField Up = U;
  SpectralField Vc = Vp;
  for (std::size_t i = 0; i < Vp.coeffs().size(); ++i) {
    Vp.coeffs()[i] += dt * F0.coeffs()[i];
    Vc.coeffs()[i] += 0.5 * dt * F0.coeffs()[i];
  }
  linear_flow_spectral(Up, Vp, dt);
  const State predicted(transform_inverse(Up), transform_inverse(Vp), s.time + dt);
  const Field f1 = checked_forcing(forcing, predicted);

  linear_flow_spectral(U, Vc, dt);
  Field ut = transform_inverse(Vc);
  ut.axpy(0.5 * dt, f1);
  return State(transform_inverse(U), std::move(ut), s.time + dt);
}

double default_timestep(const Grid& grid, double safety) {
  const double h = grid.spacing();
  return 0.25 * h * h * safety;
}

}  // namespace bwm
