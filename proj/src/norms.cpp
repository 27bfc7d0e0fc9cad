#include "bwm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bwm {

namespace {

void require_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [1, inf]");
}

// (Σ a_j^p)^{1/p} for non-negative terms; max for p = ∞.
double lp_sum(const std::vector<double>& terms, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double s = 0.0;
  for (double t : terms) s += std::pow(t, p);
  return std::pow(s, 1.0 / p);
}

double pointwise_norm(const Field& f, std::size_t p) {
  double s = 0.0;
  for (int c = 0; c < f.components(); ++c) s += f(c, p) * f(c, p);
  return std::sqrt(s);
}

}  // namespace

NormValue besov_norm(const Field& f, double s, double p) {
  require_exponent(p, "Besov exponent p");
  const Grid& g = f.grid();
  const ShellRange r = resolvable_shells(g);
  const SpectralField F = transform_forward(f);
  const double scale = g.volume() / (static_cast<double>(g.points()) * static_cast<double>(g.points()));
  std::vector<double> mode_mass(g.modes(), 0.0);
  std::vector<double> xi(g.modes(), 0.0);
  for_each_wavevector(g, [&](std::size_t i, const Mode& m) {
    xi[i] = std::sqrt(m.norm2);
    double a = 0.0;
    for (int c = 0; c < F.components(); ++c) a += std::norm(F.component(c)[i]);
    mode_mass[i] = m.weight * a * scale;
  });
  std::vector<double> terms;
  for (int j = r.lo; j <= r.hi; ++j) {
    const double lam = std::ldexp(1.0, j);
    double m2 = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
      const double ph = lp_phi(xi[i] / lam);
      if (ph != 0.0) m2 += ph * ph * mode_mass[i];
    }
    terms.push_back(std::pow(lam, s) * std::sqrt(m2));
  }
  return {lp_sum(terms, p), r.lo, r.hi};
}

NormValue sobolev_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  const ShellRange r = resolvable_shells(g);
  const SpectralField F = transform_forward(f);
  const double scale = g.volume() / (static_cast<double>(g.points()) * static_cast<double>(g.points()));
  double sum = 0.0;
  for_each_wavevector(g, [&](std::size_t i, const Mode& m) {
    if (m.norm2 == 0.0) return;
    double a = 0.0;
    for (int c = 0; c < F.components(); ++c) a += std::norm(F.component(c)[i]);
    sum += m.weight * std::pow(m.norm2, s) * a;
  });
  return {std::sqrt(sum * scale), r.lo, r.hi};
}

XbpResult xbp_norm(const SpaceTimeBlock& block, DyadicIndex lambda, double b, double p) {
  require_exponent(p, "modulation exponent p");
  if (!(b <= 1.0)) throw InvalidArgument("modulation regularity b must be at most 1");
  const SpacetimeSpectrum spec(block);
  const double lam = lambda.value();
  const ScaleRange fr = frequency_range(spec);
  if (!(2.0 * lam > fr.lo && 0.5 * lam < fr.hi)) {
    std::ostringstream os;
    os << "frequency " << lam << " is not resolvable; resolvable range is [" << fr.lo << ", " << fr.hi << "]";
    throw Unresolvable(os.str());
  }
  const ScaleRange mr = modulation_range(spec);

  XbpResult res;
  res.mu_low = static_cast<int>(std::floor(std::log2(mr.lo)));
  res.mu_high = std::max(res.mu_low, static_cast<int>(std::ceil(std::log2(mr.hi) + 1.0)) - 1);
  const auto shells = static_cast<std::size_t>(res.mu_high - res.mu_low + 1);
  std::vector<double> q2(shells, 0.0);
  std::vector<double> frac(shells, 0.0);
  double total = 0.0;
  double outside = 0.0;
  const double tband = 0.5 * spec.tau_nyquist();
  std::vector<double> ph(shells);

  for (int c = 0; c < spec.components(); ++c) {
    auto coeffs = spec.component(c);
    spec.for_each([&](std::size_t i, double tau, double x2, double w, bool) {
      const double pl = lp_phi(spacetime_frequency(tau, x2) / lam);
      if (pl == 0.0) return;
      const double mass = w * pl * pl * std::norm(coeffs[i]);
      if (mass == 0.0) return;
      const double mod = modulation_weight(tau, std::sqrt(x2));
      double upper = 0.0;
      for (std::size_t j = 1; j < shells; ++j) {
        ph[j] = lp_phi(mod / std::ldexp(1.0, res.mu_low + static_cast<int>(j)));
        upper += ph[j];
      }
      ph[0] = std::max(0.0, 1.0 - upper);
      for (std::size_t j = 0; j < shells; ++j) {
        q2[j] += ph[j] * ph[j] * mass;
        frac[j] += ph[j] * mass;
      }
      total += mass;
      if (std::abs(tau) >= tband) outside += mass;
    });
  }
  const double ms = spec.mass_scale();
  std::vector<double> terms(shells);
  for (std::size_t j = 0; j < shells; ++j) {
    const double mu = std::ldexp(1.0, res.mu_low + static_cast<int>(j));
    terms[j] = std::pow(mu, b) * std::sqrt(q2[j] * ms);
  }
  res.value = lp_sum(terms, p);
  res.shell_fraction.assign(shells, 0.0);
  if (total > 0.0) {
    for (std::size_t j = 0; j < shells; ++j) res.shell_fraction[j] = frac[j] / total;
    res.concentration = res.shell_fraction[0] + (shells > 1 ? res.shell_fraction[1] : 0.0);
    res.mass_outside = outside / total;
    const auto it = std::max_element(res.shell_fraction.begin(), res.shell_fraction.end());
    res.dominant_shell = res.mu_low + static_cast<int>(it - res.shell_fraction.begin());
  } else {
    res.dominant_shell = res.mu_low;
  }
  res.reliable = res.mass_outside <= 0.2;
  return res;
}

double lateral_norm(const SpaceTimeBlock& block, const Direction& e, double p, double q) {
  require_exponent(p, "lateral exponent p");
  require_exponent(q, "lateral exponent q");
  const Grid& g = block.grid();
  const int d = g.dim();
  if (e.dim != d) throw InvalidArgument("direction dimension does not match the grid");
  std::vector<int> axes;
  std::vector<int> signs;
  for (int a = 0; a < d; ++a) {
    const double v = e.e[static_cast<std::size_t>(a)];
    if (v == 0.0) continue;
    axes.push_back(a);
    signs.push_back(v > 0 ? 1 : -1);
  }
  const double h = g.spacing();
  const int n = g.n();
  double dr = 0.0;
  double dperp = 0.0;
  const bool axis = axes.size() == 1 && std::abs(std::abs(e.e[static_cast<std::size_t>(axes[0])]) - 1.0) < 1e-12;
  const bool diag = axes.size() == 2 && std::abs(std::abs(e.e[static_cast<std::size_t>(axes[0])]) - std::sqrt(0.5)) < 1e-12 &&
                    std::abs(std::abs(e.e[static_cast<std::size_t>(axes[1])]) - std::sqrt(0.5)) < 1e-12;
  if (axis) {
    dr = h;
    dperp = std::pow(h, d - 1);
  } else if (diag) {
    dr = h / std::sqrt(2.0);
    dperp = std::sqrt(2.0) * std::pow(h, d - 1);
  } else {
    throw InvalidArgument("lateral norm needs an axis direction or a face diagonal");
  }
  // Level r of a point: along an axis its coordinate index, along a diagonal
  // the lattice class (i_a ± i_b) mod n.
  auto level = [&](const IntVec& idx) {
    if (axis) return idx[static_cast<std::size_t>(axes[0])];
    const int s = signs[0] * signs[1];
    const int v = idx[static_cast<std::size_t>(axes[0])] + s * idx[static_cast<std::size_t>(axes[1])];
    return ((v % n) + n) % n;
  };
  std::vector<int> lev(g.points());
  for (std::size_t pt = 0; pt < g.points(); ++pt) lev[pt] = level(g.unflatten(pt));

  std::vector<double> inner(static_cast<std::size_t>(n), 0.0);
  const double dt = block.dt();
  for (const auto& snap : block.snapshots()) {
    for (std::size_t pt = 0; pt < g.points(); ++pt) {
      const double v = pointwise_norm(snap, pt);
      auto& acc = inner[static_cast<std::size_t>(lev[pt])];
      if (std::isinf(q)) {
        acc = std::max(acc, v);
      } else {
        acc += std::pow(v, q) * dt * dperp;
      }
    }
  }
  if (!std::isinf(q)) {
    for (double& v : inner) v = std::pow(v, 1.0 / q);
  }
  if (std::isinf(p)) return *std::max_element(inner.begin(), inner.end());
  double s = 0.0;
  for (double v : inner) s += std::pow(v, p) * dr;
  return std::pow(s, 1.0 / p);
}

double strichartz_norm(const SpaceTimeBlock& block, double p, double q) {
  require_exponent(p, "time exponent p");
  require_exponent(q, "space exponent q");
  const Grid& g = block.grid();
  const double hd = g.cell_volume();
  std::vector<double> per_time;
  for (const auto& snap : block.snapshots()) {
    double a = 0.0;
    for (std::size_t pt = 0; pt < g.points(); ++pt) {
      const double v = pointwise_norm(snap, pt);
      a = std::isinf(q) ? std::max(a, v) : a + std::pow(v, q) * hd;
    }
    per_time.push_back(std::isinf(q) ? a : std::pow(a, 1.0 / q));
  }
  if (std::isinf(p)) return *std::max_element(per_time.begin(), per_time.end());
  double s = 0.0;
  for (double v : per_time) s += std::pow(v, p) * block.dt();
  return std::pow(s, 1.0 / p);
}

bool admissible(double p, double q, int d) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  if (d < 1) throw InvalidArgument("dimension must be positive");
  if (d == 2 && p == 2.0 && std::isinf(q)) return false;
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  return 2.0 * ip + d * iq <= 0.5 * d + 1e-12;
}

std::string to_string(NormFamily f) {
  switch (f) {
    case NormFamily::besov:
      return "besov";
    case NormFamily::sobolev:
      return "sobolev";
    case NormFamily::xbp:
      return "xbp";
    case NormFamily::lateral:
      return "lateral";
    case NormFamily::mixed_strichartz:
      return "mixed-strichartz";
  }
  return "besov";
}

NormFamily norm_family_from_string(const std::string& s) {
  for (auto f : {NormFamily::besov, NormFamily::sobolev, NormFamily::xbp, NormFamily::lateral,
                 NormFamily::mixed_strichartz}) {
    if (to_string(f) == s) return f;
  }
  throw InvalidArgument("unknown norm family '" + s + "'");
}

void validate(const NormSpec& spec) {
  require_exponent(spec.p, "p");
  require_exponent(spec.q, "q");
  if (spec.family == NormFamily::xbp && !(spec.b <= 1.0)) throw InvalidArgument("b must be at most 1");
}

}  // namespace bwm
