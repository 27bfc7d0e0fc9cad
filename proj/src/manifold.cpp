#include "bwm/manifold.hpp"

#include <cmath>
#include <random>

#include "bwm/common.hpp"

namespace bwm {

std::string to_string(TargetKind k) { return k == TargetKind::sphere ? "sphere" : "perturbed-sphere"; }

TargetKind target_kind_from_string(const std::string& s) {
  if (s == "sphere") return TargetKind::sphere;
  if (s == "perturbed-sphere") return TargetKind::perturbed_sphere;
  throw InvalidArgument("unknown target kind '" + s + "'");
}

std::vector<double> solve_dense(int n, std::vector<double> A, std::vector<double> b) {
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < N; ++r) {
      if (std::abs(A[r * N + k]) > std::abs(A[piv * N + k])) piv = r;
    }
    if (A[piv * N + k] == 0.0) throw InvalidArgument("singular linear system");
    if (piv != k) {
      for (std::size_t c = 0; c < N; ++c) std::swap(A[k * N + c], A[piv * N + c]);
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < N; ++r) {
      const double f = A[r * N + k] / A[k * N + k];
      for (std::size_t c = k; c < N; ++c) A[r * N + c] -= f * A[k * N + c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(N);
  for (std::size_t k = N; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < N; ++c) s -= A[k * N + c] * x[c];
    x[k] = s / A[k * N + k];
  }
  return x;
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

std::vector<double> invert(int n, const std::vector<double>& A) {
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> inv(N * N);
  for (std::size_t c = 0; c < N; ++c) {
    std::vector<double> e(N, 0.0);
    e[c] = 1.0;
    auto col = solve_dense(n, A, e);
    for (std::size_t r = 0; r < N; ++r) inv[r * N + c] = col[r];
  }
  return inv;
}

// Deterministic uniform in [0, 1) independent of the standard library's distributions.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TargetManifold::TargetManifold(TargetSpec spec) : spec_(std::move(spec)) {
  if (spec_.L < 2 || spec_.L > 8) throw InvalidArgument("target ambient dimension must be in [2, 8]");
  if (!std::isfinite(spec_.epsilon)) throw InvalidArgument("perturbation size must be finite");
  if (spec_.series_order < 0 || spec_.series_order > 12) throw InvalidArgument("series order must be in [0, 12]");
  for (const auto& t : spec_.poly) {
    if (t.component < 0 || t.component >= spec_.L) throw InvalidArgument("perturbation term component out of range");
    if (static_cast<int>(t.exponents.size()) != spec_.L) {
      throw InvalidArgument("perturbation term needs one exponent per ambient coordinate");
    }
    if (!std::isfinite(t.coeff)) throw InvalidArgument("perturbation coefficient must be finite");
    for (int e : t.exponents) {
      if (e < 0) throw InvalidArgument("perturbation exponents must be non-negative");
      max_exponent_ = std::max(max_exponent_, e);
    }
  }
  round_ = spec_.kind == TargetKind::sphere || spec_.epsilon == 0.0 || spec_.poly.empty();
  if (!spec_.series_base.empty() && static_cast<int>(spec_.series_base.size()) != spec_.L) {
    throw InvalidArgument("series base must have L entries");
  }
  if (!round_) {
    validate_projection();
    if (spec_.series_order > 0) build_series();
  }
}

TargetManifold TargetManifold::sphere(int L) {
  TargetSpec s;
  s.kind = TargetKind::sphere;
  s.L = L;
  return TargetManifold(s);
}

TargetManifold TargetManifold::with_series_base(std::span<const double> base) const {
  TargetSpec s = spec_;
  s.series_base.assign(base.begin(), base.end());
  return TargetManifold(s);
}

std::vector<double> TargetManifold::phi(std::span<const double> y) const {
  std::vector<double> out(y.begin(), y.end());
  if (round_) return out;
  for (const auto& t : spec_.poly) {
    double m = t.coeff;
    for (std::size_t v = 0; v < y.size(); ++v) m *= std::pow(y[v], t.exponents[v]);
    out[static_cast<std::size_t>(t.component)] += spec_.epsilon * m;
  }
  return out;
}

std::vector<double> TargetManifold::phi_jacobian(std::span<const double> y) const {
  const auto L = static_cast<std::size_t>(spec_.L);
  std::vector<double> J(L * L, 0.0);
  for (std::size_t i = 0; i < L; ++i) J[i * L + i] = 1.0;
  if (round_) return J;
  for (const auto& t : spec_.poly) {
    for (std::size_t v = 0; v < L; ++v) {
      if (t.exponents[v] == 0) continue;
      double m = t.coeff * t.exponents[v];
      for (std::size_t w = 0; w < L; ++w) m *= std::pow(y[w], t.exponents[w] - (w == v ? 1 : 0));
      J[static_cast<std::size_t>(t.component) * L + v] += spec_.epsilon * m;
    }
  }
  return J;
}

std::vector<double> TargetManifold::phi_inverse(std::span<const double> p) const {
  const auto L = static_cast<std::size_t>(spec_.L);
  std::vector<double> y(p.begin(), p.end());
  const double scale = 1.0 + std::sqrt(norm2(p));
  double res = INFINITY;
  for (int it = 0; it < 60; ++it) {
    auto f = phi(y);
    std::vector<double> r(L);
    for (std::size_t i = 0; i < L; ++i) r[i] = f[i] - p[i];
    res = std::sqrt(norm2(r));
    if (!std::isfinite(res)) break;
    if (res < 1e-15 * scale) break;
    auto step = solve_dense(spec_.L, phi_jacobian(y), r);
    for (std::size_t i = 0; i < L; ++i) y[i] -= step[i];
  }
  if (!(res < 1e-12)) throw OutsideTube("inverse of the perturbation did not converge");
  return y;
}

std::vector<double> TargetManifold::project(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != spec_.L) throw InvalidArgument("point dimension does not match target");
  std::vector<double> y = round_ ? std::vector<double>(p.begin(), p.end()) : phi_inverse(p);
  const double r = std::sqrt(norm2(y));
  if (!(r > 0.5)) throw OutsideTube("point outside the projection tube (|y| = " + std::to_string(r) + ")");
  for (double& v : y) v /= r;
  return phi(y);
}

TargetManifold::NearestPoint TargetManifold::nearest_point(std::span<const double> p) const {
  const auto L = static_cast<std::size_t>(spec_.L);
  NearestPoint out;
  if (round_) {
    if (static_cast<int>(p.size()) != spec_.L) throw InvalidArgument("point dimension does not match target");
    const double r = std::sqrt(norm2(p));
    if (!(r > 0.5)) throw OutsideTube("point outside the projection tube (|p| = " + std::to_string(r) + ")");
    out.point.resize(L);
    out.dpi.resize(L * L);
    for (std::size_t i = 0; i < L; ++i) out.point[i] = p[i] / r;
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < L; ++j) {
        out.dpi[i * L + j] = ((i == j ? 1.0 : 0.0) - out.point[i] * out.point[j]) / r;
      }
    }
    return out;
  }
  auto space = std::make_shared<const JetSpace>(spec_.L, 1);
  auto jets = exact_jets(p, space);
  out.point.resize(L);
  out.dpi.resize(L * L);
  for (std::size_t i = 0; i < L; ++i) {
    out.point[i] = jets[i].value();
    for (std::size_t j = 0; j < L; ++j) out.dpi[i * L + j] = jets[i][1 + j];
  }
  return out;
}

std::vector<Jet> TargetManifold::phi_jets(const std::vector<Jet>& y) const {
  std::vector<Jet> out = y;
  if (round_) return out;
  const auto& sp = y.front().space_ptr();
  const auto L = static_cast<std::size_t>(spec_.L);
  // powers[v][k] = y_v^k
  std::vector<std::vector<Jet>> powers(L);
  for (std::size_t v = 0; v < L; ++v) {
    powers[v].emplace_back(sp, 1.0);
    for (int k = 1; k <= max_exponent_; ++k) powers[v].push_back(powers[v].back() * y[v]);
  }
  for (const auto& t : spec_.poly) {
    Jet m(sp, t.coeff * spec_.epsilon);
    for (std::size_t v = 0; v < L; ++v) {
      if (t.exponents[v] > 0) m = m * powers[v][static_cast<std::size_t>(t.exponents[v])];
    }
    out[static_cast<std::size_t>(t.component)] += m;
  }
  return out;
}

std::vector<Jet> TargetManifold::exact_jets(std::span<const double> p, const std::shared_ptr<const JetSpace>& space) const {
  const auto L = static_cast<std::size_t>(spec_.L);
  if (space->vars() != spec_.L) throw InvalidArgument("jet space variables must equal the ambient dimension");
  if (static_cast<int>(p.size()) != spec_.L) throw InvalidArgument("point dimension does not match target");
  std::vector<Jet> y;
  if (round_) {
    for (std::size_t i = 0; i < L; ++i) y.push_back(Jet::variable(space, static_cast<int>(i), p[i]));
  } else {
    // Φ⁻¹(p + h): real Newton for the constant term, then chord steps with
    // the fixed Jacobian; each step fixes one more order of the expansion.
    const auto y0 = phi_inverse(p);
    const auto Jinv = invert(spec_.L, phi_jacobian(y0));
    std::vector<Jet> x;
    for (std::size_t i = 0; i < L; ++i) {
      x.push_back(Jet::variable(space, static_cast<int>(i), p[i]));
      y.emplace_back(space, y0[i]);
    }
    for (int it = 0; it <= space->degree(); ++it) {
      auto f = phi_jets(y);
      for (std::size_t i = 0; i < L; ++i) f[i] -= x[i];
      for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
          y[i] -= Jinv[i * L + j] * f[j];
        }
        y[i][0] = y0[i];
      }
    }
  }
  Jet r2(space);
  for (std::size_t i = 0; i < L; ++i) Jet::multiply_add(1.0, y[i], y[i], r2);
  if (!(r2.value() > 0.25)) {
    throw OutsideTube("point outside the projection tube (|y| = " + std::to_string(std::sqrt(r2.value())) + ")");
  }
  const Jet inv_r = rsqrt(r2);
  std::vector<Jet> s;
  for (std::size_t i = 0; i < L; ++i) s.push_back(y[i] * inv_r);
  return phi_jets(s);
}

void TargetManifold::build_series() {
  std::vector<double> base = spec_.series_base;
  if (base.empty()) {
    base.assign(static_cast<std::size_t>(spec_.L), 0.0);
    base[0] = 1.0;
    base = phi(base);
  }
  spec_.series_base = base;
  series_space_ = std::make_shared<const JetSpace>(spec_.L, spec_.series_order);
  series_ = exact_jets(base, series_space_);
}

std::vector<Jet> TargetManifold::projection_jets(std::span<const double> p,
                                                 const std::shared_ptr<const JetSpace>& space) const {
  if (round_ || spec_.series_order == 0) return exact_jets(p, space);
  if (space->vars() != spec_.L) throw InvalidArgument("jet space variables must equal the ambient dimension");
  // Distance from the expansion point must stay inside the tube too.
  (void)phi_inverse(p);
  const auto L = static_cast<std::size_t>(spec_.L);
  const JetSpace& ss = *series_space_;
  std::vector<Jet> z;
  for (std::size_t i = 0; i < L; ++i) z.push_back(Jet::variable(space, static_cast<int>(i), p[i] - spec_.series_base[i]));
  std::vector<Jet> pw;
  pw.reserve(ss.size());
  pw.emplace_back(space, 1.0);
  std::vector<int> parent(L);
  for (std::size_t m = 1; m < ss.size(); ++m) {
    auto a = ss.exponent(m);
    std::size_t v = 0;
    while (a[v] == 0) ++v;
    std::copy(a.begin(), a.end(), parent.begin());
    parent[v] -= 1;
    pw.push_back(pw[ss.index(parent)] * z[v]);
  }
  std::vector<Jet> out;
  for (std::size_t J = 0; J < L; ++J) {
    Jet acc(space);
    for (std::size_t m = 0; m < ss.size(); ++m) {
      const double c = series_[J][m];
      if (c == 0.0) continue;
      auto src = pw[m].coeffs();
      auto dst = acc.coeffs();
      for (std::size_t q = 0; q < dst.size(); ++q) dst[q] += c * src[q];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

double TargetManifold::distance(std::span<const double> p) const {
  if (round_) return std::abs(std::sqrt(norm2(p)) - 1.0);
  auto q = project(p);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

std::vector<double> TargetManifold::normal(std::span<const double> p) const {
  const auto L = static_cast<std::size_t>(spec_.L);
  if (round_) {
    std::vector<double> n(p.begin(), p.end());
    const double r = std::sqrt(norm2(n));
    if (r == 0.0) throw OutsideTube("normal undefined at the origin");
    for (double& v : n) v /= r;
    return n;
  }
  auto y = phi_inverse(p);
  const double r = std::sqrt(norm2(y));
  if (!(r > 0.5)) throw OutsideTube("point outside the projection tube");
  for (double& v : y) v /= r;
  // Normal of Φ(S) at Φ(y) is DΦ(y)^{-T} y.
  auto J = phi_jacobian(y);
  std::vector<double> Jt(L * L);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j) Jt[i * L + j] = J[j * L + i];
  auto n = solve_dense(spec_.L, Jt, y);
  const double nn = std::sqrt(norm2(n));
  for (double& v : n) v /= nn;
  return n;
}

void TargetManifold::validate_projection() const {
  std::mt19937_64 rng(0x5eedULL);
  const auto L = static_cast<std::size_t>(spec_.L);
  for (int s = 0; s < 64; ++s) {
    std::vector<double> dir(L);
    for (std::size_t i = 0; i < L; ++i) {
      const double u1 = uniform01(rng);
      const double u2 = uniform01(rng);
      dir[i] = std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(kTwoPi * u2);
    }
    const double n = std::sqrt(norm2(dir));
    const double radius = 0.85 + 0.3 * uniform01(rng);
    for (double& v : dir) v *= radius / n;
    auto q = phi(dir);
    std::vector<double> a, b;
    try {
      a = project(q);
      b = project(a);
    } catch (const OutsideTube&) {
      throw InvalidArgument("perturbation too large: projection undefined on the sampled tube");
    }
    double err = 0.0;
    for (std::size_t i = 0; i < L; ++i) err = std::max(err, std::abs(a[i] - b[i]));
    if (!(err < 1e-8)) throw InvalidArgument("perturbation too large: projection is not idempotent on the tube");
  }
}

}  // namespace bwm
