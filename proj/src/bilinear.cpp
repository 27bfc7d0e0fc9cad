#include "bwm/bilinear.hpp"

#include <cmath>
#include <random>

#include "bwm/common.hpp"

namespace bwm {

BilinearFamily::BilinearFamily(int L) : L_(L) {
  if (L < 1 || L > 16) throw InvalidArgument("bilinear family dimension must be in [1, 16]");
}

BilinearFamily BilinearFamily::zero(int L) { return BilinearFamily(L); }

BilinearFamily BilinearFamily::sphere(int L) {
  BilinearFamily f(L);
  const auto n = static_cast<std::size_t>(L);
  for (std::size_t J = 0; J < n; ++J) {
    std::vector<int> e(n, 0);
    e[J] = 1;
    std::vector<double> T(n * n * n, 0.0);
    for (std::size_t K = 0; K < n; ++K) T[J * n * n + K * n + K] = -1.0;
    f.add_term(e, T);
  }
  return f;
}

BilinearFamily BilinearFamily::dot_times_vector(std::span<const double> v) {
  const auto n = v.size();
  BilinearFamily f(static_cast<int>(n));
  std::vector<double> T(n * n * n, 0.0);
  for (std::size_t J = 0; J < n; ++J)
    for (std::size_t K = 0; K < n; ++K) T[J * n * n + K * n + K] = v[J];
  f.add_term(std::vector<int>(n, 0), T);
  return f;
}

BilinearFamily BilinearFamily::random_linear(int L, std::uint64_t seed) {
  BilinearFamily f(L);
  const auto n = static_cast<std::size_t>(L);
  std::mt19937_64 rng(seed);
  auto draw = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  std::vector<double> T(n * n * n);
  for (double& t : T) t = draw();
  f.add_term(std::vector<int>(n, 0), T);
  for (std::size_t v = 0; v < n; ++v) {
    for (double& t : T) t = draw();
    std::vector<int> e(n, 0);
    e[v] = 1;
    f.add_term(e, T);
  }
  return f;
}

void BilinearFamily::add_term(std::span<const int> exponents, std::span<const double> tensor) {
  const auto n = static_cast<std::size_t>(L_);
  if (exponents.size() != n) throw InvalidArgument("bilinear term needs L exponents");
  if (tensor.size() != n * n * n) throw InvalidArgument("bilinear term tensor must have L^3 entries");
  Term t;
  t.exponents.assign(exponents.begin(), exponents.end());
  for (int e : t.exponents) {
    if (e < 0) throw InvalidArgument("negative exponent in bilinear term");
  }
  t.tensor.resize(tensor.size());
  for (std::size_t J = 0; J < n; ++J) {
    for (std::size_t K = 0; K < n; ++K) {
      for (std::size_t M = 0; M < n; ++M) {
        const double a = tensor[J * n * n + K * n + M];
        const double b = tensor[J * n * n + M * n + K];
        if (!std::isfinite(a)) throw InvalidArgument("bilinear coefficients must be finite");
        t.tensor[J * n * n + K * n + M] = 0.5 * (a + b);
      }
    }
  }
  terms_.push_back(std::move(t));
}

std::vector<double> BilinearFamily::coefficients(std::span<const double> x) const {
  const auto n = static_cast<std::size_t>(L_);
  if (x.size() != n) throw InvalidArgument("bilinear family evaluated at a point of the wrong dimension");
  std::vector<double> C(n * n * n, 0.0);
  for (const auto& t : terms_) {
    double m = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      for (int k = 0; k < t.exponents[v]; ++k) m *= x[v];
    }
    if (m == 0.0) continue;
    for (std::size_t i = 0; i < C.size(); ++i) C[i] += m * t.tensor[i];
  }
  return C;
}

std::vector<double> BilinearFamily::apply(std::span<const double> x, std::span<const double> a,
                                          std::span<const double> b) const {
  const auto n = static_cast<std::size_t>(L_);
  if (a.size() != n || b.size() != n) throw InvalidArgument("bilinear arguments must have L entries");
  const auto C = coefficients(x);
  std::vector<double> out(n, 0.0);
  for (std::size_t J = 0; J < n; ++J) {
    double s = 0.0;
    for (std::size_t K = 0; K < n; ++K)
      for (std::size_t M = 0; M < n; ++M) s += C[J * n * n + K * n + M] * a[K] * b[M];
    out[J] = s;
  }
  return out;
}

bool BilinearFamily::is_zero() const {
  for (const auto& t : terms_)
    for (double v : t.tensor)
      if (v != 0.0) return false;
  return true;
}

}  // namespace bwm
