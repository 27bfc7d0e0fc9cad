#include "bwm/jet.hpp"

#include <cmath>
#include <cstdint>

#include "bwm/common.hpp"

namespace bwm {

namespace {

// All exponent vectors of total degree k, in lexicographically descending order.
void enumerate(int vars, int k, int pos, std::vector<int>& cur, std::vector<int>& out) {
  if (pos == vars - 1) {
    cur[static_cast<std::size_t>(pos)] = k;
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur[static_cast<std::size_t>(pos)] = e;
    enumerate(vars, k - e, pos + 1, cur, out);
  }
}

}  // namespace

JetSpace::JetSpace(int vars, int degree) : vars_(vars), degree_(degree) {
  if (vars < 1 || vars > 16) throw InvalidArgument("jet variable count must be in [1, 16]");
  if (degree < 0 || degree > 16) throw InvalidArgument("jet degree must be in [0, 16]");
  double table = std::pow(static_cast<double>(degree + 1), vars);
  if (table > 1e7) throw InvalidArgument("jet space too large");

  std::vector<int> cur(static_cast<std::size_t>(vars), 0);
  for (int k = 0; k <= degree; ++k) {
    begin_.push_back(exponents_.size() / static_cast<std::size_t>(vars));
    enumerate(vars, k, 0, cur, exponents_);
  }
  begin_.push_back(exponents_.size() / static_cast<std::size_t>(vars));

  const std::size_t m = size();
  lookup_.assign(static_cast<std::size_t>(table), -1);
  degrees_.resize(m);
  factorial_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto a = exponent(i);
    int deg = 0;
    double f = 1.0;
    for (int e : a) {
      deg += e;
      for (int j = 2; j <= e; ++j) f *= j;
    }
    degrees_[i] = deg;
    factorial_[i] = f;
    lookup_[encode(a)] = static_cast<std::int32_t>(i);
  }

  std::vector<int> sum(static_cast<std::size_t>(vars));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (degrees_[a] + degrees_[b] > degree) continue;
      auto ea = exponent(a);
      auto eb = exponent(b);
      for (int v = 0; v < vars; ++v) sum[static_cast<std::size_t>(v)] = ea[static_cast<std::size_t>(v)] + eb[static_cast<std::size_t>(v)];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(lookup_[encode(sum)])});
    }
  }
}

std::size_t JetSpace::encode(std::span<const int> alpha) const {
  std::size_t key = 0;
  for (int e : alpha) key = key * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(e);
  return key;
}

std::size_t JetSpace::index(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != vars_) throw InvalidArgument("exponent length does not match jet variables");
  int deg = 0;
  for (int e : alpha) {
    if (e < 0) throw InvalidArgument("negative exponent");
    deg += e;
  }
  if (deg > degree_) throw InvalidArgument("monomial degree exceeds jet degree");
  return static_cast<std::size_t>(lookup_[encode(alpha)]);
}

// ---------------------------------------------------------------------------

Jet::Jet(std::shared_ptr<const JetSpace> space, double constant) : space_(std::move(space)), c_(space_->size(), 0.0) {
  c_[0] = constant;
}

Jet Jet::variable(std::shared_ptr<const JetSpace> space, int var, double value) {
  Jet j(space, value);
  if (space->degree() >= 1) j.c_[1 + static_cast<std::size_t>(var)] = 1.0;
  return j;
}

double Jet::derivative(std::span<const int> alpha) const {
  const std::size_t m = space_->index(alpha);
  return space_->factorial(m) * c_[m];
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

void Jet::multiply(const Jet& a, const Jet& b, Jet& out) {
  std::fill(out.c_.begin(), out.c_.end(), 0.0);
  multiply_add(1.0, a, b, out);
}

void Jet::multiply_add(double s, const Jet& a, const Jet& b, Jet& out) {
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* po = out.c_.data();
  for (const auto& p : a.space_->products()) po[p.c] += s * pa[p.a] * pb[p.b];
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(a.space_ptr());
  Jet::multiply(a, b, out);
  return out;
}

Jet compose(const Jet& a, std::span<const double> taylor) {
  const int deg = a.space().degree();
  if (static_cast<int>(taylor.size()) < deg + 1) throw InvalidArgument("composition needs degree+1 Taylor coefficients");
  Jet n = a;
  n[0] = 0.0;
  Jet result(a.space_ptr(), taylor[static_cast<std::size_t>(deg)]);
  Jet tmp(a.space_ptr());
  for (int k = deg - 1; k >= 0; --k) {
    Jet::multiply(result, n, tmp);
    std::swap(result, tmp);
    result[0] += taylor[static_cast<std::size_t>(k)];
  }
  return result;
}

Jet reciprocal(const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw InvalidArgument("reciprocal of a jet with zero value");
  const int deg = a.space().degree();
  std::vector<double> t(static_cast<std::size_t>(deg + 1));
  double p = 1.0 / x;
  for (int k = 0; k <= deg; ++k) {
    t[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= x;
  }
  return compose(a, t);
}

Jet rsqrt(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw InvalidArgument("rsqrt of a jet with non-positive value");
  const int deg = a.space().degree();
  std::vector<double> t(static_cast<std::size_t>(deg + 1));
  // binom(-1/2, k) x^{-1/2-k}
  double binom = 1.0;
  double p = 1.0 / std::sqrt(x);
  for (int k = 0; k <= deg; ++k) {
    t[static_cast<std::size_t>(k)] = binom * p;
    binom *= (-0.5 - k) / (k + 1);
    p /= x;
  }
  return compose(a, t);
}

}  // namespace bwm
