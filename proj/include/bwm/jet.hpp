// Truncated multivariate Taylor polynomials (jets) in a fixed number of
// variables, used to obtain derivative tensors of the target projection.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace bwm {

/// Monomial basis {h^α : |α| ≤ degree} in `vars` variables, ordered by total
/// degree, with a precomputed table of products that stay within the degree.
class JetSpace {
 public:
  JetSpace(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return exponents_.size() / static_cast<std::size_t>(vars_); }

  std::span<const int> exponent(std::size_t m) const {
    return {exponents_.data() + m * static_cast<std::size_t>(vars_), static_cast<std::size_t>(vars_)};
  }
  int total_degree(std::size_t m) const { return degrees_[m]; }
  /// First monomial index of total degree k (k ≤ degree + 1).
  std::size_t degree_begin(int k) const { return begin_[static_cast<std::size_t>(k)]; }
  /// Index of h^α; throws InvalidArgument when |α| exceeds the degree.
  std::size_t index(std::span<const int> alpha) const;
  /// α! = Π α_i!
  double factorial(std::size_t m) const { return factorial_[m]; }

  struct Product {
    std::uint32_t a, b, c;
  };
  const std::vector<Product>& products() const { return products_; }

 private:
  std::size_t encode(std::span<const int> alpha) const;

  int vars_;
  int degree_;
  std::vector<int> exponents_;
  std::vector<int> degrees_;
  std::vector<std::size_t> begin_;
  std::vector<double> factorial_;
  std::vector<std::int32_t> lookup_;
  std::vector<Product> products_;
};

/// Element of the truncated Taylor algebra over a JetSpace.
class Jet {
 public:
  explicit Jet(std::shared_ptr<const JetSpace> space, double constant = 0.0);
  /// value + h_var
  static Jet variable(std::shared_ptr<const JetSpace> space, int var, double value);

  const JetSpace& space() const { return *space_; }
  const std::shared_ptr<const JetSpace>& space_ptr() const { return space_; }
  std::span<double> coeffs() { return c_; }
  std::span<const double> coeffs() const { return c_; }
  double value() const { return c_[0]; }
  double& operator[](std::size_t m) { return c_[m]; }
  double operator[](std::size_t m) const { return c_[m]; }

  /// ∂^α at the expansion point, α!·c_α.
  double derivative(std::span<const int> alpha) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  /// out = a * b (out may not alias a or b).
  static void multiply(const Jet& a, const Jet& b, Jet& out);
  /// out += s * a * b
  static void multiply_add(double s, const Jet& a, const Jet& b, Jet& out);

 private:
  std::shared_ptr<const JetSpace> space_;
  std::vector<double> c_;
};

/// f(a) for a univariate f given by its Taylor coefficients f^(k)(a₀)/k!
/// at a₀ = a.value(), k = 0..degree.
Jet compose(const Jet& a, std::span<const double> taylor);
Jet reciprocal(const Jet& a);
/// a^{-1/2}; requires a.value() > 0.
Jet rsqrt(const Jet& a);

}  // namespace bwm
