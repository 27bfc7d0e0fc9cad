// Polynomial families x ↦ Q_x of symmetric bilinear maps ℝ^L × ℝ^L → ℝ^L.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bwm {

/// Q_x^J(a, b) = Σ_{K,M} C^J_{KM}(x) a^K b^M with C a polynomial in x.
/// Every coefficient tensor is symmetrised in (K, M) on insertion.
class BilinearFamily {
 public:
  explicit BilinearFamily(int L);

  static BilinearFamily zero(int L);
  /// Q_x(a, b) = −⟨a, b⟩ x, the family of the round sphere.
  static BilinearFamily sphere(int L);
  /// Q_x(a, b) = ⟨a, b⟩ v for a fixed vector v.
  static BilinearFamily dot_times_vector(std::span<const double> v);
  /// A + B·x with entries uniform in [−1, 1) drawn from the seed.
  static BilinearFamily random_linear(int L, std::uint64_t seed);

  int L() const { return L_; }
  /// Add monomial x^exponents times the tensor T[J*L*L + K*L + M].
  void add_term(std::span<const int> exponents, std::span<const double> tensor);

  /// C(x) as a dense L×L×L tensor.
  std::vector<double> coefficients(std::span<const double> x) const;
  /// Q_x(a, b)
  std::vector<double> apply(std::span<const double> x, std::span<const double> a, std::span<const double> b) const;

  bool is_zero() const;

 private:
  int L_;
  struct Term {
    std::vector<int> exponents;
    std::vector<double> tensor;
  };
  std::vector<Term> terms_;
};

}  // namespace bwm
