// L-component real fields on a grid and their Fourier coefficients.
#pragma once

#include <cstddef>
#include <span>

#include "bwm/common.hpp"
#include "bwm/grid.hpp"

namespace bwm {

/// Real field with `components` values per grid point, stored component-major
/// and row-major within a component.
class Field {
 public:
  Field(const Grid& grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> component(int c) {
    return {values_.data() + static_cast<std::size_t>(c) * grid_.points(), grid_.points()};
  }
  std::span<const double> component(int c) const {
    return {values_.data() + static_cast<std::size_t>(c) * grid_.points(), grid_.points()};
  }
  double& operator()(int c, std::size_t point) { return values_[static_cast<std::size_t>(c) * grid_.points() + point]; }
  double operator()(int c, std::size_t point) const {
    return values_[static_cast<std::size_t>(c) * grid_.points() + point];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  /// Throws NonFinite naming the first offending entry.
  void require_finite(const char* what) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  /// this += s * other
  Field& axpy(double s, const Field& other);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  void require_congruent(const Field& other) const;

  Grid grid_;
  int components_;
  RealVector values_;
};

/// Half-spectrum Fourier coefficients of a real field (Hermitian symmetry is
/// implicit in the layout; see fft::for_each_mode).
class SpectralField {
 public:
  SpectralField(const Grid& grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }

  std::span<complex> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.modes(), grid_.modes()};
  }
  std::span<const complex> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.modes(), grid_.modes()};
  }
  std::span<complex> coeffs() { return coeffs_; }
  std::span<const complex> coeffs() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  Grid grid_;
  int components_;
  ComplexVector coeffs_;
};

SpectralField transform_forward(const Field& f);
Field transform_inverse(const SpectralField& F);

/// Continuous L² norm over the box, (Σ_x |f(x)|² h^d)^{1/2}, all components.
double l2_norm(const Field& f);
/// Same quantity computed from the coefficients through Parseval.
double l2_norm(const SpectralField& F);
double max_abs(const Field& f);
/// Pointwise mean of each component.
std::vector<double> component_means(const Field& f);

}  // namespace bwm
