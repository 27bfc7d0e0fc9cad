#include "bwm/field.hpp"

#include <cmath>
#include <string>

#include "bwm/fft.hpp"

namespace bwm {

Field::Field(const Grid& grid, int components)
    : grid_(grid), components_(components), values_(static_cast<std::size_t>(components) * grid.points(), 0.0) {
  if (components < 1) throw InvalidArgument("field needs at least one component");
}

bool Field::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Field::require_finite(const char* what) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFinite(std::string(what) + ": non-finite value at component " +
                      std::to_string(i / grid_.points()) + ", point " + std::to_string(i % grid_.points()));
    }
  }
}

void Field::require_congruent(const Field& other) const {
  if (grid_ != other.grid_ || components_ != other.components_) {
    throw InvalidArgument("field shapes differ");
  }
}

Field& Field::operator+=(const Field& other) {
  require_congruent(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_congruent(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::axpy(double s, const Field& other) {
  require_congruent(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * other.values_[i];
  return *this;
}

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components), coeffs_(static_cast<std::size_t>(components) * grid.modes()) {
  if (components < 1) throw InvalidArgument("field needs at least one component");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (grid_ != other.grid_ || components_ != other.components_) throw InvalidArgument("spectral shapes differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (grid_ != other.grid_ || components_ != other.components_) throw InvalidArgument("spectral shapes differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField transform_forward(const Field& f) {
  f.require_finite("transform_forward");
  SpectralField F(f.grid(), f.components());
  const auto shape = f.grid().shape();
  for (int c = 0; c < f.components(); ++c) {
    fft::forward(shape, f.component(c).data(), F.component(c).data());
  }
  return F;
}

Field transform_inverse(const SpectralField& F) {
  Field f(F.grid(), F.components());
  const auto shape = F.grid().shape();
  for (int c = 0; c < F.components(); ++c) {
    fft::inverse(shape, F.component(c).data(), f.component(c).data());
  }
  return f;
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const SpectralField& F) {
  // Σ_x |f|² = N⁻¹ Σ_k |F_k|², so ∫|f|² = h^d N⁻¹ Σ_k |F_k|² = box^d N⁻² Σ_k |F_k|².
  const auto shape = F.grid().shape();
  double s = 0.0;
  for (int c = 0; c < F.components(); ++c) {
    auto coeffs = F.component(c);
    fft::for_each_mode(shape, [&](std::size_t i, const int*, unsigned, double w) { s += w * std::norm(coeffs[i]); });
  }
  const double n = static_cast<double>(F.grid().points());
  return std::sqrt(s * F.grid().volume() / (n * n));
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> component_means(const Field& f) {
  std::vector<double> means(static_cast<std::size_t>(f.components()), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    double s = 0.0;
    for (double v : f.component(c)) s += v;
    means[static_cast<std::size_t>(c)] = s / static_cast<double>(f.grid().points());
  }
  return means;
}

}  // namespace bwm
