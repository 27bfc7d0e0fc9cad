// Spectral differentiation and the spatial Fourier multipliers: dyadic shells,
// angular sectors, zero padding for dealiased products.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bwm/field.hpp"
#include "bwm/fft.hpp"

namespace bwm {

/// Physical wave vector of a lattice mode; per-axis Nyquist entries keep their
/// magnitude for even symbols and are zeroed by `odd_factor` for odd ones.
struct Mode {
  std::array<double, kMaxDim> xi{};
  double norm2 = 0.0;
  unsigned nyquist = 0;
  double weight = 1.0;

  double odd_factor(int axis) const { return (nyquist >> axis) & 1u ? 0.0 : xi[static_cast<std::size_t>(axis)]; }
};

/// Visit the half-spectrum of `grid` with physical wave vectors.
template <class Fn>
void for_each_wavevector(const Grid& grid, Fn&& fn) {
  const double unit = grid.wavenumber();
  const int d = grid.dim();
  fft::for_each_mode(grid.shape(), [&](std::size_t i, const int* k, unsigned mask, double w) {
    Mode m;
    m.nyquist = mask;
    m.weight = w;
    for (int a = 0; a < d; ++a) {
      m.xi[static_cast<std::size_t>(a)] = unit * k[a];
      m.norm2 += m.xi[static_cast<std::size_t>(a)] * m.xi[static_cast<std::size_t>(a)];
    }
    fn(i, m);
  });
}

/// Multiply every coefficient by symbol(mode), the same symbol for all components.
template <class Symbol>
SpectralField apply_symbol(const SpectralField& F, Symbol&& symbol) {
  SpectralField out(F.grid(), F.components());
  std::vector<complex> sym(F.grid().modes());
  for_each_wavevector(F.grid(), [&](std::size_t i, const Mode& m) { sym[i] = symbol(m); });
  for (int c = 0; c < F.components(); ++c) {
    auto src = F.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < sym.size(); ++i) dst[i] = sym[i] * src[i];
  }
  return out;
}

enum class DerivativeKind { gradient, laplacian, bilaplacian, hessian };

/// gradient → d fields (∂_a); laplacian/bilaplacian → one field;
/// hessian → d(d+1)/2 fields ordered (0,0),(0,1),...,(0,d-1),(1,1),...
std::vector<SpectralField> spectral_derivative(const SpectralField& F, DerivativeKind kind);

SpectralField partial(const SpectralField& F, int axis);
SpectralField partial2(const SpectralField& F, int a, int b);
SpectralField laplacian(const SpectralField& F);
SpectralField bilaplacian(const SpectralField& F);
std::size_t hessian_index(int dim, int a, int b);

// ---------------------------------------------------------------------------
// Littlewood-Paley pieces.

/// Dyadic scale λ = 2^exponent, |exponent| ≤ 30.
class DyadicIndex {
 public:
  explicit DyadicIndex(int exponent);
  int exponent() const { return exponent_; }
  double value() const;

 private:
  int exponent_;
};

/// Smooth bump on (1/2, 2) normalised so that Σ_j φ(2^{-j} s) = 1 for s > 0.
double lp_phi(double s);

/// Dyadic exponents whose shell (λ/2, 2λ) meets the nonzero lattice frequencies.
struct ShellRange {
  int lo;
  int hi;
};
ShellRange resolvable_shells(const Grid& grid);

SpectralField littlewood_paley_project(const SpectralField& F, DyadicIndex lambda);
Field littlewood_paley_project(const Field& f, DyadicIndex lambda);

/// Remove the zero mode.
Field remove_mean(const Field& f);

// ---------------------------------------------------------------------------
// Angular sectors A_e = {ξ · e ≥ |ξ|/√2}.

struct Direction {
  std::array<double, kMaxDim> e{};
  int dim = 0;
};

/// Finite direction family closed under negation with a smooth angular
/// partition of unity {h_e} subordinate to the cones A_e.
///
/// Built from the normalised nonzero vectors of {-1,0,1}^d: ±1 in one
/// dimension, eight directions at 45° in two, 26 in three.
class DirectionSet {
 public:
  explicit DirectionSet(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return dirs_.size(); }
  const Direction& operator[](std::size_t i) const { return dirs_[i]; }
  /// Throws InvalidArgument when e is not a member (to 1e-9).
  std::size_t index_of(const Direction& e) const;

  /// h_e(ξ) for member i; zero at ξ = 0.
  double weight(std::size_t i, const std::array<double, kMaxDim>& xi) const;

 private:
  double bump(std::size_t i, const std::array<double, kMaxDim>& xi, double norm) const;

  int dim_;
  std::vector<Direction> dirs_;
};

Direction make_direction(std::initializer_list<double> components);
double direction_angle(const Direction& e, const std::array<double, kMaxDim>& xi);

Field sector_project(const Field& f, const DirectionSet& family, const Direction& e);

// ---------------------------------------------------------------------------
// Zero padding between grids sharing a box.

/// Embed the coefficients of a coarse field into a finer grid (values of the
/// trigonometric interpolant are preserved). Coarse Nyquist modes are dropped.
SpectralField pad_spectrum(const SpectralField& coarse, const Grid& fine);
/// Keep the modes representable on the coarse grid (Nyquist dropped).
SpectralField truncate_spectrum(const SpectralField& fine, const Grid& coarse);

}  // namespace bwm
