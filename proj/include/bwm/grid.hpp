// Periodic box discretisation.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bwm/common.hpp"

namespace bwm {

inline constexpr int kMaxDim = 4;
using IntVec = std::array<int, kMaxDim>;

/// Uniform periodic grid with n points per axis on [0, box)^d.
///
/// Frequencies live on the lattice (2π/box)·k with k ∈ {-n/2, ..., n/2-1}^d.
/// User grids are capped at 2^24 points; padded grids built internally for
/// dealiasing are exempt from the cap.
class Grid {
 public:
  Grid(int dim, int n, double box);

  /// Same box, `factor` times as many points per axis.
  static Grid refined(const Grid& g, int factor);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double box() const { return box_; }

  std::size_t points() const { return points_; }
  /// Number of stored coefficients in the half-spectrum layout.
  std::size_t modes() const { return modes_; }
  std::vector<int> shape() const { return std::vector<int>(static_cast<std::size_t>(dim_), n_); }

  double spacing() const { return box_ / n_; }
  double cell_volume() const;
  double volume() const;
  /// Lattice unit of the frequency variable.
  double wavenumber() const { return kTwoPi / box_; }
  /// Smallest nonzero and largest |ξ| on the lattice.
  double min_frequency() const { return wavenumber(); }
  double max_frequency() const;

  /// Decode a flat row-major point index (last axis fastest).
  IntVec unflatten(std::size_t index) const;
  std::size_t flatten(const IntVec& idx) const;
  double coordinate(int i) const { return i * spacing(); }

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && box_ == other.box_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  Grid(int dim, int n, double box, bool enforce_cap);

  int dim_;
  int n_;
  double box_;
  std::size_t points_;
  std::size_t modes_;
};

}  // namespace bwm
