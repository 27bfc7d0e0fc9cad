#include "bwm/grid.hpp"

#include <cmath>
#include <string>

namespace bwm {

Grid::Grid(int dim, int n, double box) : Grid(dim, n, box, true) {}

Grid::Grid(int dim, int n, double box, bool enforce_cap) : dim_(dim), n_(n), box_(box) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgument("grid dimension must be in [1, 4], got " + std::to_string(dim));
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw InvalidArgument("points per axis must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(box > 0.0) || !std::isfinite(box)) {
    throw InvalidArgument("box length must be positive and finite");
  }
  const int log2n = static_cast<int>(std::lround(std::log2(n)));
  if (enforce_cap && dim * log2n > 24) {
    throw InvalidArgument("grid exceeds 2^24 points");
  }
  points_ = 1;
  for (int a = 0; a < dim; ++a) points_ *= static_cast<std::size_t>(n);
  modes_ = points_ / static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
}

Grid Grid::refined(const Grid& g, int factor) {
  if (factor < 1) throw InvalidArgument("refinement factor must be >= 1");
  return Grid(g.dim_, g.n_ * factor, g.box_, false);
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

double Grid::volume() const { return std::pow(box_, dim_); }

double Grid::max_frequency() const { return wavenumber() * (n_ / 2) * std::sqrt(static_cast<double>(dim_)); }

IntVec Grid::unflatten(std::size_t index) const {
  IntVec idx{};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(index % static_cast<std::size_t>(n_));
    index /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::size_t Grid::flatten(const IntVec& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    int i = idx[a] % n_;
    if (i < 0) i += n_;
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return flat;
}

}  // namespace bwm
