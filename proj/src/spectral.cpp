#include "bwm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bwm {

SpectralField partial(const SpectralField& F, int axis) {
  if (axis < 0 || axis >= F.grid().dim()) throw InvalidArgument("derivative axis out of range");
  return apply_symbol(F, [axis](const Mode& m) { return complex(0.0, m.odd_factor(axis)); });
}

SpectralField partial2(const SpectralField& F, int a, int b) {
  if (a < 0 || b < 0 || a >= F.grid().dim() || b >= F.grid().dim()) {
    throw InvalidArgument("derivative axis out of range");
  }
  if (a == b) {
    return apply_symbol(F, [a](const Mode& m) {
      const double x = m.xi[static_cast<std::size_t>(a)];
      return complex(-x * x, 0.0);
    });
  }
  return apply_symbol(F, [a, b](const Mode& m) { return complex(-m.odd_factor(a) * m.odd_factor(b), 0.0); });
}

SpectralField laplacian(const SpectralField& F) {
  return apply_symbol(F, [](const Mode& m) { return complex(-m.norm2, 0.0); });
}

SpectralField bilaplacian(const SpectralField& F) {
  return apply_symbol(F, [](const Mode& m) { return complex(m.norm2 * m.norm2, 0.0); });
}

std::size_t hessian_index(int dim, int a, int b) {
  if (a > b) std::swap(a, b);
  // rows before a contribute dim, dim-1, ..., dim-a+1 entries
  return static_cast<std::size_t>(a * dim - a * (a - 1) / 2 + (b - a));
}

std::vector<SpectralField> spectral_derivative(const SpectralField& F, DerivativeKind kind) {
  std::vector<SpectralField> out;
  const int d = F.grid().dim();
  switch (kind) {
    case DerivativeKind::gradient:
      for (int a = 0; a < d; ++a) out.push_back(partial(F, a));
      break;
    case DerivativeKind::laplacian:
      out.push_back(laplacian(F));
      break;
    case DerivativeKind::bilaplacian:
      out.push_back(bilaplacian(F));
      break;
    case DerivativeKind::hessian:
      for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) out.push_back(partial2(F, a, b));
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

DyadicIndex::DyadicIndex(int exponent) : exponent_(exponent) {
  if (exponent < -30 || exponent > 30) {
    throw InvalidArgument("dyadic exponent must satisfy |j| <= 30, got " + std::to_string(exponent));
  }
}

double DyadicIndex::value() const { return std::ldexp(1.0, exponent_); }

namespace {

double log_bump(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

}  // namespace

double lp_phi(double s) {
  if (!(s > 0.5) || !(s < 2.0)) return 0.0;
  const double t = std::log2(s);
  const double b = log_bump(t);
  return b / (log_bump(t - 1.0) + b + log_bump(t + 1.0));
}

ShellRange resolvable_shells(const Grid& grid) {
  const double lo = std::log2(grid.min_frequency());
  const double hi = std::log2(grid.max_frequency());
  return {static_cast<int>(std::floor(lo - 1.0)) + 1, static_cast<int>(std::ceil(hi + 1.0)) - 1};
}

SpectralField littlewood_paley_project(const SpectralField& F, DyadicIndex lambda) {
  const double l = lambda.value();
  return apply_symbol(F, [l](const Mode& m) { return complex(lp_phi(std::sqrt(m.norm2) / l), 0.0); });
}

Field littlewood_paley_project(const Field& f, DyadicIndex lambda) {
  return transform_inverse(littlewood_paley_project(transform_forward(f), lambda));
}

Field remove_mean(const Field& f) {
  Field out = f;
  const auto means = component_means(f);
  for (int c = 0; c < f.components(); ++c) {
    for (double& v : out.component(c)) v -= means[static_cast<std::size_t>(c)];
  }
  return out;
}

// ---------------------------------------------------------------------------

Direction make_direction(std::initializer_list<double> components) {
  Direction e;
  e.dim = static_cast<int>(components.size());
  if (e.dim < 1 || e.dim > kMaxDim) throw InvalidArgument("direction dimension out of range");
  double n2 = 0.0;
  int a = 0;
  for (double v : components) {
    e.e[static_cast<std::size_t>(a++)] = v;
    n2 += v * v;
  }
  if (!(n2 > 0.0)) throw InvalidArgument("direction must be nonzero");
  const double n = std::sqrt(n2);
  for (auto& v : e.e) v /= n;
  return e;
}

double direction_angle(const Direction& e, const std::array<double, kMaxDim>& xi) {
  double dot = 0.0;
  double n2 = 0.0;
  for (int a = 0; a < e.dim; ++a) {
    dot += e.e[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
    n2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  }
  if (n2 == 0.0) return 0.0;
  return std::acos(std::clamp(dot / std::sqrt(n2), -1.0, 1.0));
}

DirectionSet::DirectionSet(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("direction family dimension out of range");
  int total = 1;
  for (int a = 0; a < dim; ++a) total *= 3;
  for (int code = 0; code < total; ++code) {
    Direction e;
    e.dim = dim;
    int c = code;
    double n2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const int digit = c % 3 - 1;
      c /= 3;
      e.e[static_cast<std::size_t>(a)] = digit;
      n2 += digit * digit;
    }
    if (n2 == 0.0) continue;
    for (auto& v : e.e) v /= std::sqrt(n2);
    dirs_.push_back(e);
  }
}

std::size_t DirectionSet::index_of(const Direction& e) const {
  if (e.dim != dim_) throw InvalidArgument("direction dimension does not match the family");
  for (std::size_t i = 0; i < dirs_.size(); ++i) {
    double diff = 0.0;
    for (int a = 0; a < dim_; ++a) diff = std::max(diff, std::abs(dirs_[i].e[static_cast<std::size_t>(a)] - e.e[static_cast<std::size_t>(a)]));
    if (diff < 1e-9) return i;
  }
  throw InvalidArgument("direction is not a member of the sector family");
}

double DirectionSet::bump(std::size_t i, const std::array<double, kMaxDim>& xi, double norm) const {
  double dot = 0.0;
  for (int a = 0; a < dim_; ++a) dot += dirs_[i].e[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  const double t = std::acos(std::clamp(dot / norm, -1.0, 1.0)) / (kPi / 4.0);
  if (t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double DirectionSet::weight(std::size_t i, const std::array<double, kMaxDim>& xi) const {
  double n2 = 0.0;
  for (int a = 0; a < dim_; ++a) n2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  if (n2 == 0.0) return 0.0;
  const double norm = std::sqrt(n2);
  const double own = bump(i, xi, norm);
  if (own == 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < dirs_.size(); ++j) total += bump(j, xi, norm);
  return own / total;
}

Field sector_project(const Field& f, const DirectionSet& family, const Direction& e) {
  if (family.dim() != f.grid().dim()) throw InvalidArgument("sector family dimension does not match the grid");
  const std::size_t idx = family.index_of(e);
  return transform_inverse(
      apply_symbol(transform_forward(f), [&](const Mode& m) { return complex(family.weight(idx, m.xi), 0.0); }));
}

// ---------------------------------------------------------------------------

namespace {

// Flat half-spectrum index on `target` of the signed frequency k, or npos
// when k is not representable away from the target Nyquist planes.
std::size_t half_index(const Grid& target, const int* k) {
  const int n = target.n();
  const int d = target.dim();
  std::size_t idx = 0;
  for (int a = 0; a < d; ++a) {
    int ka = k[a];
    if (ka <= -n / 2 || ka >= n / 2) return static_cast<std::size_t>(-1);
    if (a + 1 < d) {
      if (ka < 0) ka += n;
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(ka);
    } else {
      idx = idx * static_cast<std::size_t>(n / 2 + 1) + static_cast<std::size_t>(ka);
    }
  }
  return idx;
}

}  // namespace

SpectralField pad_spectrum(const SpectralField& coarse, const Grid& fine) {
  const Grid& g = coarse.grid();
  if (fine.dim() != g.dim() || fine.box() != g.box() || fine.n() < g.n()) {
    throw InvalidArgument("padding target must share dimension and box and be at least as fine");
  }
  SpectralField out(fine, coarse.components());
  const double scale = static_cast<double>(fine.points()) / static_cast<double>(g.points());
  std::vector<std::size_t> map(g.modes());
  fft::for_each_mode(g.shape(), [&](std::size_t i, const int* k, unsigned mask, double) {
    map[i] = mask ? static_cast<std::size_t>(-1) : half_index(fine, k);
  });
  for (int c = 0; c < coarse.components(); ++c) {
    auto src = coarse.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] != static_cast<std::size_t>(-1)) dst[map[i]] = scale * src[i];
    }
  }
  return out;
}

SpectralField truncate_spectrum(const SpectralField& fine, const Grid& coarse) {
  const Grid& g = fine.grid();
  if (coarse.dim() != g.dim() || coarse.box() != g.box() || coarse.n() > g.n()) {
    throw InvalidArgument("truncation target must share dimension and box and be at most as fine");
  }
  SpectralField out(coarse, fine.components());
  const double scale = static_cast<double>(coarse.points()) / static_cast<double>(g.points());
  std::vector<std::size_t> map(coarse.modes());
  fft::for_each_mode(coarse.shape(), [&](std::size_t i, const int* k, unsigned mask, double) {
    map[i] = mask ? static_cast<std::size_t>(-1) : half_index(g, k);
  });
  for (int c = 0; c < fine.components(); ++c) {
    auto src = fine.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] != static_cast<std::size_t>(-1)) dst[i] = scale * src[map[i]];
    }
  }
  return out;
}

}  // namespace bwm
