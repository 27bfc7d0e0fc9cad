#include "bwm/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "bwm/parallel.hpp"
#include "bwm/spectral.hpp"

namespace bwm {

namespace {

Field lift(const SpectralField& X, const Grid& fine) { return transform_inverse(pad_spectrum(X, fine)); }

std::size_t hess_count(int d) { return static_cast<std::size_t>(d * (d + 1) / 2); }

// Pointwise values of the padded derivatives at one point.
struct PointData {
  int L, d;
  std::vector<double> u, ut, lap, g, gl, h;  // g[i*L + K], h[hessian_index*L + K]

  PointData(int L_, int d_)
      : L(L_),
        d(d_),
        u(static_cast<std::size_t>(L_)),
        ut(static_cast<std::size_t>(L_)),
        lap(static_cast<std::size_t>(L_)),
        g(static_cast<std::size_t>(L_ * d_)),
        gl(static_cast<std::size_t>(L_ * d_)),
        h(hess_count(d_) * static_cast<std::size_t>(L_)) {}

  void load(const PaddedDerivatives& D, std::size_t p) {
    for (int K = 0; K < L; ++K) {
      const auto k = static_cast<std::size_t>(K);
      u[k] = D.u(K, p);
      ut[k] = D.ut(K, p);
      lap[k] = D.lap(K, p);
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i * L) + k] = D.grad[static_cast<std::size_t>(i)](K, p);
        gl[static_cast<std::size_t>(i * L) + k] = D.gradlap[static_cast<std::size_t>(i)](K, p);
      }
      for (std::size_t m = 0; m < hess_count(d); ++m) h[m * static_cast<std::size_t>(L) + k] = D.hess[m](K, p);
    }
  }
  double hij(int i, int j, int K) const {
    const auto m = hessian_index(d, std::min(i, j), std::max(i, j));
    return h[m * static_cast<std::size_t>(L) + static_cast<std::size_t>(K)];
  }
  double gi(int i, int K) const { return g[static_cast<std::size_t>(i * L + K)]; }
  double gli(int i, int K) const { return gl[static_cast<std::size_t>(i * L + K)]; }

  /// M2 = u_t⊗u_t + Δu⊗Δu + 4 Σ_i ∂_iu⊗∂_iΔu + 2 Σ_ij ∂_iju⊗∂_iju (row-major L×L)
  void second_order_matrix(std::vector<double>& M) const {
    M.assign(static_cast<std::size_t>(L * L), 0.0);
    for (int a = 0; a < L; ++a) {
      for (int b = 0; b < L; ++b) {
        double s = ut[static_cast<std::size_t>(a)] * ut[static_cast<std::size_t>(b)] +
                   lap[static_cast<std::size_t>(a)] * lap[static_cast<std::size_t>(b)];
        for (int i = 0; i < d; ++i) s += 4.0 * gi(i, a) * gli(i, b);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) s += 2.0 * hij(i, j, a) * hij(i, j, b);
        M[static_cast<std::size_t>(a * L + b)] = s;
      }
    }
  }
};

}  // namespace

PaddedDerivatives padded_derivatives(const Field& u, const Field& ut) {
  if (u.grid() != ut.grid() || u.components() != ut.components()) {
    throw InvalidArgument("u and ut must share grid and component count");
  }
  const Grid fine = Grid::refined(u.grid(), 2);
  const int d = u.grid().dim();
  const SpectralField U = transform_forward(u);
  const SpectralField V = transform_forward(ut);
  const SpectralField LU = laplacian(U);
  PaddedDerivatives D{fine, lift(U, fine), lift(V, fine), lift(LU, fine), {}, {}, {}};
  for (int i = 0; i < d; ++i) {
    D.grad.push_back(lift(partial(U, i), fine));
    D.gradlap.push_back(lift(partial(LU, i), fine));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) D.hess.push_back(lift(partial2(U, i, j), fine));
  return D;
}

Field restrict_to(const Field& fine, const Grid& coarse) {
  return transform_inverse(truncate_spectrum(transform_forward(fine), coarse));
}

void check_constraint(const Field& u, double min_radius) {
  const Grid& g = u.grid();
  for (std::size_t p = 0; p < g.points(); ++p) {
    double r2 = 0.0;
    for (int c = 0; c < u.components(); ++c) r2 += u(c, p) * u(c, p);
    const double r = std::sqrt(r2);
    if (!(r >= min_radius)) {
      const IntVec idx = g.unflatten(p);
      std::ostringstream os;
      os << "constraint violation: |u| = " << r << " < " << min_radius << " at grid index (";
      for (int a = 0; a < g.dim(); ++a) os << (a ? ", " : "") << idx[static_cast<std::size_t>(a)];
      os << ")";
      throw ConstraintViolation(os.str(), p, r);
    }
  }
}

Field sphere_nonlinearity(const State& s) {
  check_constraint(s.u);
  const int L = s.components();
  const int d = s.grid().dim();
  const PaddedDerivatives D = padded_derivatives(s.u, s.ut);
  Field out(D.fine, L);
  parallel_for(0, D.fine.points(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      double sc = 0.0;
      for (int K = 0; K < L; ++K) {
        sc += D.ut(K, p) * D.ut(K, p) + D.lap(K, p) * D.lap(K, p);
        for (int i = 0; i < d; ++i) {
          sc += 4.0 * D.grad[static_cast<std::size_t>(i)](K, p) * D.gradlap[static_cast<std::size_t>(i)](K, p);
        }
        for (int i = 0; i < d; ++i) {
          for (int j = i; j < d; ++j) {
            const double v = D.hess[hessian_index(d, i, j)](K, p);
            sc += (i == j ? 2.0 : 4.0) * v * v;
          }
        }
      }
      for (int K = 0; K < L; ++K) out(K, p) = -sc * D.u(K, p);
    }
  });
  return restrict_to(out, s.grid());
}

Field general_nonlinearity(const State& s, const TargetManifold& target) {
  const int L = s.components();
  const int d = s.grid().dim();
  if (L != target.ambient_dim()) throw InvalidArgument("state components do not match the target dimension");
  const PaddedDerivatives D = padded_derivatives(s.u, s.ut);
  auto space = std::make_shared<const JetSpace>(L, 4);
  const auto Ls = static_cast<std::size_t>(L);

  // ordered tuple → monomial index
  std::vector<std::size_t> idx2(Ls * Ls), idx3(Ls * Ls * Ls), idx4(Ls * Ls * Ls * Ls);
  std::vector<int> e(Ls);
  auto monomial = [&](std::initializer_list<std::size_t> vars) {
    std::fill(e.begin(), e.end(), 0);
    for (auto v : vars) e[v] += 1;
    return space->index(e);
  };
  for (std::size_t a = 0; a < Ls; ++a)
    for (std::size_t b = 0; b < Ls; ++b) {
      idx2[a * Ls + b] = monomial({a, b});
      for (std::size_t c = 0; c < Ls; ++c) {
        idx3[(a * Ls + b) * Ls + c] = monomial({a, b, c});
        for (std::size_t q = 0; q < Ls; ++q) idx4[((a * Ls + b) * Ls + c) * Ls + q] = monomial({a, b, c, q});
      }
    }
  const std::size_t first = space->degree_begin(2);

  Field out(D.fine, L);
  parallel_for(
      0, D.fine.points(),
      [&](std::size_t lo, std::size_t hi) {
        PointData P(L, d);
        std::vector<double> M2, G(Ls * Ls), W(space->size());
        for (std::size_t p = lo; p < hi; ++p) {
          P.load(D, p);
          P.second_order_matrix(M2);
          for (std::size_t a = 0; a < Ls; ++a)
            for (std::size_t b = 0; b < Ls; ++b) {
              double sg = 0.0;
              for (int i = 0; i < d; ++i) sg += P.gi(i, static_cast<int>(a)) * P.gi(i, static_cast<int>(b));
              G[a * Ls + b] = sg;
            }
          std::fill(W.begin(), W.end(), 0.0);
          for (std::size_t ab = 0; ab < Ls * Ls; ++ab) W[idx2[ab]] += M2[ab];
          for (std::size_t a = 0; a < Ls; ++a)
            for (std::size_t b = 0; b < Ls; ++b)
              for (std::size_t c = 0; c < Ls; ++c) {
                // 2 Σ_i ∂_iu^a ∂_iu^b Δu^c + 4 Σ_ij ∂_iu^a ∂_ju^b ∂_iju^c
                double s3 = 2.0 * G[a * Ls + b] * P.lap[c];
                for (int i = 0; i < d; ++i)
                  for (int j = 0; j < d; ++j)
                    s3 += 4.0 * P.gi(i, static_cast<int>(a)) * P.gi(j, static_cast<int>(b)) *
                          P.hij(i, j, static_cast<int>(c));
                W[idx3[(a * Ls + b) * Ls + c]] += s3;
                for (std::size_t q = 0; q < Ls; ++q) W[idx4[((a * Ls + b) * Ls + c) * Ls + q]] += G[a * Ls + b] * G[c * Ls + q];
              }
          const auto jets = target.projection_jets(P.u, space);
          for (int J = 0; J < L; ++J) {
            const Jet& pj = jets[static_cast<std::size_t>(J)];
            double v = 0.0;
            for (std::size_t m = first; m < space->size(); ++m) v += space->factorial(m) * pj[m] * W[m];
            out(J, p) = v;
          }
        }
      },
      1024);
  return restrict_to(out, s.grid());
}

Forcing target_forcing(const TargetManifold& target) {
  if (target.is_round()) return [](const State& s) { return sphere_nonlinearity(s); };
  return [target](const State& s) { return general_nonlinearity(s, target); };
}

// ---------------------------------------------------------------------------

std::vector<double> second_difference_weights(int order) {
  switch (order) {
    case 2:
      return {1.0, -2.0, 1.0};
    case 4:
      return {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    case 6:
      return {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    case 8:
      return {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
    default:
      throw InvalidArgument("time stencil order must be 2, 4, 6 or 8");
  }
}

namespace {

Field fine_bilaplacian(const Field& f) { return transform_inverse(bilaplacian(transform_forward(f))); }

double relative_gap(const std::vector<Field>& a, const std::vector<Field>& b) {
  double gap = 0.0;
  double ref = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    gap = std::max(gap, l2_norm(a[n] - b[n]));
    ref = std::max(ref, l2_norm(b[n]));
  }
  return ref > 0.0 ? gap / ref : gap;
}

}  // namespace

NullFormResult null_form(const SpaceTimeBlock& block, const BilinearFamily& Q, int stencil_order) {
  const auto w = second_difference_weights(stencil_order);
  const int r = stencil_order / 2;
  const int N = static_cast<int>(block.steps());
  if (N < 2 * r + 1) {
    throw InvalidArgument("block of " + std::to_string(N) + " samples is too short for the order-" +
                          std::to_string(stencil_order) + " time stencil");
  }
  if (!block.has_velocities()) throw InvalidArgument("null-form evaluation needs velocity samples");
  const int L = block.components();
  if (Q.L() != L) throw InvalidArgument("bilinear family dimension does not match the block");
  const auto Ls = static_cast<std::size_t>(L);
  const Grid& coarse = block.grid();
  const Grid fine = Grid::refined(coarse, 2);
  const std::size_t pts = fine.points();
  const double idt2 = 1.0 / (block.dt() * block.dt());

  // Samples on the padded grid and their pairwise products.
  std::vector<Field> U;
  std::vector<Field> P;  // P[n*L*L + K*L + M] = u^K u^M
  for (int n = 0; n < N; ++n) {
    U.push_back(lift(transform_forward(block.snapshot(static_cast<std::size_t>(n))), fine));
    for (std::size_t K = 0; K < Ls; ++K) {
      for (std::size_t M = 0; M < Ls; ++M) {
        Field prod(fine, 1);
        for (std::size_t p = 0; p < pts; ++p) prod(0, p) = U.back()(static_cast<int>(K), p) * U.back()(static_cast<int>(M), p);
        P.push_back(std::move(prod));
      }
    }
  }
  auto time_second = [&](auto&& sample, int n) {
    Field acc = sample(n - r);
    acc *= w[0];
    for (int s = 1; s <= 2 * r; ++s) acc.axpy(w[static_cast<std::size_t>(s)], sample(n - r + s));
    acc *= idt2;
    return acc;
  };

  NullFormResult res;
  res.stencil_order = stencil_order;
  for (int n = r; n < N - r; ++n) {
    res.times.push_back(block.time(static_cast<std::size_t>(n)));
    const Field& un = U[static_cast<std::size_t>(n)];
    // L u^M
    Field Lu = time_second([&](int m) -> const Field& { return U[static_cast<std::size_t>(m)]; }, n);
    Lu += fine_bilaplacian(un);

    // L(u^K u^M) − u^K L u^M − u^M L u^K
    std::vector<Field> R;
    for (std::size_t K = 0; K < Ls; ++K) {
      for (std::size_t M = 0; M < Ls; ++M) {
        auto sample = [&](int m) -> const Field& { return P[(static_cast<std::size_t>(m) * Ls + K) * Ls + M]; };
        Field LP = time_second(sample, n);
        LP += fine_bilaplacian(sample(n));
        for (std::size_t p = 0; p < pts; ++p) {
          LP(0, p) -= un(static_cast<int>(K), p) * Lu(static_cast<int>(M), p) +
                      un(static_cast<int>(M), p) * Lu(static_cast<int>(K), p);
        }
        R.push_back(std::move(LP));
      }
    }

    const PaddedDerivatives D =
        padded_derivatives(block.snapshot(static_cast<std::size_t>(n)), block.velocities()[static_cast<std::size_t>(n)]);
    Field comm(fine, L), expd(fine, L), red(fine, L);
    parallel_for(
        0, pts,
        [&](std::size_t lo, std::size_t hi) {
          PointData pd(L, coarse.dim());
          std::vector<double> M2;
          for (std::size_t p = lo; p < hi; ++p) {
            pd.load(D, p);
            pd.second_order_matrix(M2);
            const auto C = Q.coefficients(pd.u);
            for (std::size_t J = 0; J < Ls; ++J) {
              double c = 0.0, e = 0.0, q = 0.0;
              for (std::size_t K = 0; K < Ls; ++K) {
                for (std::size_t M = 0; M < Ls; ++M) {
                  const double cj = C[(J * Ls + K) * Ls + M];
                  c += cj * R[K * Ls + M](0, p);
                  e += cj * M2[K * Ls + M];
                  q += cj * pd.u[K] * Lu(static_cast<int>(M), p);
                }
              }
              comm(static_cast<int>(J), p) = 0.5 * c;
              expd(static_cast<int>(J), p) = e;
              red(static_cast<int>(J), p) = -q;
            }
          }
        },
        1024);
    res.commutator.push_back(restrict_to(comm, coarse));
    res.expanded.push_back(restrict_to(expd, coarse));
    res.reduced.push_back(restrict_to(red, coarse));
  }
  res.discrepancy = relative_gap(res.commutator, res.expanded);
  res.reduced_discrepancy = relative_gap(res.reduced, res.commutator);
  return res;
}

}  // namespace bwm
