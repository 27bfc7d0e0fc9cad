// Real-to-complex transforms over arbitrary rectangular shapes (FFTW backend)
// and iteration over the half-spectrum layout they produce.
#pragma once

#include <cstddef>
#include <vector>

#include "bwm/common.hpp"

namespace bwm::fft {

std::size_t real_size(const std::vector<int>& shape);
/// Coefficients stored for a real array: last axis halved to n/2+1.
std::size_t half_size(const std::vector<int>& shape);

/// Unnormalised forward transform F_k = Σ_x f_x e^{-i k·x}.
void forward(const std::vector<int>& shape, const double* in, complex* out);
/// Inverse transform including the 1/N factor. `in` is not modified.
void inverse(const std::vector<int>& shape, const complex* in, double* out);

/// Visit every stored coefficient of the half-spectrum layout in memory order.
///
/// `fn(index, k, nyquist_mask, weight)` receives the signed integer frequency
/// per axis (k[a] ∈ [-n_a/2, n_a/2)), a bit mask of axes sitting at the
/// Nyquist index, and the Hermitian multiplicity (1 or 2) of the stored entry.
template <class Fn>
void for_each_mode(const std::vector<int>& shape, Fn&& fn) {
  const int rank = static_cast<int>(shape.size());
  const int last = shape[rank - 1];
  const int last_half = last / 2 + 1;
  std::vector<int> counter(rank, 0);
  std::vector<int> k(rank, 0);
  std::size_t outer = 1;
  for (int a = 0; a + 1 < rank; ++a) outer *= static_cast<std::size_t>(shape[a]);
  std::size_t index = 0;
  for (std::size_t o = 0; o < outer; ++o) {
    unsigned mask = 0;
    for (int a = 0; a + 1 < rank; ++a) {
      const int n = shape[a];
      const int c = counter[a];
      k[a] = c < n / 2 ? c : c - n;
      if (n % 2 == 0 && c == n / 2) mask |= 1u << a;
    }
    for (int m = 0; m < last_half; ++m, ++index) {
      k[rank - 1] = m;
      unsigned full_mask = mask;
      double weight = 2.0;
      if (m == 0) weight = 1.0;
      if (last % 2 == 0 && m == last / 2) {
        weight = 1.0;
        full_mask |= 1u << (rank - 1);
        k[rank - 1] = -m;
      }
      fn(index, k.data(), full_mask, weight);
    }
    for (int a = rank - 2; a >= 0; --a) {
      if (++counter[a] < shape[a]) break;
      counter[a] = 0;
    }
  }
}

}  // namespace bwm::fft
