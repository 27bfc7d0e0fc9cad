#include "bwm/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace bwm::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// The FFTW planner is not thread safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(const std::vector<int>& shape) {
  static std::map<std::vector<int>, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(shape);
  if (it != cache.end()) return it->second;

  const std::size_t rn = real_size(shape);
  const std::size_t cn = half_size(shape);
  double* r = fftw_alloc_real(rn);
  fftw_complex* c = fftw_alloc_complex(cn);
  const int rank = static_cast<int>(shape.size());
  // FFTW_ESTIMATE keeps the chosen algorithm, and therefore every output bit,
  // independent of timing noise.
  PlanPair p;
  p.forward = fftw_plan_dft_r2c(rank, shape.data(), r, c, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r(rank, shape.data(), c, r, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(shape, p).first->second;
}

}  // namespace

std::size_t real_size(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

std::size_t half_size(const std::vector<int>& shape) {
  return real_size(shape) / static_cast<std::size_t>(shape.back()) *
         static_cast<std::size_t>(shape.back() / 2 + 1);
}

void forward(const std::vector<int>& shape, const double* in, complex* out) {
  const PlanPair& p = plans_for(shape);
  auto* cout = reinterpret_cast<fftw_complex*>(out);
  // new-array execution requires the planning alignment and a writable input.
  if (fftw_alignment_of(const_cast<double*>(in)) == 0 && fftw_alignment_of(reinterpret_cast<double*>(out)) == 0) {
    fftw_execute_dft_r2c(p.forward, const_cast<double*>(in), cout);
    return;
  }
  RealVector rin(in, in + real_size(shape));
  ComplexVector cbuf(half_size(shape));
  fftw_execute_dft_r2c(p.forward, rin.data(), reinterpret_cast<fftw_complex*>(cbuf.data()));
  std::memcpy(out, cbuf.data(), cbuf.size() * sizeof(complex));
}

void inverse(const std::vector<int>& shape, const complex* in, double* out) {
  const PlanPair& p = plans_for(shape);
  const std::size_t rn = real_size(shape);
  ComplexVector scratch(in, in + half_size(shape));
  if (fftw_alignment_of(out) == 0) {
    fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), out);
  } else {
    RealVector rout(rn);
    fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), rout.data());
    std::memcpy(out, rout.data(), rn * sizeof(double));
  }
  const double scale = 1.0 / static_cast<double>(rn);
  for (std::size_t i = 0; i < rn; ++i) out[i] *= scale;
}

}  // namespace bwm::fft
