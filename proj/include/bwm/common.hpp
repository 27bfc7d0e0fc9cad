// Shared error types, aligned storage and small numeric helpers.
#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition or shape violation in the caller's input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf encountered in data that must be finite.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// A point left the tubular neighbourhood where the target projection is defined.
class OutsideTube : public Error {
 public:
  using Error::Error;
};

/// |u| dropped below the admissible radius somewhere on the grid.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& what, std::size_t component_index, double value)
      : Error(what), index_(component_index), value_(value) {}
  std::size_t index() const { return index_; }
  double value() const { return value_; }

 private:
  std::size_t index_;
  double value_;
};

/// A requested multiplier scale lies outside the range the sampling can represent.
class Unresolvable : public Error {
 public:
  using Error::Error;
};

template <class T, std::size_t Alignment = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };
  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Alignment}));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{Alignment}); }

  template <class U>
  bool operator==(const AlignedAllocator<U, Alignment>&) const noexcept {
    return true;
  }
};

using RealVector = std::vector<double, AlignedAllocator<double>>;
using ComplexVector = std::vector<complex, AlignedAllocator<complex>>;

inline bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace bwm
