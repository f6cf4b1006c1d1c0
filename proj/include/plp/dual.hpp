#pragma once

#include <complex>

#include "plp/ffield.hpp"

namespace plp {

inline std::complex<double> zeroLike(const std::complex<double>&) { return {0.0, 0.0}; }
inline std::complex<double> oneLike(const std::complex<double>&) { return {1.0, 0.0}; }
inline bool isZeroExact(const std::complex<double>& x) { return x == std::complex<double>{}; }

/// Number of the form value + deriv·ε with ε² = 0. Arithmetic propagates
/// exact first derivatives through any +,−,×,÷ computation.
template <class T>
struct Dual {
  T value;
  T deriv;

  Dual() = default;
  explicit Dual(T v) : value(v), deriv(zeroLike(v)) {}
  Dual(T v, T d) : value(v), deriv(d) {}

  friend Dual operator+(const Dual& a, const Dual& b) {
    return {a.value + b.value, a.deriv + b.deriv};
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    return {a.value - b.value, a.deriv - b.deriv};
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T av = a.value / b.value;
    return {av, (a.deriv - av * b.deriv) / b.value};
  }
  Dual operator-() const { return {-value, -deriv}; }

  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }
};

template <class T>
Dual<T> zeroLike(const Dual<T>& x) {
  return Dual<T>(zeroLike(x.value));
}
template <class T>
Dual<T> oneLike(const Dual<T>& x) {
  return Dual<T>(oneLike(x.value));
}
template <class T>
bool isZeroExact(const Dual<T>& x) {
  return isZeroExact(x.value);
}

}  // namespace plp
