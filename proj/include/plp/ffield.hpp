#pragma once

#include <cstdint>
#include <stdexcept>

namespace plp {

/// Raised when an evaluation hits a zero denominator at the chosen random
/// point; callers resample.
class DegenerateEvaluation : public std::runtime_error {
 public:
  explicit DegenerateEvaluation(const char* what) : std::runtime_error(what) {}
};

/// Element of the prime field F_q. Immutable value type; q must be an odd
/// prime below 2^31 so products fit in 64 bits.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::int64_t value, std::uint64_t modulus) : q_(modulus) {
    if (modulus < 2 || modulus > (1ull << 31))
      throw std::invalid_argument("field modulus out of supported range");
    std::int64_t r = value % static_cast<std::int64_t>(modulus);
    if (r < 0) r += static_cast<std::int64_t>(modulus);
    v_ = static_cast<std::uint64_t>(r);
  }

  static FieldElement zero(std::uint64_t q) { return FieldElement(0, q); }
  static FieldElement one(std::uint64_t q) { return FieldElement(1, q); }

  std::uint64_t residue() const { return v_; }
  std::uint64_t modulus() const { return q_; }
  bool isZero() const { return v_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.q_) s -= a.q_;
    return raw(s, a.q_);
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    std::uint64_t s = a.v_ + a.q_ - b.v_;
    if (s >= a.q_) s -= a.q_;
    return raw(s, a.q_);
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    return raw((a.v_ * b.v_) % a.q_, a.q_);
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }
  FieldElement operator-() const { return raw(v_ == 0 ? 0 : q_ - v_, q_); }

  FieldElement& operator+=(FieldElement b) { return *this = *this + b; }
  FieldElement& operator-=(FieldElement b) { return *this = *this - b; }
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }
  FieldElement& operator/=(FieldElement b) { return *this = *this / b; }

  /// Multiplicative inverse by extended Euclid; throws on zero.
  FieldElement inverse() const {
    if (v_ == 0) throw DegenerateEvaluation("inverse of zero field element");
    std::int64_t t = 0, newT = 1;
    std::int64_t r = static_cast<std::int64_t>(q_), newR = static_cast<std::int64_t>(v_);
    while (newR != 0) {
      const std::int64_t quotient = r / newR;
      t -= quotient * newT;
      std::swap(t, newT);
      r -= quotient * newR;
      std::swap(r, newR);
    }
    if (t < 0) t += static_cast<std::int64_t>(q_);
    return raw(static_cast<std::uint64_t>(t), q_);
  }

  bool operator==(const FieldElement& o) const { return v_ == o.v_ && q_ == o.q_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  static FieldElement raw(std::uint64_t v, std::uint64_t q) {
    FieldElement e;
    e.v_ = v;
    e.q_ = q;
    return e;
  }

  std::uint64_t v_ = 0;
  std::uint64_t q_ = 2;
};

inline FieldElement zeroLike(const FieldElement& x) { return FieldElement::zero(x.modulus()); }
inline FieldElement oneLike(const FieldElement& x) { return FieldElement::one(x.modulus()); }
inline bool isZeroExact(const FieldElement& x) { return x.isZero(); }

}  // namespace plp
