#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace zipsections {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

inline i64 checked_i64(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw std::overflow_error("integer overflow in exact arithmetic");
  return static_cast<i64>(v);
}

// Exact rational with canonical form: den > 0, gcd(num, den) = 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(i64 n) : num_(n), den_(1) {}
  Rational(i64 n, i64 d) : num_(n), den_(d) { normalize(); }

  i64 num() const { return num_; }
  i64 den() const { return den_; }

  Rational operator+(const Rational& o) const {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    return make(n, d);
  }
  Rational operator-(const Rational& o) const {
    i128 n = i128(num_) * o.den_ - i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    return make(n, d);
  }
  Rational operator*(const Rational& o) const {
    return make(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(num_) * o.den_, i128(den_) * o.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  // Exact comparison via cross multiplication; denominators positive.
  bool operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
  }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rational make(i128 n, i128 d) {
    Rational r;
    if (d < 0) { n = -n; d = -d; }
    if (n == 0) { r.num_ = 0; r.den_ = 1; return r; }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    r.num_ = checked_i64(n / a);
    r.den_ = checked_i64(d / a);
    return r;
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    *this = make(num_, den_);
  }
  i64 num_, den_;
};

using QVec = std::vector<Rational>;

inline Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s;
  for (size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

}  // namespace zipsections
