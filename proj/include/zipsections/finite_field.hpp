#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace zipsections {

// F_{p^e} with the lexicographically smallest monic irreducible modulus
// (coefficients compared from the constant term upward). Elements are packed
// base-p digit vectors: the element sum c_i x^i is stored as sum c_i p^i, so
// iterating 0..p^e-1 enumerates the whole field.
class Fq {
 public:
  using elem = uint32_t;

  Fq(int p, int e) : p_(p), e_(e) {
    if (p != 2 && p != 3 && p != 5 && !is_prime(p))
      throw std::invalid_argument("field characteristic must be prime");
    if (e < 1 || e > 12) throw std::invalid_argument("field degree out of range");
    order_ = 1;
    for (int i = 0; i < e; ++i) {
      order_ *= p;
      if (order_ > (1LL << 21)) throw std::invalid_argument("field too large");
    }
    find_modulus();
    build_reduction_table();
  }

  int p() const { return p_; }
  int e() const { return e_; }
  i64 order() const { return order_; }
  // Monic modulus, length e+1, constant term first.
  const std::vector<int>& modulus() const { return modulus_; }

  elem zero() const { return 0; }
  elem one() const { return 1; }
  bool is_zero(elem a) const { return a == 0; }

  elem from_int(i64 n) const {
    i64 r = n % p_;
    if (r < 0) r += p_;
    return static_cast<elem>(r);
  }

  std::vector<int> coeffs(elem a) const {
    std::vector<int> c(e_);
    for (int i = 0; i < e_; ++i) { c[i] = a % p_; a /= p_; }
    return c;
  }
  elem from_coeffs(const std::vector<int>& c) const {
    if ((int)c.size() > e_)
      throw std::invalid_argument("coefficient vector longer than field degree");
    elem a = 0;
    for (int i = (int)c.size() - 1; i >= 0; --i) {
      int d = c[i] % p_;
      if (d < 0) d += p_;
      a = a * p_ + d;
    }
    return a;
  }

  elem add(elem a, elem b) const {
    if (e_ == 1) { int s = (int)a + (int)b; return s >= p_ ? s - p_ : s; }
    elem r = 0, pw = 1;
    for (int i = 0; i < e_; ++i) {
      int s = (int)(a % p_) + (int)(b % p_);
      if (s >= p_) s -= p_;
      r += pw * s;
      a /= p_; b /= p_; pw *= p_;
    }
    return r;
  }
  elem neg(elem a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    elem r = 0, pw = 1;
    for (int i = 0; i < e_; ++i) {
      int d = a % p_;
      r += pw * (d == 0 ? 0 : p_ - d);
      a /= p_; pw *= p_;
    }
    return r;
  }
  elem sub(elem a, elem b) const { return add(a, neg(b)); }

  elem mul(elem a, elem b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return (elem)(((i64)a * b) % p_);
    int da[12], db[12];
    unpack(a, da); unpack(b, db);
    int prod[24] = {0};
    for (int i = 0; i < e_; ++i) {
      if (!da[i]) continue;
      for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // Reduce degrees e..2e-2 via precomputed x^{e+k} mod modulus.
    int out[12];
    for (int i = 0; i < e_; ++i) out[i] = prod[i];
    for (int k = 0; k <= e_ - 2; ++k) {
      int c = prod[e_ + k];
      if (!c) continue;
      const int* red = &xpow_[k * e_];
      for (int i = 0; i < e_; ++i) out[i] = (out[i] + c * red[i]) % p_;
    }
    elem r = 0;
    for (int i = e_ - 1; i >= 0; --i) r = r * p_ + out[i];
    return r;
  }

  elem pow(elem a, i64 k) const {
    if (k < 0) return pow(inv(a), -k);
    elem r = 1, base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  elem inv(elem a) const {
    if (a == 0) throw std::domain_error("field inverse of zero");
    return pow(a, order_ - 2);
  }

  // Frobenius x -> x^p iterated k times.
  elem frob(elem a, int k = 1) const {
    elem r = a;
    for (int i = 0; i < k; ++i) r = pow(r, p_);
    return r;
  }

  // A multiplicative generator (smallest in packed order).
  elem generator() const {
    for (elem g = 2; g < (elem)order_; ++g) {
      bool ok = true;
      for (i64 d = 2; d * d <= order_ - 1; ++d) {
        if ((order_ - 1) % d) continue;
        if (pow(g, d) == 1 || pow(g, (order_ - 1) / d) == 1) { ok = false; break; }
      }
      if (ok && pow(g, order_ - 1) == 1) return g;
    }
    return 1;  // F_2
  }

  // Root of a monic polynomial over F_p (coeffs constant-first) in this field,
  // smallest in packed order; used to embed F_{p^k} into F_{p^e} for k | e.
  elem find_root(const std::vector<int>& poly) const {
    for (elem a = 0; a < (elem)order_; ++a) {
      elem v = 0, pw = 1;
      for (size_t i = 0; i < poly.size(); ++i) {
        v = add(v, mul(from_int(poly[i]), pw));
        pw = mul(pw, a);
      }
      if (v == 0) return a;
    }
    throw std::domain_error("polynomial has no root in field");
  }

  // Image of a in the bigger field big, via the smallest root of this field's
  // modulus; requires e() | big.e() and equal characteristic.
  elem embed_into(const Fq& big, elem a) const {
    if (big.p() != p_ || big.e() % e_ != 0)
      throw std::invalid_argument("no embedding between these fields");
    elem root = big.find_root(modulus_);
    elem r = 0, pw = big.one();
    auto c = coeffs(a);
    for (int i = 0; i < e_; ++i) {
      r = big.add(r, big.mul(big.from_int(c[i]), pw));
      pw = big.mul(pw, root);
    }
    return r;
  }

  std::string str(elem a) const {
    if (e_ == 1) return std::to_string(a);
    auto c = coeffs(a);
    std::string s = "[";
    for (int i = 0; i < e_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
  }

 private:
  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
  void unpack(elem a, int* d) const {
    for (int i = 0; i < e_; ++i) { d[i] = a % p_; a /= p_; }
  }

  // Polynomial arithmetic over F_p on int vectors (constant term first).
  std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m) const {
    int dm = (int)m.size() - 1;
    while ((int)a.size() > dm) {
      int da = (int)a.size() - 1;
      int c = a.back();
      if (c) {
        for (int i = 0; i <= dm; ++i) {
          int& t = a[da - dm + i];
          t = ((t - c * m[i]) % p_ + p_) % p_;
        }
      }
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    return a;
  }

  bool divides(const std::vector<int>& d, const std::vector<int>& f) const {
    return poly_mod(f, d).empty();
  }

  bool is_irreducible(const std::vector<int>& f) const {
    int deg = (int)f.size() - 1;
    if (f[0] == 0) return deg == 1;  // divisible by x
    // Trial division by all monic polynomials of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
      i64 count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (i64 idx = 0; idx < count; ++idx) {
        std::vector<int> g(d + 1);
        i64 t = idx;
        for (int i = 0; i < d; ++i) { g[i] = t % p_; t /= p_; }
        g[d] = 1;
        if (divides(g, f)) return false;
      }
    }
    return true;
  }

  void find_modulus() {
    if (e_ == 1) { modulus_ = {0, 1}; return; }  // unused placeholder x
    i64 count = 1;
    for (int i = 0; i < e_; ++i) count *= p_;
    for (i64 idx = 0; idx < count; ++idx) {
      std::vector<int> f(e_ + 1);
      i64 t = idx;
      for (int i = 0; i < e_; ++i) { f[i] = t % p_; t /= p_; }
      f[e_] = 1;
      if (is_irreducible(f)) { modulus_ = f; return; }
    }
    throw std::logic_error("no irreducible modulus found");
  }

  void build_reduction_table() {
    if (e_ == 1) return;
    // x^e = -sum m_i x^i; extend to x^{e+k} for k <= e-2.
    xpow_.assign((e_ - 1) * e_, 0);
    std::vector<int> cur(e_);
    for (int i = 0; i < e_; ++i) cur[i] = ((-modulus_[i]) % p_ + p_) % p_;
    for (int k = 0; k <= e_ - 2; ++k) {
      for (int i = 0; i < e_; ++i) xpow_[k * e_ + i] = cur[i];
      if (k == e_ - 2) break;
      // Multiply cur by x and reduce.
      std::vector<int> nxt(e_);
      int top = cur[e_ - 1];
      for (int i = e_ - 1; i > 0; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      if (top) {
        for (int i = 0; i < e_; ++i)
          nxt[i] = (nxt[i] + top * ((((-modulus_[i]) % p_) + p_) % p_)) % p_;
      }
      cur = nxt;
    }
  }

  int p_, e_;
  i64 order_;
  std::vector<int> modulus_;
  std::vector<int> xpow_;
};

// C(n, k) mod p by Lucas' theorem; the divided-power law needs binomials
// only through their image in F_p.
inline int binom_mod_p(i64 n, i64 k, int p) {
  if (k < 0 || n < 0 || k > n) return 0;
  i64 r = 1;
  while (n > 0 || k > 0) {
    i64 nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // C(nd, kd) with nd, kd < p <= 5: tiny direct product.
    i64 c = 1;
    for (i64 i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
    r = (r * (c % p)) % p;
    n /= p; k /= p;
  }
  return (int)(r % p);
}

}  // namespace zipsections
