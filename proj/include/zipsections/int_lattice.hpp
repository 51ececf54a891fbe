#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace zipsections {

using IVec = std::vector<i64>;
using IMat = std::vector<IVec>;  // rows

inline IVec ivec_add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_i64(i128(a[i]) + b[i]);
  return r;
}
inline IVec ivec_sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_i64(i128(a[i]) - b[i]);
  return r;
}
inline IVec ivec_scale(i64 c, const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_i64(i128(c) * a[i]);
  return r;
}
inline i64 ivec_dot(const IVec& a, const IVec& b) {
  i128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += i128(a[i]) * b[i];
  return checked_i64(s);
}
inline bool ivec_is_zero(const IVec& a) {
  for (i64 v : a)
    if (v) return false;
  return true;
}
inline IVec ivec_neg(const IVec& a) { return ivec_scale(-1, a); }

// Apply integer matrix (rows) to a column vector: (M v)_i = <row_i, v>.
inline IVec imat_apply(const IMat& m, const IVec& v) {
  IVec r(m.size());
  for (size_t i = 0; i < m.size(); ++i) r[i] = ivec_dot(m[i], v);
  return r;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat r(n, IVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      if (a[i][j])
        for (size_t l = 0; l < m; ++l)
          r[i][l] = checked_i64(i128(r[i][l]) + i128(a[i][j]) * b[j][l]);
  return r;
}

inline IMat imat_transpose(const IMat& m) {
  if (m.empty()) return {};
  IMat r(m[0].size(), IVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

inline IMat imat_identity(size_t n) {
  IMat r(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// Row-style Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot), zero rows dropped. Canonical per lattice.
inline IMat hnf_rows(IMat m) {
  if (m.empty()) return m;
  size_t ncols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < m.size(); ++col) {
    // Euclidean elimination below position (row, col).
    while (true) {
      size_t best = row;
      bool any = false;
      for (size_t i = row; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        if (!any || std::abs(m[i][col]) < std::abs(m[best][col]) || m[best][col] == 0) {
          best = i;
          any = true;
        }
      }
      if (!any) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (size_t i = row + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        i64 qout = m[i][col] / m[row][col];
        m[i] = ivec_sub(m[i], ivec_scale(qout, m[row]));
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0) m[row] = ivec_neg(m[row]);
    // Reduce entries above the pivot into [0, pivot).
    for (size_t i = 0; i < row; ++i) {
      i64 p = m[row][col];
      i64 qout = m[i][col] / p;
      if (m[i][col] % p < 0) qout -= 1;
      if (qout) m[i] = ivec_sub(m[i], ivec_scale(qout, m[row]));
    }
    ++row;
  }
  m.resize(row);
  return m;
}

// Integer kernel of M (rows x cols): basis of {x : M x = 0}, via row HNF of
// [M^T | I]; rows whose M^T-part vanished carry kernel vectors in the I-part.
inline IMat integer_kernel(const IMat& m) {
  IMat mt = imat_transpose(m);
  size_t n = mt.size();          // = cols of m
  size_t k = mt.empty() ? 0 : mt[0].size();
  IMat aug(n, IVec(k + n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = mt[i][j];
    aug[i][k + i] = 1;
  }
  aug = hnf_rows(aug);
  IMat ker;
  for (const auto& r : aug) {
    bool left_zero = true;
    for (size_t j = 0; j < k && left_zero; ++j)
      if (r[j]) left_zero = false;
    if (!left_zero) continue;
    ker.emplace_back(r.begin() + k, r.end());
  }
  return hnf_rows(ker);
}

// Full-rank-or-less integer lattice in Z^n, basis rows in canonical HNF.
class IntLattice {
 public:
  IntLattice() = default;
  IntLattice(int ambient, IMat generators) : ambient_(ambient) {
    for (const auto& g : generators)
      if ((int)g.size() != ambient)
        throw std::invalid_argument("lattice generator of wrong length");
    basis_ = hnf_rows(std::move(generators));
  }
  static IntLattice zero(int ambient) { return IntLattice(ambient, {}); }

  int ambient() const { return ambient_; }
  int rank() const { return (int)basis_.size(); }
  const IMat& basis() const { return basis_; }

  // Canonical coset representative: reduce v by HNF rows at their pivots.
  IVec coset_key(IVec v) const {
    for (const auto& row : basis_) {
      size_t lead = 0;
      while (lead < row.size() && row[lead] == 0) ++lead;
      if (lead == row.size()) continue;
      i64 p = row[lead];
      i64 qout = v[lead] / p;
      if (v[lead] % p < 0) qout -= 1;
      if (qout) v = ivec_sub(v, ivec_scale(qout, row));
    }
    return v;
  }

  bool contains(const IVec& v) const { return ivec_is_zero(coset_key(v)); }

  bool operator==(const IntLattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  int ambient_ = 0;
  IMat basis_;
};

// ---- Rational linear algebra (small dense systems) ----

using QMat = std::vector<QVec>;

inline QMat qmat_from_int(const IMat& m) {
  QMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (i64 v : m[i]) r[i].push_back(Rational(v));
  return r;
}

// Solve M x = b exactly; M square nonsingular.
inline QVec qmat_solve(QMat m, QVec b) {
  size_t n = m.size();
  if (n == 0) return {};
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && m[sel][col].is_zero()) ++sel;
    if (sel == n) throw std::domain_error("singular rational system");
    std::swap(m[col], m[sel]);
    std::swap(b[col], b[sel]);
    Rational piv = m[col][col];
    for (size_t j = col; j < n; ++j) m[col][j] = m[col][j] / piv;
    b[col] = b[col] / piv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      Rational f = m[i][col];
      for (size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
      b[i] = b[i] - f * b[col];
    }
  }
  return b;
}

inline QMat qmat_inverse(const QMat& m) {
  size_t n = m.size();
  QMat inv(n, QVec(n));
  for (size_t c = 0; c < n; ++c) {
    QVec e(n);
    e[c] = Rational(1);
    QVec x = qmat_solve(m, e);
    for (size_t r = 0; r < n; ++r) inv[r][c] = x[r];
  }
  return inv;
}

// Exact integer matrix inverse; throws if the inverse is not integral.
inline IMat imat_inverse(const IMat& m) {
  QMat qinv = qmat_inverse(qmat_from_int(m));
  IMat r(qinv.size(), IVec(qinv.size()));
  for (size_t i = 0; i < qinv.size(); ++i)
    for (size_t j = 0; j < qinv.size(); ++j) {
      if (!qinv[i][j].is_integer())
        throw std::domain_error("matrix inverse is not integral");
      r[i][j] = qinv[i][j].num();
    }
  return r;
}

inline QVec qvec_from_int(const IVec& v) {
  QVec r;
  for (i64 x : v) r.push_back(Rational(x));
  return r;
}

inline Rational qdot_iv(const IVec& a, const QVec& b) {
  Rational s;
  for (size_t i = 0; i < a.size(); ++i) s = s + Rational(a[i]) * b[i];
  return s;
}

}  // namespace zipsections
