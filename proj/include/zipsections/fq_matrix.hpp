#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "finite_field.hpp"

namespace zipsections {

// Dense matrix over Fq; row-major, acts on column vectors (column = input
// coordinate, row = output coordinate).
struct FqMatrix {
  int rows = 0, cols = 0;
  std::vector<Fq::elem> a;

  FqMatrix() = default;
  FqMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

  Fq::elem& at(int r, int c) { return a[(size_t)r * cols + c]; }
  Fq::elem at(int r, int c) const { return a[(size_t)r * cols + c]; }

  static FqMatrix identity(int n) {
    FqMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool is_zero() const {
    for (auto v : a)
      if (v) return false;
    return true;
  }
  bool operator==(const FqMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline FqMatrix mat_add(const Fq& F, const FqMatrix& x, const FqMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix add: shape mismatch");
  FqMatrix r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}

inline FqMatrix mat_scale(const Fq& F, Fq::elem c, const FqMatrix& x) {
  FqMatrix r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = F.mul(c, x.a[i]);
  return r;
}

inline FqMatrix mat_mul(const Fq& F, const FqMatrix& x, const FqMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix mul: shape mismatch");
  FqMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Fq::elem v = x.at(i, k);
      if (!v) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j)) r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
    }
  return r;
}

inline FqMatrix mat_transpose(const FqMatrix& x) {
  FqMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

inline FqMatrix mat_kron(const Fq& F, const FqMatrix& x, const FqMatrix& y) {
  FqMatrix r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      Fq::elem v = x.at(i, j);
      if (!v) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          if (y.at(k, l))
            r.at(i * y.rows + k, j * y.cols + l) = F.mul(v, y.at(k, l));
    }
  return r;
}

inline std::vector<Fq::elem> mat_apply(const Fq& F, const FqMatrix& m,
                                       const std::vector<Fq::elem>& v) {
  if ((int)v.size() != m.cols) throw std::invalid_argument("apply: size mismatch");
  std::vector<Fq::elem> r(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) && v[j]) r[i] = F.add(r[i], F.mul(m.at(i, j), v[j]));
  return r;
}

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref(const Fq& F, FqMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    Fq::elem iv = F.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(iv, m.at(r, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      Fq::elem f = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize((size_t)r * m.cols);
  return pivots;
}

inline int mat_rank(const Fq& F, FqMatrix m) { return (int)rref(F, m).size(); }

inline FqMatrix mat_inverse(const Fq& F, const FqMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("matrix inverse: not square");
  int n = m.rows;
  FqMatrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = F.one();
  }
  std::vector<int> pivots = rref(F, aug);
  if ((int)pivots.size() != n || pivots.back() != n - 1)
    throw std::domain_error("matrix inverse: singular matrix");
  FqMatrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

// Nullspace basis of m (as rows), echelonized: standard free-variable basis.
inline FqMatrix mat_kernel(const Fq& F, FqMatrix m) {
  int n = m.cols;
  std::vector<int> pivots = rref(F, m);
  std::vector<char> is_pivot(n, 0);
  for (int c : pivots) is_pivot[c] = 1;
  FqMatrix ker(n - (int)pivots.size(), n);
  int row = 0;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    ker.at(row, c) = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      ker.at(row, pivots[pr]) = F.neg(m.at((int)pr, c));
    ++row;
  }
  rref(F, ker);
  return ker;
}

// Subspace of F^n, basis rows held in reduced row echelon form, so equal
// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Fq& F, FqMatrix basis_rows) : ambient_(basis_rows.cols) {
    rref(F, basis_rows);
    basis_ = std::move(basis_rows);
  }
  static Subspace full(const Fq& F, int n) { return Subspace(F, FqMatrix::identity(n)); }
  static Subspace zero(const Fq&, int n) {
    Subspace s;
    s.ambient_ = n;
    s.basis_ = FqMatrix(0, n);
    return s;
  }
  // Solution space of m v = 0.
  static Subspace kernel_of(const Fq& F, const FqMatrix& m) {
    Subspace s;
    s.ambient_ = m.cols;
    s.basis_ = mat_kernel(F, m);
    return s;
  }

  int dim() const { return basis_.rows; }
  int ambient() const { return ambient_; }
  const FqMatrix& basis() const { return basis_; }

  bool contains(const Fq& F, const std::vector<Fq::elem>& v) const {
    std::vector<Fq::elem> w = v;
    reduce(F, w);
    for (auto x : w)
      if (x) return false;
    return true;
  }
  bool contains(const Fq& F, const Subspace& other) const {
    for (int i = 0; i < other.basis_.rows; ++i) {
      std::vector<Fq::elem> v(ambient_);
      for (int j = 0; j < ambient_; ++j) v[j] = other.basis_.at(i, j);
      if (!contains(F, v)) return false;
    }
    return true;
  }
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  Subspace intersect(const Fq& F, const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw std::invalid_argument("intersect: ambient mismatch");
    // Zassenhaus: rows [A|A] and [B|0]; echelon; rows with zero left half
    // carry the intersection in the right half.
    int n = ambient_;
    FqMatrix z(basis_.rows + other.basis_.rows, 2 * n);
    for (int i = 0; i < basis_.rows; ++i)
      for (int j = 0; j < n; ++j) {
        z.at(i, j) = basis_.at(i, j);
        z.at(i, n + j) = basis_.at(i, j);
      }
    for (int i = 0; i < other.basis_.rows; ++i)
      for (int j = 0; j < n; ++j) z.at(basis_.rows + i, j) = other.basis_.at(i, j);
    rref(F, z);
    FqMatrix out(0, n);
    for (int i = 0; i < z.rows; ++i) {
      bool left_zero = true;
      for (int j = 0; j < n && left_zero; ++j)
        if (z.at(i, j)) left_zero = false;
      if (!left_zero) continue;
      FqMatrix row(1, n);
      for (int j = 0; j < n; ++j) row.at(0, j) = z.at(i, n + j);
      out.a.insert(out.a.end(), row.a.begin(), row.a.end());
      out.rows++;
    }
    return Subspace(F, out);
  }

  Subspace sum(const Fq& F, const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw std::invalid_argument("sum: ambient mismatch");
    FqMatrix s(basis_.rows + other.basis_.rows, ambient_);
    std::copy(basis_.a.begin(), basis_.a.end(), s.a.begin());
    std::copy(other.basis_.a.begin(), other.basis_.a.end(),
              s.a.begin() + basis_.a.size());
    return Subspace(F, s);
  }

 private:
  void reduce(const Fq& F, std::vector<Fq::elem>& v) const {
    for (int i = 0; i < basis_.rows; ++i) {
      int lead = -1;
      for (int j = 0; j < ambient_; ++j)
        if (basis_.at(i, j)) { lead = j; break; }
      if (lead < 0 || !v[lead]) continue;
      Fq::elem f = v[lead];  // pivot is 1 in RREF
      for (int j = 0; j < ambient_; ++j)
        v[j] = F.sub(v[j], F.mul(f, basis_.at(i, j)));
    }
  }

  int ambient_ = 0;
  FqMatrix basis_;
};

}  // namespace zipsections
