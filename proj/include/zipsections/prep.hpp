#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fq_matrix.hpp"
#include "int_lattice.hpp"
#include "zip_datum.hpp"

namespace zipsections {

// Algebraic representation of P presented by exact data: a weight for every
// basis vector and divided-power operator matrices E^{(j)}_beta for finitely
// many roots beta. A root absent from `ops`, or a level absent for a stored
// root, means the zero operator; level 0 is always the identity.
struct PRep {
  std::shared_ptr<const Fq> F;
  int rank = 0;
  std::vector<IVec> weights;
  std::map<IVec, std::map<int, FqMatrix>> ops;

  int dim() const { return (int)weights.size(); }

  bool has_op(const IVec& root, int level) const {
    if (level == 0) return true;
    auto it = ops.find(root);
    if (it == ops.end()) return false;
    return it->second.count(level) > 0;
  }

  FqMatrix op(const IVec& root, int level) const {
    if (level == 0) return FqMatrix::identity(dim());
    auto it = ops.find(root);
    if (it != ops.end()) {
      auto jt = it->second.find(level);
      if (jt != it->second.end()) return jt->second;
    }
    return FqMatrix(dim(), dim());
  }

  int max_level(const IVec& root) const {
    auto it = ops.find(root);
    if (it == ops.end() || it->second.empty()) return 0;
    return it->second.rbegin()->first;
  }

  std::vector<IVec> support() const {
    std::vector<IVec> s;
    for (const auto& [root, levels] : ops)
      if (!levels.empty()) s.push_back(root);
    return s;
  }

  // Basis indices grouped by weight, in first-occurrence order.
  std::map<IVec, std::vector<int>> weight_blocks() const {
    std::map<IVec, std::vector<int>> b;
    for (int i = 0; i < dim(); ++i) b[weights[i]].push_back(i);
    return b;
  }

  // Submatrix of E^{(level)}_root with columns in_idx and rows out_idx.
  FqMatrix block(const IVec& root, int level, const std::vector<int>& in_idx,
                 const std::vector<int>& out_idx) const {
    FqMatrix b((int)out_idx.size(), (int)in_idx.size());
    if (level == 0) {
      for (size_t r = 0; r < out_idx.size(); ++r)
        for (size_t c = 0; c < in_idx.size(); ++c)
          if (out_idx[r] == in_idx[c]) b.at((int)r, (int)c) = F->one();
      return b;
    }
    auto it = ops.find(root);
    if (it == ops.end()) return b;
    auto jt = it->second.find(level);
    if (jt == it->second.end()) return b;
    for (size_t r = 0; r < out_idx.size(); ++r)
      for (size_t c = 0; c < in_idx.size(); ++c)
        b.at((int)r, (int)c) = jt->second.at(out_idx[r], in_idx[c]);
    return b;
  }

  // Structural checks: operator blocks shift weights by level*root, levels are
  // positive, sizes match, and the divided-power composition law
  // E^{(i)} E^{(j)} = C(i+j, i) E^{(i+j)} holds for every stored root.
  void validate() const {
    if (!F) throw std::invalid_argument("rep has no field");
    for (const auto& w : weights)
      if ((int)w.size() != rank) throw std::invalid_argument("weight has wrong length");
    int d = dim();
    for (const auto& [root, levels] : ops) {
      if ((int)root.size() != rank) throw std::invalid_argument("operator root has wrong length");
      if (ivec_is_zero(root)) throw std::invalid_argument("operator root is zero");
      for (const auto& [lev, mat] : levels) {
        if (lev <= 0) throw std::invalid_argument("operator level must be >= 1");
        if (mat.rows != d || mat.cols != d) throw std::invalid_argument("operator has wrong shape");
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) {
            if (mat.at(r, c) == 0) continue;
            IVec expect = ivec_add(weights[c], ivec_scale(lev, root));
            if (weights[r] != expect)
              throw std::invalid_argument("operator entry violates weight grading");
          }
      }
      int top = levels.empty() ? 0 : levels.rbegin()->first;
      for (int i = 1; i <= top; ++i)
        for (int j = 1; i + j <= top; ++j) {
          FqMatrix lhs = mat_mul(*F, op(root, i), op(root, j));
          FqMatrix rhs = mat_scale(*F, F->from_int(binom_mod_p(i + j, i, F->p())),
                                   op(root, i + j));
          if (!(lhs == rhs))
            throw std::invalid_argument("divided-power law fails for a stored operator");
        }
    }
  }
};

inline void require_same_context(const PRep& a, const PRep& b) {
  if (a.F.get() != b.F.get()) throw std::invalid_argument("reps live over different fields");
  if (a.rank != b.rank) throw std::invalid_argument("reps have different character lattice ranks");
}

// One-dimensional representation of weight chi (trivial operator action).
inline PRep char_rep(std::shared_ptr<const Fq> F, const IVec& chi) {
  PRep v;
  v.F = std::move(F);
  v.rank = (int)chi.size();
  v.weights = {chi};
  return v;
}

// Symmetric power Sym^n of a two-dimensional representation with basis
// weights wx, wy: basis v_i = x^{n-i} y^i, i = 0..n, so
// weight(v_i) = (n-i) wx + i wy, and for a = wx - wy:
//   E^{(s)}_a v_i = C(i,s) v_{i-s},  E^{(s)}_{-a} v_i = C(n-i,s) v_{i+s}.
inline PRep sym_pair(std::shared_ptr<const Fq> F, const IVec& wx, const IVec& wy, int n) {
  if (n < 0) throw std::invalid_argument("negative symmetric power");
  if (wx.size() != wy.size()) throw std::invalid_argument("weight length mismatch");
  IVec a = ivec_sub(wx, wy);
  if (ivec_is_zero(a)) throw std::invalid_argument("sym_pair weights must differ");
  PRep v;
  v.F = std::move(F);
  v.rank = (int)wx.size();
  for (int i = 0; i <= n; ++i)
    v.weights.push_back(ivec_add(ivec_scale(n - i, wx), ivec_scale(i, wy)));
  i64 p = v.F->p();
  for (int s = 1; s <= n; ++s) {
    FqMatrix up(n + 1, n + 1), dn(n + 1, n + 1);
    bool up_nz = false, dn_nz = false;
    for (int i = 0; i <= n; ++i) {
      if (i - s >= 0) {
        i64 c = binom_mod_p(i, s, p);
        if (c) { up.at(i - s, i) = v.F->from_int(c); up_nz = true; }
      }
      if (i + s <= n) {
        i64 c = binom_mod_p(n - i, s, p);
        if (c) { dn.at(i + s, i) = v.F->from_int(c); dn_nz = true; }
      }
    }
    if (up_nz) v.ops[a][s] = up;
    if (dn_nz) v.ops[ivec_neg(a)][s] = dn;
  }
  return v;
}

// Tensor product over the same field and lattice; basis (i,j) at index i*dim(b)+j.
// Divided powers follow the coproduct E^{(s)} = sum_{u+v=s} E^{(u)} (x) E^{(v)}.
inline PRep tensor(const PRep& a, const PRep& b) {
  require_same_context(a, b);
  PRep v;
  v.F = a.F;
  v.rank = a.rank;
  int da = a.dim(), db = b.dim();
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      v.weights.push_back(ivec_add(a.weights[i], b.weights[j]));
  std::set<IVec> roots;
  for (const auto& r : a.support()) roots.insert(r);
  for (const auto& r : b.support()) roots.insert(r);
  for (const auto& root : roots) {
    int top = a.max_level(root) + b.max_level(root);
    for (int s = 1; s <= top; ++s) {
      FqMatrix m(da * db, da * db);
      bool nz = false;
      for (int u = 0; u <= s; ++u) {
        int w = s - u;
        if (u > a.max_level(root) || w > b.max_level(root)) continue;
        if (!a.has_op(root, u) || !b.has_op(root, w)) continue;
        FqMatrix term = mat_kron(*v.F, a.op(root, u), b.op(root, w));
        m = mat_add(*v.F, m, term);
        if (!term.is_zero()) nz = true;
      }
      if (nz && !m.is_zero()) v.ops[root][s] = m;
    }
  }
  return v;
}

// Dual representation on the dual basis: weights negate and
// E^{(j)}_beta acts by (-1)^j (E^{(j)}_beta)^T.
inline PRep dual(const PRep& a) {
  PRep v;
  v.F = a.F;
  v.rank = a.rank;
  for (const auto& w : a.weights) v.weights.push_back(ivec_neg(w));
  for (const auto& [root, levels] : a.ops)
    for (const auto& [lev, mat] : levels) {
      FqMatrix t = mat_transpose(mat);
      if (lev % 2 == 1) t = mat_scale(*a.F, a.F->neg(a.F->one()), t);
      if (!t.is_zero()) v.ops[root][lev] = t;
    }
  return v;
}

// External product for a product group: character lattices concatenate,
// each factor acts through its own block of coordinates.
inline PRep boxtimes(const PRep& a, const PRep& b) {
  if (a.F.get() != b.F.get()) throw std::invalid_argument("reps live over different fields");
  PRep v;
  v.F = a.F;
  v.rank = a.rank + b.rank;
  int da = a.dim(), db = b.dim();
  auto embed_a = [&](const IVec& x) {
    IVec e(v.rank, 0);
    for (int i = 0; i < a.rank; ++i) e[i] = x[i];
    return e;
  };
  auto embed_b = [&](const IVec& x) {
    IVec e(v.rank, 0);
    for (int i = 0; i < b.rank; ++i) e[a.rank + i] = x[i];
    return e;
  };
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      v.weights.push_back(ivec_add(embed_a(a.weights[i]), embed_b(b.weights[j])));
  FqMatrix ida = FqMatrix::identity(da), idb = FqMatrix::identity(db);
  for (const auto& [root, levels] : a.ops)
    for (const auto& [lev, mat] : levels)
      v.ops[embed_a(root)][lev] = mat_kron(*v.F, mat, idb);
  for (const auto& [root, levels] : b.ops)
    for (const auto& [lev, mat] : levels)
      v.ops[embed_b(root)][lev] = mat_kron(*v.F, ida, mat);
  return v;
}

// Frobenius twist: weights scale by q and only levels divisible by q survive,
// with E^{(q j)} on the twist given by E^{(j)} on the original.
inline PRep frobenius_twist(const PRep& a, i64 q) {
  if (q <= 1) throw std::invalid_argument("twist requires q > 1");
  PRep v;
  v.F = a.F;
  v.rank = a.rank;
  for (const auto& w : a.weights) v.weights.push_back(ivec_scale(q, w));
  for (const auto& [root, levels] : a.ops)
    for (const auto& [lev, mat] : levels) {
      i128 nl = i128(lev) * q;
      if (nl > (i128)1 << 30) throw std::overflow_error("twisted level too large");
      v.ops[root][(int)nl] = mat;
    }
  return v;
}

// Direct sum: weights concatenate, operators act blockwise.
inline PRep direct_sum(const PRep& a, const PRep& b) {
  require_same_context(a, b);
  PRep v;
  v.F = a.F;
  v.rank = a.rank;
  int da = a.dim(), db = b.dim();
  v.weights = a.weights;
  for (const auto& w : b.weights) v.weights.push_back(w);
  std::set<IVec> roots;
  for (const auto& r : a.support()) roots.insert(r);
  for (const auto& r : b.support()) roots.insert(r);
  for (const auto& root : roots) {
    int top = std::max(a.max_level(root), b.max_level(root));
    for (int s = 1; s <= top; ++s) {
      bool ha = a.has_op(root, s), hb = b.has_op(root, s);
      if (!ha && !hb) continue;
      FqMatrix m(da + db, da + db);
      if (ha) {
        const FqMatrix& ma = a.op(root, s);
        for (int r = 0; r < da; ++r)
          for (int c = 0; c < da; ++c) m.at(r, c) = ma.at(r, c);
      }
      if (hb) {
        const FqMatrix& mb = b.op(root, s);
        for (int r = 0; r < db; ++r)
          for (int c = 0; c < db; ++c) m.at(da + r, da + c) = mb.at(r, c);
      }
      if (!m.is_zero()) v.ops[root][s] = m;
    }
  }
  return v;
}

// Restriction to L followed by semisimplification for the R_u(P)-action:
// operators at roots in the unipotent radical of P are discarded.
inline PRep l_semisimplify(const PRep& a, const ZipDatum& zd) {
  if (a.rank != zd.rd().rank()) throw std::invalid_argument("rep/datum rank mismatch");
  PRep v;
  v.F = a.F;
  v.rank = a.rank;
  v.weights = a.weights;
  for (const auto& [root, levels] : a.ops) {
    if (zd.in_ru_p(root)) continue;
    v.ops[root] = levels;
  }
  return v;
}

// True iff no stored operator lives at a root of R_u(P); such representations
// factor through the Levi quotient.
inline bool trivial_on_ru_p(const PRep& a, const ZipDatum& zd) {
  for (const auto& root : a.support())
    if (zd.in_ru_p(root)) return false;
  return true;
}

}  // namespace zipsections
