#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "lphi.hpp"
#include "prep.hpp"
#include "zip_datum.hpp"

namespace zipsections {

// Subspace spanned by rows of `local` placed at ambient coordinates idx.
inline Subspace embed_local(const Fq& F, const Subspace& local,
                            const std::vector<int>& idx, int ambient) {
  FqMatrix rows(local.dim(), ambient);
  for (int r = 0; r < local.dim(); ++r)
    for (int c = 0; c < (int)idx.size(); ++c)
      rows.at(r, idx[c]) = local.basis().at(r, c);
  return Subspace(F, rows);
}

inline Subspace block_span(const Fq& F, const std::vector<int>& idx, int ambient) {
  FqMatrix rows((int)idx.size(), ambient);
  for (int r = 0; r < (int)idx.size(); ++r) rows.at(r, idx[r]) = F.one();
  return Subspace(F, rows);
}

// Classical kernel filtration Fil_c^{beta} V_nu = cap_{j > c} Ker E^{(j)}_beta,
// returned inside the ambient space. The j = 0 term is the identity, so the
// space is zero whenever c < 0.
inline Subspace fil_bk(const PRep& v, const IVec& nu, const IVec& beta, const Rational& c) {
  const Fq& F = *v.F;
  auto blocks = v.weight_blocks();
  auto it = blocks.find(nu);
  if (it == blocks.end()) return Subspace::zero(F, v.dim());
  const std::vector<int>& idx = it->second;
  if (c < Rational(0)) return Subspace::zero(F, v.dim());
  FqMatrix rows(0, (int)idx.size());
  for (int j = 1; j <= v.max_level(beta); ++j) {
    if (!(Rational(j) > c) || !v.has_op(beta, j)) continue;
    IVec target = ivec_add(nu, ivec_scale(j, beta));
    auto jt = blocks.find(target);
    if (jt == blocks.end()) continue;
    FqMatrix b = v.block(beta, j, idx, jt->second);
    if (b.is_zero()) continue;
    FqMatrix nr(rows.rows + b.rows, rows.cols);
    nr.a = rows.a;
    nr.a.insert(nr.a.end(), b.a.begin(), b.a.end());
    rows = std::move(nr);
  }
  Subspace local = rows.rows == 0 ? Subspace::full(F, (int)idx.size())
                                  : Subspace::kernel_of(F, rows);
  return embed_local(F, local, idx, v.dim());
}

// One weight class [nu] mod Lambda with its generalized filtration space.
struct FilClass {
  IVec key;                  // canonical coset representative mod Lambda
  std::vector<int> members;  // basis indices of V_{[nu]}
  Subspace space;            // subspace of the ambient space supported on members
};

// Generalized kernel filtration entering the section space, for one alpha in Delta^P:
// for each class [nu] mod Lambda_{Xi,r}, intersect over all constraint groups
// (chi, [j]) with [j].r > <chi, delta_alpha> the kernels of
//   sum_{j in [j]} (-1)^{j_1+...+j_m} pr_chi E^{(j_1)}_{Xi_1} ... E^{(j_m)}_{Xi_m}
// with the rightmost factor applied first. Levels enumerate over the stored
// operator range; all other summands vanish by the weight-block invariant.
inline std::vector<FilClass> fil_general(const PRep& v, const ZipDatum& zd, int ai) {
  const Fq& F = *v.F;
  const PerAlpha& pa = zd.per_alpha(ai);
  const int m = pa.m;
  auto blocks = v.weight_blocks();

  std::map<IVec, std::vector<IVec>> classes;  // coset key -> weights
  for (const auto& [w, idx] : blocks) classes[pa.lambda.coset_key(w)].push_back(w);

  std::vector<FilClass> out;
  for (const auto& [key, ws] : classes) {
    FilClass fc;
    fc.key = key;
    for (const auto& w : ws)
      for (int i : blocks[w]) fc.members.push_back(i);
    std::sort(fc.members.begin(), fc.members.end());
    int cdim = (int)fc.members.size();
    std::map<int, int> col_of;
    for (int c = 0; c < cdim; ++c) col_of[fc.members[c]] = c;

    // (chi, value of j.r) -> accumulated constraint block |V_chi| x cdim.
    std::map<std::tuple<IVec, i64, i64>, FqMatrix> groups;

    for (const auto& w0 : ws) {
      const std::vector<int>& src = blocks[w0];
      // DFS over j_m, ..., j_1, composing incrementally (Xi_m applied first).
      std::function<void(int, const IVec&, const std::vector<int>&, const FqMatrix&,
                         Rational, int)>
          dfs = [&](int i, const IVec& w, const std::vector<int>& cur_idx,
                    const FqMatrix& mat, Rational jr, int parity) {
            if (i == 0) {
              if (!(jr > qdot_iv(w, pa.delta))) return;
              auto gkey = std::make_tuple(w, jr.num(), jr.den());
              auto git = groups.find(gkey);
              if (git == groups.end())
                git = groups.emplace(gkey, FqMatrix((int)cur_idx.size(), cdim)).first;
              Fq::elem sgn = (parity % 2 == 0) ? F.one() : F.neg(F.one());
              for (int r = 0; r < mat.rows; ++r)
                for (int c = 0; c < mat.cols; ++c)
                  git->second.at(r, col_of[src[c]]) = F.add(
                      git->second.at(r, col_of[src[c]]), F.mul(sgn, mat.at(r, c)));
              return;
            }
            const IVec& root = pa.xi[i - 1];
            dfs(i - 1, w, cur_idx, mat, jr, parity);  // level 0
            for (int j = 1; j <= v.max_level(root); ++j) {
              if (!v.has_op(root, j)) continue;
              IVec w2 = ivec_add(w, ivec_scale(j, root));
              auto bt = blocks.find(w2);
              if (bt == blocks.end()) continue;
              FqMatrix nm = mat_mul(F, v.block(root, j, cur_idx, bt->second), mat);
              if (nm.is_zero()) continue;
              dfs(i - 1, w2, bt->second, nm, jr + Rational(j) * pa.r[i - 1], parity + j);
            }
          };
      FqMatrix id = FqMatrix::identity((int)src.size());
      dfs(m, w0, src, id, Rational(0), 0);
    }

    FqMatrix rows(0, cdim);
    for (const auto& [gkey, gmat] : groups) {
      if (gmat.is_zero()) continue;
      FqMatrix nr(rows.rows + gmat.rows, cdim);
      nr.a = rows.a;
      nr.a.insert(nr.a.end(), gmat.a.begin(), gmat.a.end());
      rows = std::move(nr);
    }
    Subspace local = rows.rows == 0 ? Subspace::full(F, cdim)
                                    : Subspace::kernel_of(F, rows);
    fc.space = embed_local(F, local, fc.members, v.dim());
    out.push_back(std::move(fc));
  }
  return out;
}

// Direct sum over classes of the generalized filtration spaces.
inline Subspace fil_alpha_total(const PRep& v, const ZipDatum& zd, int ai) {
  const Fq& F = *v.F;
  auto classes = fil_general(v, zd, ai);
  int total = 0;
  for (const auto& fc : classes) total += fc.space.dim();
  FqMatrix rows(total, v.dim());
  int r = 0;
  for (const auto& fc : classes)
    for (int i = 0; i < fc.space.dim(); ++i, ++r)
      for (int c = 0; c < v.dim(); ++c) rows.at(r, c) = fc.space.basis().at(i, c);
  return Subspace(F, rows);
}

struct SectionSpace {
  Subspace space;
  std::map<IVec, int> weight_dims;
  int dim() const { return space.dim(); }
};

inline std::map<IVec, int> graded_dims(const PRep& v, const Subspace& s) {
  const Fq& F = *v.F;
  std::map<IVec, int> out;
  if (s.dim() == 0) return out;
  for (const auto& [w, idx] : v.weight_blocks()) {
    int d = s.intersect(F, block_span(F, idx, v.dim())).dim();
    if (d) out[w] = d;
  }
  return out;
}

// Section space: H^0 = V^{L_phi} intersected with the generalized filtration
// sum for every alpha in Delta^P.
inline SectionSpace h0(const PRep& v, const ZipDatum& zd, const LphiDescription& L) {
  if (v.rank != zd.rd().rank())
    throw std::invalid_argument("representation and datum have different lattice ranks");
  const Fq& F = *v.F;
  Subspace cur = invariants(v, L);
  for (int ai : zd.delta_p()) {
    if (cur.dim() == 0) break;
    cur = cur.intersect(F, fil_alpha_total(v, zd, ai));
  }
  return {cur, graded_dims(v, cur)};
}

// F_q-descent form: requires sigma(I) = I. Block nu survives through
// cap_alpha Fil^{-alpha}_{<chi,alpha^vee>} with chi the exact rational
// solution of wp*(chi) = nu.
inline SectionSpace h0_fq(const PRep& v, const ZipDatum& zd, const LphiDescription& L) {
  if (!zd.p_defined_over_fq())
    throw std::invalid_argument("h0_fq requires P defined over F_q (sigma(I) = I)");
  if (v.rank != zd.rd().rank())
    throw std::invalid_argument("representation and datum have different lattice ranks");
  const Fq& F = *v.F;
  QMat wp = qmat_from_int(zd.wp_star());
  FqMatrix rows(0, v.dim());
  auto append = [&](const Subspace& s) {
    if (s.dim() == 0) return;
    FqMatrix nr(rows.rows + s.dim(), v.dim());
    nr.a = rows.a;
    nr.a.insert(nr.a.end(), s.basis().a.begin(), s.basis().a.end());
    rows = std::move(nr);
  };
  for (const auto& [w, idx] : v.weight_blocks()) {
    QVec chi = qmat_solve(wp, qvec_from_int(w));
    Subspace cur = block_span(F, idx, v.dim());
    for (int ai : zd.delta_p()) {
      Rational c = dot(chi, qvec_from_int(zd.rd().simple_coroot(ai)));
      cur = cur.intersect(F, fil_bk(v, w, ivec_neg(zd.rd().simple_root(ai)), c));
      if (cur.dim() == 0) break;
    }
    append(cur);
  }
  Subspace total(F, rows);
  Subspace inv = invariants(v, L);
  Subspace res = inv.intersect(F, total);
  return {res, graded_dims(v, res)};
}

// Levi-weight criterion: L-representations of an F_q-defined P; block nu
// survives iff <nu, delta_alpha> >= 0 for every alpha in Delta^P.
inline SectionSpace h0_levi(const PRep& v, const ZipDatum& zd, const LphiDescription& L) {
  if (!zd.p_defined_over_fq())
    throw std::invalid_argument("h0_levi requires P defined over F_q (sigma(I) = I)");
  if (!trivial_on_ru_p(v, zd))
    throw std::invalid_argument("h0_levi requires a representation trivial on R_u(P)");
  const Fq& F = *v.F;
  FqMatrix rows(0, v.dim());
  for (const auto& [w, idx] : v.weight_blocks()) {
    bool keep = true;
    for (int ai : zd.delta_p())
      if (zd.pair_delta(w, ai) < Rational(0)) { keep = false; break; }
    if (!keep) continue;
    FqMatrix nr(rows.rows + (int)idx.size(), v.dim());
    nr.a = rows.a;
    for (size_t r = 0; r < idx.size(); ++r) {
      std::vector<Fq::elem> e(v.dim(), 0);
      e[idx[r]] = F.one();
      nr.a.insert(nr.a.end(), e.begin(), e.end());
    }
    rows = std::move(nr);
  }
  Subspace total(F, rows);
  Subspace inv = invariants(v, L);
  Subspace res = inv.intersect(F, total);
  return {res, graded_dims(v, res)};
}

// Sections over the perfection: only the reduced group L_0(F_q) constrains.
inline SectionSpace h0_perf(const PRep& v, const ZipDatum& zd, const LphiDescription& L0) {
  if (!L0.infinitesimal.empty())
    throw std::invalid_argument(
        "h0_perf takes the reduced description L_0(F_q): no infinitesimal part");
  return h0(v, zd, L0);
}

// --- Hom spaces -------------------------------------------------------------

// Hom(V, V') is computed as H^0 of dual(V) (x) V'. Basis index i*dim(V') + j
// of the hom representation corresponds to the matrix unit E_{j,i}: V -> V'.
inline PRep hom_rep(const PRep& a, const PRep& b) { return tensor(dual(a), b); }

inline FqMatrix hom_coords_to_matrix(const std::vector<Fq::elem>& x, int da, int db) {
  FqMatrix f(db, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) f.at(j, i) = x[(size_t)i * db + j];
  return f;
}

inline std::vector<Fq::elem> matrix_to_hom_coords(const FqMatrix& f) {
  std::vector<Fq::elem> x((size_t)f.rows * f.cols, 0);
  for (int i = 0; i < f.cols; ++i)
    for (int j = 0; j < f.rows; ++j) x[(size_t)i * f.rows + j] = f.at(j, i);
  return x;
}

inline SectionSpace hom_bundles(const PRep& a, const PRep& b, const ZipDatum& zd,
                                const LphiDescription& L) {
  require_same_context(a, b);
  return h0(hom_rep(a, b), zd, L);
}

// Morphism test, implemented directly from the module-with-monodromy
// definition rather than through hom_rep:
//  (1) L_phi-equivariance: rho'(g) f = f rho(g) for the symbolic generators,
//      graded components trivial on T(F_q), and E'^{(s)} f = f E^{(s)} for the
//      infinitesimal levels;
//  (2) for every alpha and every group (chi, [j]) with [j].r > <chi,delta>:
//      sum_{j in [j]} sum_{j' <= j} (-1)^{|j'|}
//        pr_chi( N'^{(j'_1)}_{Xi_1} ... N'^{(j'_m)}_{Xi_m} f
//                N^{(j_m - j'_m)}_{Xi_m} ... N^{(j_1 - j'_1)}_{Xi_1} ) = 0.
inline bool check_morphism(const FqMatrix& f, const PRep& a, const PRep& b,
                           const ZipDatum& zd, const LphiDescription& L) {
  require_same_context(a, b);
  if (!L.explicit_elements.empty())
    throw std::invalid_argument(
        "check_morphism needs symbolic generators; explicit matrices are tied to one basis");
  const Fq& F = *a.F;
  if (f.rows != b.dim() || f.cols != a.dim())
    throw std::invalid_argument("map has wrong shape");

  if (L.weight_congruence) {
    for (int r = 0; r < f.rows; ++r)
      for (int c = 0; c < f.cols; ++c) {
        if (F.is_zero(f.at(r, c))) continue;
        if (!L.weight_congruence->contains(ivec_sub(b.weights[r], a.weights[c])))
          return false;
      }
  }
  {
    auto ga = materialize_elements(a, L);
    auto gb = materialize_elements(b, L);
    for (size_t k = 0; k < ga.size(); ++k)
      if (!(mat_mul(F, gb[k], f) == mat_mul(F, f, ga[k]))) return false;
  }
  for (const auto& inf : L.infinitesimal)
    for (int s = 1; s < inf.bound; ++s)
      if (!(mat_mul(F, b.op(inf.root, s), f) == mat_mul(F, f, a.op(inf.root, s))))
        return false;

  for (int ai : zd.delta_p()) {
    const PerAlpha& pa = zd.per_alpha(ai);
    const int m = pa.m;
    std::vector<int> top(m);
    for (int i = 0; i < m; ++i) top[i] = a.max_level(pa.xi[i]) + b.max_level(pa.xi[i]);

    std::map<std::pair<i64, i64>, FqMatrix> acc;  // value of j.r -> summed matrix
    std::vector<int> j(m, 0);
    while (true) {
      Rational jr(0);
      for (int i = 0; i < m; ++i) jr = jr + Rational(j[i]) * pa.r[i];
      // Inner sum over j' <= j componentwise.
      std::vector<int> jp(m, 0);
      FqMatrix term_sum(b.dim(), a.dim());
      bool any = false;
      while (true) {
        bool possible = true;
        for (int i = 0; i < m; ++i) {
          if (jp[i] > 0 && !b.has_op(pa.xi[i], jp[i])) { possible = false; break; }
          if (j[i] - jp[i] > 0 && !a.has_op(pa.xi[i], j[i] - jp[i])) { possible = false; break; }
        }
        if (possible) {
          FqMatrix left = FqMatrix::identity(b.dim());
          for (int i = 0; i < m; ++i)
            if (jp[i] > 0) left = mat_mul(F, left, b.op(pa.xi[i], jp[i]));
          FqMatrix right = FqMatrix::identity(a.dim());
          for (int i = m - 1; i >= 0; --i)
            if (j[i] - jp[i] > 0) right = mat_mul(F, right, a.op(pa.xi[i], j[i] - jp[i]));
          FqMatrix term = mat_mul(F, mat_mul(F, left, f), right);
          int par = 0;
          for (int i = 0; i < m; ++i) par += jp[i];
          if (par % 2 == 1) term = mat_scale(F, F.neg(F.one()), term);
          term_sum = mat_add(F, term_sum, term);
          any = true;
        }
        int i = 0;
        while (i < m && jp[i] == j[i]) { jp[i] = 0; ++i; }
        if (i == m) break;
        ++jp[i];
      }
      if (any && !term_sum.is_zero()) {
        auto key = std::make_pair(jr.num(), jr.den());
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, term_sum);
        else it->second = mat_add(F, it->second, term_sum);
      }
      int i = 0;
      while (i < m && j[i] == top[i]) { j[i] = 0; ++i; }
      if (i == m) break;
      ++j[i];
    }
    for (const auto& [key, mat] : acc) {
      Rational value(key.first, key.second);
      for (int r = 0; r < mat.rows; ++r)
        for (int c = 0; c < mat.cols; ++c) {
          if (F.is_zero(mat.at(r, c))) continue;
          IVec chi = ivec_sub(b.weights[r], a.weights[c]);
          if (value > qdot_iv(chi, pa.delta)) return false;
        }
    }
  }
  return true;
}

// --- Filtered modules (P defined over F_q, L-representations) ---------------

// alpha-filtration V^alpha_{>= r} = direct sum of V_nu with <nu,delta_alpha> >= r.
inline Subspace alpha_filtration(const PRep& v, const ZipDatum& zd, int ai,
                                 const Rational& r) {
  if (!zd.p_defined_over_fq())
    throw std::invalid_argument("alpha_filtration requires P defined over F_q");
  if (!trivial_on_ru_p(v, zd))
    throw std::invalid_argument("alpha_filtration requires a representation trivial on R_u(P)");
  const Fq& F = *v.F;
  std::vector<int> idx;
  for (int i = 0; i < v.dim(); ++i)
    if (zd.pair_delta(v.weights[i], ai) >= r) idx.push_back(i);
  return block_span(F, idx, v.dim());
}

inline std::vector<Rational> alpha_filtration_jumps(const PRep& v, const ZipDatum& zd, int ai) {
  std::vector<Rational> vals;
  for (int i = 0; i < v.dim(); ++i) {
    Rational x = zd.pair_delta(v.weights[i], ai);
    bool seen = false;
    for (const auto& y : vals)
      if (y == x) { seen = true; break; }
    if (!seen) vals.push_back(x);
  }
  std::sort(vals.begin(), vals.end(), [](const Rational& x, const Rational& y) { return x < y; });
  return vals;
}

// L_phi-equivariant maps V -> V' compatible with every alpha-filtration,
// returned in hom_rep coordinates so the result is directly comparable with
// hom_bundles. Entry f_{r,c} is constrained to zero when the weight difference
// chi = wt'(r) - wt(c) leaves the congruence lattice or has <chi,delta> < 0
// for some alpha; generator equivariance contributes the remaining rows.
inline Subspace hom_filtered(const PRep& a, const PRep& b, const ZipDatum& zd,
                             const LphiDescription& L) {
  require_same_context(a, b);
  if (!zd.p_defined_over_fq())
    throw std::invalid_argument("hom_filtered requires P defined over F_q");
  if (!trivial_on_ru_p(a, zd) || !trivial_on_ru_p(b, zd))
    throw std::invalid_argument("hom_filtered requires representations trivial on R_u(P)");
  if (!L.explicit_elements.empty())
    throw std::invalid_argument(
        "hom_filtered needs symbolic generators; explicit matrices are tied to one basis");
  const Fq& F = *a.F;
  int da = a.dim(), db = b.dim(), n = da * db;
  auto var = [&](int row, int col) { return col * db + row; };  // f entry (row,col)

  FqMatrix rows(0, n);
  auto add_row = [&](const std::vector<Fq::elem>& coeffs) {
    bool nz = false;
    for (auto x : coeffs)
      if (!F.is_zero(x)) { nz = true; break; }
    if (!nz) return;
    FqMatrix nr(rows.rows + 1, n);
    nr.a = rows.a;
    nr.a.insert(nr.a.end(), coeffs.begin(), coeffs.end());
    rows = std::move(nr);
  };

  for (int r = 0; r < db; ++r)
    for (int c = 0; c < da; ++c) {
      IVec chi = ivec_sub(b.weights[r], a.weights[c]);
      bool dead = false;
      if (L.weight_congruence && !L.weight_congruence->contains(chi)) dead = true;
      if (!dead)
        for (int ai : zd.delta_p())
          if (qdot_iv(chi, zd.per_alpha(ai).delta) < Rational(0)) { dead = true; break; }
      if (dead) {
        std::vector<Fq::elem> row(n, 0);
        row[var(r, c)] = F.one();
        add_row(row);
      }
    }

  auto add_commutation = [&](const FqMatrix& gb, const FqMatrix& ga) {
    for (int r = 0; r < db; ++r)
      for (int c = 0; c < da; ++c) {
        std::vector<Fq::elem> row(n, 0);
        for (int k = 0; k < db; ++k)
          row[var(k, c)] = F.add(row[var(k, c)], gb.at(r, k));
        for (int k = 0; k < da; ++k)
          row[var(r, k)] = F.sub(row[var(r, k)], ga.at(k, c));
        add_row(row);
      }
  };
  {
    auto ga = materialize_elements(a, L);
    auto gb = materialize_elements(b, L);
    for (size_t k = 0; k < ga.size(); ++k) add_commutation(gb[k], ga[k]);
  }
  for (const auto& inf : L.infinitesimal)
    for (int s = 1; s < inf.bound; ++s)
      add_commutation(b.op(inf.root, s), a.op(inf.root, s));

  if (rows.rows == 0) return Subspace::full(F, n);
  return Subspace::kernel_of(F, rows);
}

// --- L-semisimplification comparison ----------------------------------------

struct LssReport {
  bool contained = false;
  SectionSpace h0_v, h0_lss;
};

inline LssReport lss_inclusion_check(const PRep& v, const ZipDatum& zd,
                                     const LphiDescription& L) {
  LssReport rep;
  rep.h0_v = h0(v, zd, L);
  rep.h0_lss = h0(l_semisimplify(v, zd), zd, L);
  rep.contained = rep.h0_lss.space.contains(*v.F, rep.h0_v.space);
  return rep;
}

}  // namespace zipsections
