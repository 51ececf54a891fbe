#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sections.hpp"

namespace zipsections {

// --- Root data of the worked examples ---------------------------------------

// SL2: X*(T) = Z, alpha = 2, alpha^vee = 1, split.
inline RootDatum sl2_root_datum(i64 q) {
  return RootDatum(1, {{2}}, {{1}}, {{1}}, q);
}

// U(2,1) relative to F_{q^2}/F_q, T = diagonal torus of GL_3 over F_{q^2}:
// sigma acts on characters by (k1,k2,k3) -> (-k3,-k2,-k1).
inline RootDatum u21_root_datum(i64 q) {
  IMat roots = {{1, -1, 0}, {0, 1, -1}};
  IMat coroots = {{1, -1, 0}, {0, 1, -1}};
  IMat sigma = {{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}};
  return RootDatum(3, roots, coroots, sigma, q);
}

// Res_{F_{q^2}/F_q} SL_2: two SL2 factors swapped by sigma.
inline RootDatum res_sl2_root_datum(i64 q) {
  IMat roots = {{2, 0}, {0, 2}};
  IMat coroots = {{1, 0}, {0, 1}};
  IMat sigma = {{0, 1}, {1, 0}};
  return RootDatum(2, roots, coroots, sigma, q);
}

// Sp(2n) over F_q, type C_n: alpha_i = e_i - e_{i+1} (i < n), alpha_n = 2e_n.
inline RootDatum sp2n_root_datum(int n, i64 q) {
  IMat roots, coroots, sigma;
  for (int i = 0; i + 1 < n; ++i) {
    IVec r(n, 0);
    r[i] = 1;
    r[i + 1] = -1;
    roots.push_back(r);
    coroots.push_back(r);
  }
  IVec last(n, 0);
  last[n - 1] = 2;
  roots.push_back(last);
  IVec lastv(n, 0);
  lastv[n - 1] = 1;
  coroots.push_back(lastv);
  sigma = imat_identity(n);
  return RootDatum(n, roots, coroots, sigma, q);
}

inline IVec sl2_mu() { return {1}; }
inline IVec u21_mu() { return {1, 1, 0}; }
inline IVec res_sl2_mu() { return {1, 0}; }
inline IVec sp2n_mu(int n) { return IVec(n, 1); }

// --- L_phi descriptions ------------------------------------------------------

namespace detail {
inline bool same_root_datum(const RootDatum& a, const RootDatum& b) {
  if (a.rank() != b.rank() || a.q() != b.q()) return false;
  if (a.num_simple() != b.num_simple()) return false;
  for (int i = 0; i < a.num_simple(); ++i)
    if (a.simple_root(i) != b.simple_root(i) || a.simple_coroot(i) != b.simple_coroot(i))
      return false;
  return a.sigma_star_inv() == b.sigma_star_inv();
}
}  // namespace detail

// Description of L_phi for the shipped data. In every case the character
// group of the finite torus part is encoded by the lattice of characters
// trivial on it (the image of wp* on X*(T)); the non-smooth part contributes
// infinitesimal conditions, and for Sp(2n) the non-toral Levi GL_n(F_q) is
// generated over T(F_q) by the simple root groups of I with F_p-basis scalars.
inline LphiDescription lphi_catalog(const ZipDatum& zd) {
  const RootDatum& rd = zd.rd();
  LphiDescription d;
  d.scalar_degree = rd.field_k();
  d.weight_congruence = zd.fq_trivial_characters();
  if (zd.I().empty()) return d;  // L = T: nothing beyond T(F_q)
  if (rd.rank() == 3 && detail::same_root_datum(rd, u21_root_datum(rd.q())) &&
      zd.mu() == u21_mu()) {
    d.infinitesimal.push_back({rd.simple_root(0), rd.q()});
    return d;
  }
  if (rd.rank() == 2 && detail::same_root_datum(rd, res_sl2_root_datum(rd.q())) &&
      zd.mu() == res_sl2_mu()) {
    d.infinitesimal.push_back({IVec{0, 2}, rd.q()});
    return d;
  }
  if (detail::same_root_datum(rd, sp2n_root_datum(rd.rank(), rd.q())) &&
      zd.mu() == sp2n_mu(rd.rank())) {
    for (int i : zd.I())
      for (int j = 0; j < rd.field_k(); ++j) {
        std::vector<int> coeffs(rd.field_k(), 0);
        coeffs[j] = 1;
        d.unipotent_gens.push_back({rd.simple_root(i), coeffs});
        d.unipotent_gens.push_back({ivec_neg(rd.simple_root(i)), coeffs});
      }
    return d;
  }
  throw std::invalid_argument(
      "no catalog L_phi description for this zip datum; supply an LphiDescription manually");
}

struct CatalogEntry {
  std::string name;
  ZipDatum zd;
  LphiDescription lphi;
  std::shared_ptr<const Fq> field;
};

// name in {"sl2","u21","res_sl2","sp4","sp2n"}; n used only for "sp2n".
inline CatalogEntry catalog_entry(const std::string& name, i64 q, int n = 2) {
  auto make = [&](RootDatum rd, IVec mu) {
    ZipDatum zd(std::move(rd), std::move(mu));
    LphiDescription lphi = lphi_catalog(zd);
    auto field = std::make_shared<const Fq>(zd.rd().p(), zd.rd().field_k());
    return CatalogEntry{name, std::move(zd), std::move(lphi), std::move(field)};
  };
  if (name == "sl2") return make(sl2_root_datum(q), sl2_mu());
  if (name == "u21") return make(u21_root_datum(q), u21_mu());
  if (name == "res_sl2") return make(res_sl2_root_datum(q), res_sl2_mu());
  if (name == "sp4") return make(sp2n_root_datum(2, q), sp2n_mu(2));
  if (name == "sp2n") return make(sp2n_root_datum(n, q), sp2n_mu(n));
  throw std::invalid_argument("unknown catalog name: " + name +
                              " (expected sl2|u21|res_sl2|sp4|sp2n)");
}

// --- Catalog representations -------------------------------------------------

inline PRep trivial_rep(std::shared_ptr<const Fq> F, int rank) {
  return char_rep(std::move(F), IVec(rank, 0));
}

// Sym^n(Std) of SL2 on x^{n-i} y^i; weights n-2i.
inline PRep sl2_sym_std(std::shared_ptr<const Fq> F, int n) {
  return sym_pair(std::move(F), {1}, {-1}, n);
}

// V_I(lambda) for U(2,1): det^{l2} (x) Sym^{l1-l2}(Std_GL2) (x) xi_{l3};
// weights nu_i = (l1-i, l2+i, l3). Non-L-dominant lambda gives the zero rep.
inline PRep u21_vI(std::shared_ptr<const Fq> F, i64 l1, i64 l2, i64 l3) {
  if (l1 < l2) {
    PRep v;
    v.F = std::move(F);
    v.rank = 3;
    return v;
  }
  PRep s = sym_pair(F, {1, 0, 0}, {0, 1, 0}, (int)(l1 - l2));
  return tensor(s, char_rep(std::move(F), {l2, l2, l3}));
}

// V_I(lambda) for Sp(4) (L = GL_2): weights (l1-i, l2+i).
inline PRep sp4_vI(std::shared_ptr<const Fq> F, i64 l1, i64 l2) {
  if (l1 < l2) {
    PRep v;
    v.F = std::move(F);
    v.rank = 2;
    return v;
  }
  PRep s = sym_pair(F, {1, 0}, {0, 1}, (int)(l1 - l2));
  return tensor(s, char_rep(std::move(F), {l2, l2}));
}

// The L-semisimplification counterexample representation over Res SL_2:
// (Sym^{q^2-1}(Std) (x) chi_{q^2-1}) boxtimes Sym^{q^2-1}(Std^{(q)}).
inline PRep res_sl2_example_rep(std::shared_ptr<const Fq> F, i64 q) {
  int n = (int)(q * q - 1);
  PRep first = tensor(sym_pair(F, {1}, {-1}, n), char_rep(F, {(i64)n}));
  PRep second = frobenius_twist(sym_pair(F, {1}, {-1}, n), q);
  return boxtimes(first, second);
}

// --- Closed-form oracles (implemented from the displayed predicates only) ----

inline i64 imod(i64 a, i64 m) { return ((a % m) + m) % m; }

// Indices j with x^j y^{n-j} a section: (q-1) | n-2j and (q+1) j <= n.
inline std::vector<i64> sl2_h0_closed_form(i64 q, i64 n) {
  std::vector<i64> js;
  for (i64 j = 0; j <= n; ++j)
    if (imod(n - 2 * j, q - 1) == 0 && (q + 1) * j <= n) js.push_back(j);
  return js;
}

struct PropertyPReport {
  bool crit_iii = false;  // multiplicity-one weights + lowest-weight projections
  bool crit_i = false;    // dim V^{R_u(B)} = 1
  bool holds() const { return crit_iii; }
};

// Property (P) for B-representations of SL2 (rank-1 datum, root -alpha = -2).
inline PropertyPReport property_P(const PRep& v) {
  PropertyPReport rep;
  if (v.rank != 1) throw std::invalid_argument("property_P expects an SL2-type representation");
  const Fq& F = *v.F;
  IVec down{-2};
  {
    FqMatrix rows(0, v.dim());
    for (int j = 1; j <= v.max_level(down); ++j) {
      if (!v.has_op(down, j)) continue;
      FqMatrix m = v.op(down, j);
      FqMatrix nr(rows.rows + m.rows, v.dim());
      nr.a = rows.a;
      nr.a.insert(nr.a.end(), m.a.begin(), m.a.end());
      rows = std::move(nr);
    }
    Subspace ker = v.dim() == 0 ? Subspace::zero(F, 0)
                   : rows.rows == 0 ? Subspace::full(F, v.dim())
                                    : Subspace::kernel_of(F, rows);
    rep.crit_i = (ker.dim() == 1);
  }
  if (v.dim() == 0) return rep;
  auto blocks = v.weight_blocks();
  for (const auto& [w, idx] : blocks)
    if (idx.size() != 1) return rep;  // crit_iii stays false
  i64 lowest = blocks.begin()->first[0];
  int lowest_idx = blocks.begin()->second[0];
  bool ok = true;
  for (const auto& [w, idx] : blocks) {
    i64 diff = w[0] - lowest;
    if (diff % 2 != 0) { ok = false; break; }
    int j = (int)(diff / 2);
    if (F.is_zero(v.op(down, j).at(lowest_idx, idx[0]))) { ok = false; break; }
  }
  rep.crit_iii = ok;
  return rep;
}

// The U(2,1) closed form of the section space of V_I(lambda):
// {i : q|i, (q+1)|l2+i, (q^2-1)|l1-i-q l3, i >= F(lambda)} with
// F(lambda) = q (q l1 - (q-1) l2 - l3) / (q^2 - q + 1).
inline std::vector<i64> u21_h0_closed_form(i64 q, i64 l1, i64 l2, i64 l3) {
  std::vector<i64> out;
  if (l1 < l2) return out;
  for (i64 i = 0; i <= l1 - l2; ++i) {
    if (imod(i, q) != 0) continue;
    if (imod(l2 + i, q + 1) != 0) continue;
    if (imod(l1 - i - q * l3, q * q - 1) != 0) continue;
    if (i128(i) * (q * q - q + 1) < i128(q) * (q * l1 - (q - 1) * l2 - l3)) continue;
    out.push_back(i);
  }
  return out;
}

// Basis indices of a section space inside a multiplicity-free representation:
// the indices whose weight block contributes dimension 1.
inline std::vector<int> section_indices_multfree(const PRep& v, const SectionSpace& s) {
  std::vector<int> out;
  auto blocks = v.weight_blocks();
  for (const auto& [w, idx] : blocks) {
    auto it = s.weight_dims.find(w);
    int d = (it == s.weight_dims.end()) ? 0 : it->second;
    if (d == 0) continue;
    if ((int)idx.size() != 1 || d != 1)
      throw std::domain_error("section space is not multiplicity-free along weights");
    out.push_back(idx[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RDeltaReport {
  bool all_factor = true;        // every section monomial is (xy^q)^j (y^{q-1})^e
  bool degree_q_minus_1 = false;  // y^{q-1} occurs as a section in degree q-1
  bool degree_q_plus_1 = false;   // x y^q occurs as a section in degree q+1
  i64 degrees_checked = 0;
};

// The ring of sections over all symmetric powers is generated by y^{q-1} and
// x y^q: computes the section spaces of Sym^n(Std) for n <= N through the
// general pipeline and factors every basis monomial x^j y^{n-j} (basis vector
// v_{n-j}) as (x y^q)^j (y^{q-1})^e with integer e >= 0.
inline RDeltaReport r_delta_generators_check(i64 q, i64 N) {
  CatalogEntry ce = catalog_entry("sl2", q);
  RDeltaReport rep;
  for (i64 n = 0; n <= N; ++n) {
    ++rep.degrees_checked;
    PRep v = sl2_sym_std(ce.field, (int)n);
    SectionSpace s = h0(v, ce.zd, ce.lphi);
    for (int i : section_indices_multfree(v, s)) {
      i64 j = n - i;  // v_i = x^{n-i} y^i
      i64 rest = n - (q + 1) * j;
      if (rest < 0 || rest % (q - 1) != 0) {
        rep.all_factor = false;
        continue;
      }
      i64 e = rest / (q - 1);
      // y-degree of (x y^q)^j (y^{q-1})^e must be n - j
      if (q * j + (q - 1) * e != n - j) rep.all_factor = false;
      if (n == q - 1 && j == 0) rep.degree_q_minus_1 = true;
      if (n == q + 1 && j == 1) rep.degree_q_plus_1 = true;
    }
  }
  return rep;
}

struct ConeReport {
  bool closed_form_member = false;       // l1 >= l2 and (q-1)l1 + l2 - q l3 <= 0
  std::optional<i64> witness_n;          // smallest N <= q(q^2-1) with sections
  std::optional<i64> witness_i;
};

inline ConeReport u21_cone(i64 q, i64 l1, i64 l2, i64 l3) {
  ConeReport r;
  r.closed_form_member = (l1 >= l2) && ((q - 1) * l1 + l2 - q * l3 <= 0);
  for (i64 n = 1; n <= q * (q * q - 1); ++n) {
    auto s = u21_h0_closed_form(q, n * l1, n * l2, n * l3);
    if (!s.empty()) {
      r.witness_n = n;
      r.witness_i = s.front();
      break;
    }
  }
  return r;
}

// --- Identity checks ---------------------------------------------------------

inline std::pair<int, int> factor_prime_power(i64 q) {
  if (q < 2) throw std::invalid_argument("q is not a prime power");
  for (int p = 2; (i64)p <= q; ++p) {
    if (q % p) continue;
    int k = 0;
    i64 m = q;
    while (m % p == 0) { m /= p; ++k; }
    if (m != 1) throw std::invalid_argument("q is not a prime power");
    return {p, k};
  }
  throw std::invalid_argument("q is not a prime power");
}

// H((x_ij)) = x11^q (x11 x22 - x12 x21) - x21^q (x11 x23 - x21 x13).
inline Fq::elem u21_hasse_value(const Fq& F, const FqMatrix& m, i64 q) {
  Fq::elem d1 = F.sub(F.mul(m.at(0, 0), m.at(1, 1)), F.mul(m.at(0, 1), m.at(1, 0)));
  Fq::elem d2 = F.sub(F.mul(m.at(0, 0), m.at(1, 2)), F.mul(m.at(1, 0), m.at(0, 2)));
  return F.sub(F.mul(F.pow(m.at(0, 0), q), d1), F.mul(F.pow(m.at(1, 0), q), d2));
}

struct IdentityReport {
  bool ok = true;
  int samples = 0;
  std::string detail;
};

// Samples E-group pairs (x, y^{-1}) in the U(2,1) shape over F_{q^4} and
// checks H(x y^{-1}) = g^{q^2+q} (ad-bc)^{q+1}, nonzero throughout.
inline IdentityReport hasse_invariant_check(i64 q, int samples, u64 seed = 2026) {
  auto [p, k] = factor_prime_power(q);
  Fq F(p, 4 * k);
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return (Fq::elem)(rng() % (u64)F.order()); };
  IdentityReport rep;
  {
    FqMatrix id3 = FqMatrix::identity(3);
    if (u21_hasse_value(F, id3, q) != F.one()) {
      rep.ok = false;
      rep.detail = "H(identity) != 1";
      return rep;
    }
  }
  while (rep.samples < samples) {
    Fq::elem a = rnd(), b = rnd(), c = rnd(), d = rnd(), e = rnd(), f = rnd(),
             g = rnd(), h = rnd(), i = rnd();
    Fq::elem det2 = F.sub(F.mul(a, d), F.mul(b, c));
    if (F.is_zero(g) || F.is_zero(det2)) continue;
    FqMatrix x(3, 3), minv(3, 3);
    x.at(0, 0) = a; x.at(0, 1) = b; x.at(1, 0) = c; x.at(1, 1) = d;
    x.at(2, 0) = e; x.at(2, 1) = f; x.at(2, 2) = g;
    minv.at(0, 0) = F.pow(g, q); minv.at(0, 1) = h; minv.at(0, 2) = i;
    minv.at(1, 1) = F.pow(d, q); minv.at(1, 2) = F.pow(b, q);
    minv.at(2, 1) = F.pow(c, q); minv.at(2, 2) = F.pow(a, q);
    FqMatrix prod = mat_mul(F, x, minv);
    Fq::elem lhs = u21_hasse_value(F, prod, q);
    Fq::elem rhs = F.mul(F.pow(g, q * q + q), F.pow(det2, q + 1));
    if (lhs != rhs || F.is_zero(lhs)) {
      rep.ok = false;
      rep.detail = "identity failed at sample " + std::to_string(rep.samples);
      return rep;
    }
    ++rep.samples;
  }
  rep.detail = "all samples agree";
  return rep;
}

// Theta(g) = (A_g, 0; 0, D_g - C_g A_g^{-1} B_g) on the locus where A_g is
// invertible; checked against theta^P_L(a) theta^Q_L(b)^{-1} for zip pairs
// a = (A, 0; tA^{-1} S, tA^{-1}), b = (A^(q), A^(q) S'; 0, tA^{(q),-1}),
// and Theta restricted to L is the identity.
inline IdentityReport theta_sp2n_check(int n, i64 q, int samples, u64 seed = 2026) {
  auto [p, k] = factor_prime_power(q);
  Fq F(p, 2 * k);
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return (Fq::elem)(rng() % (u64)F.order()); };
  auto rnd_mat = [&](bool symmetric) {
    FqMatrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (symmetric && c < r) { m.at(r, c) = m.at(c, r); continue; }
        m.at(r, c) = rnd();
      }
    return m;
  };
  auto frob_mat = [&](const FqMatrix& m) {
    FqMatrix r(m.rows, m.cols);
    for (size_t idx = 0; idx < m.a.size(); ++idx) r.a[idx] = F.frob(m.a[idx], k);
    return r;
  };
  auto block = [&](const FqMatrix& tl, const FqMatrix& tr, const FqMatrix& bl,
                   const FqMatrix& br) {
    FqMatrix m(2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        m.at(r, c) = tl.at(r, c);
        m.at(r, n + c) = tr.at(r, c);
        m.at(n + r, c) = bl.at(r, c);
        m.at(n + r, n + c) = br.at(r, c);
      }
    return m;
  };
  auto sub_block = [&](const FqMatrix& m, int r0, int c0) {
    FqMatrix s(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) s.at(r, c) = m.at(r0 + r, c0 + c);
    return s;
  };
  IdentityReport rep;
  FqMatrix zero(n, n);
  auto theta_of = [&](const FqMatrix& m) {
    FqMatrix am = sub_block(m, 0, 0), bm = sub_block(m, 0, n);
    FqMatrix cm = sub_block(m, n, 0), dm = sub_block(m, n, n);
    if (mat_rank(F, am) != n)
      throw std::domain_error("Theta undefined: upper-left block singular");
    FqMatrix t = mat_mul(F, cm, mat_mul(F, mat_inverse(F, am), bm));
    FqMatrix schur = mat_add(F, dm, mat_scale(F, F.neg(F.one()), t));
    return block(am, zero, zero, schur);
  };
  while (rep.samples < samples) {
    FqMatrix A = rnd_mat(false);
    if (mat_rank(F, A) != n) continue;
    FqMatrix S = rnd_mat(true), Sp_ = rnd_mat(true);
    FqMatrix AinvT = mat_transpose(mat_inverse(F, A));
    FqMatrix Aq = frob_mat(A);
    FqMatrix AqinvT = mat_transpose(mat_inverse(F, Aq));
    FqMatrix a = block(A, zero, mat_mul(F, AinvT, S), AinvT);
    FqMatrix b = block(Aq, mat_mul(F, Aq, Sp_), zero, AqinvT);
    FqMatrix g = mat_mul(F, a, mat_inverse(F, b));
    FqMatrix theta = theta_of(g);
    FqMatrix expected =
        block(mat_mul(F, A, mat_inverse(F, Aq)), zero, zero,
              mat_mul(F, AinvT, mat_transpose(Aq)));
    if (!(theta == expected)) {
      rep.ok = false;
      rep.detail = "Theta(ab^{-1}) != theta^P_L(a) theta^Q_L(b)^{-1} at sample " +
                   std::to_string(rep.samples);
      return rep;
    }
    // Theta restricts to the identity on L.
    FqMatrix l = block(A, zero, zero, AinvT);
    if (!(theta_of(l) == l)) {
      rep.ok = false;
      rep.detail = "Theta does not restrict to the identity on L";
      return rep;
    }
    ++rep.samples;
  }
  rep.detail = "all samples agree";
  return rep;
}

}  // namespace zipsections
