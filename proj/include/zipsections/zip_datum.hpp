#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "root_datum.hpp"

namespace zipsections {

// Data attached to one alpha in Delta^P: the exact constants steering the
// per-weight-class filtration steps of the section-space formula.
struct PerAlpha {
  IVec alpha;
  int m = 1;                 // m_alpha
  QVec delta;                // delta_alpha in X_*(T) tensor Q
  Rational alpha_delta;      // <alpha, delta_alpha>
  std::vector<IVec> xi;      // Xi_alpha: (-alpha, sigma^{-1}alpha, ...)
  QVec r;                    // r_alpha, length m
  IntLattice kernel_lattice; // (Z^m)_r
  IntLattice lambda;         // Lambda_{Xi,r} inside X*(T)
};

// Zip datum of a cocharacter datum (G, mu): parabolic types, frame, and the
// per-alpha filtration data. mu must be dominant.
class ZipDatum {
 public:
  ZipDatum(RootDatum rd, IVec mu) : rd_(std::move(rd)), mu_(std::move(mu)) {
    derive();
  }

  const RootDatum& rd() const { return rd_; }
  const IVec& mu() const { return mu_; }
  const std::vector<int>& I() const { return I_; }             // simple indices
  const std::vector<int>& delta_p() const { return delta_p_; } // simple indices
  std::vector<IVec> I_roots() const {
    std::vector<IVec> v;
    for (int i : I_) v.push_back(rd_.simple_root(i));
    return v;
  }
  std::vector<IVec> delta_p_roots() const {
    std::vector<IVec> v;
    for (int i : delta_p_) v.push_back(rd_.simple_root(i));
    return v;
  }
  bool p_defined_over_fq() const { return sigma_fixes_I_; }

  const WeylElt& w0() const { return w0_; }
  const WeylElt& w0I() const { return w0I_; }
  const WeylElt& frame_z() const { return frame_z_; }
  i64 dim_p() const { return dim_p_; }
  i64 dim_g() const { return dim_g_; }

  const PerAlpha& per_alpha(int simple_index) const {
    return per_alpha_.at(simple_index);
  }
  const std::map<int, PerAlpha>& per_alpha_all() const { return per_alpha_; }

  // wp* on X*(T): integer matrix id - q sigma*^{-1}; its image lattice is the
  // set of characters trivial on T(F_q).
  const IMat& wp_star() const { return wp_star_; }
  const IntLattice& fq_trivial_characters() const { return congruence_; }

  QVec wp_costar_apply(const QVec& d) const {
    QVec r(rd_.rank());
    for (int i = 0; i < rd_.rank(); ++i) {
      Rational s;
      for (int j = 0; j < rd_.rank(); ++j) s = s + wp_costar_[i][j] * d[j];
      r[i] = s;
    }
    return r;
  }
  QVec wp_costar_inverse_apply(const QVec& d) const { return qmat_solve(wp_costar_, d); }

  Rational pair_delta(const IVec& chi, int simple_index) const {
    return qdot_iv(chi, per_alpha_.at(simple_index).delta);
  }

  // True iff beta lies in the unipotent radical of P, i.e. is a negative
  // root outside Phi_I.
  bool in_ru_p(const IVec& beta) const {
    if (!rd_.is_root(beta) || rd_.is_positive_root(beta)) return false;
    return !is_levi_root(beta);
  }
  bool is_levi_root(const IVec& beta) const {
    if (!rd_.is_root(beta)) return false;
    QVec coords = simple_coords(beta);
    for (int i = 0; i < rd_.num_simple(); ++i) {
      bool in_I = false;
      for (int j : I_)
        if (j == i) { in_I = true; break; }
      if (!in_I && !coords[i].is_zero()) return false;
    }
    return true;
  }

 private:
  void derive() {
    if ((int)mu_.size() != rd_.rank())
      throw std::invalid_argument("mu has wrong length");
    for (int i = 0; i < rd_.num_simple(); ++i) {
      i64 v = rd_.pairing(rd_.simple_root(i), mu_);
      if (v < 0)
        throw std::invalid_argument(
            "mu is not dominant: <alpha_" + std::to_string(i) +
            ", mu> < 0; replace mu by its dominant Weyl conjugate");
      if (v == 0) I_.push_back(i);
      else delta_p_.push_back(i);
    }
    sigma_fixes_I_ = true;
    for (int i : I_) {
      IVec img = rd_.sigma_on_char(rd_.simple_root(i));
      bool found = false;
      for (int j : I_)
        if (rd_.simple_root(j) == img) { found = true; break; }
      if (!found) { sigma_fixes_I_ = false; break; }
    }

    int n = rd_.rank();
    // wp_* = id - q sigma_* on X_*(T); wp* = transpose on X*(T).
    wp_costar_.assign(n, QVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        wp_costar_[i][j] =
            Rational((i == j ? 1 : 0)) - Rational(rd_.q()) * Rational(rd_.sigma_costar()[i][j]);
    wp_star_.assign(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        wp_star_[i][j] = checked_i64(
            i128(i == j ? 1 : 0) - i128(rd_.q()) * rd_.sigma_star_inv()[i][j]);
    {
      IMat cols = imat_transpose(wp_star_);  // image = span of columns
      congruence_ = IntLattice(n, cols);
    }

    for (int ai : delta_p_) per_alpha_[ai] = derive_alpha(ai);

    w0_ = rd_.longest_element(rd_.all_simple_indices());
    w0I_ = rd_.longest_element(I_);
    frame_z_ = rd_.make_element(imat_mul(rd_.sigma_on_weyl(w0I_.m), w0_.m));
    i64 pos = (i64)rd_.positive_roots().size();
    i64 pos_I = 0;
    for (const auto& b : rd_.positive_roots())
      if (is_levi_root(b)) ++pos_I;
    dim_p_ = rd_.rank() + pos + pos_I;
    dim_g_ = rd_.rank() + 2 * pos;
  }

  PerAlpha derive_alpha(int ai) {
    PerAlpha pa;
    pa.alpha = rd_.simple_root(ai);
    // m_alpha = min{m >= 1 : sigma^{-m}(alpha) not in I}.
    IVec cur = pa.alpha;
    pa.m = 0;
    for (int m = 1; m <= rd_.sigma_order() + 1; ++m) {
      cur = rd_.sigma_inv_on_char(cur);
      bool in_I = false;
      for (int j : I_)
        if (rd_.simple_root(j) == cur) { in_I = true; break; }
      if (!in_I) { pa.m = m; break; }
    }
    if (pa.m == 0) throw std::logic_error("m_alpha not found");

    // delta_alpha = wp_*^{-1}(alpha^vee).
    IVec covee = rd_.simple_coroot(ai);
    pa.delta = qmat_solve(wp_costar_, qvec_from_int(covee));
    pa.alpha_delta = qdot_iv(pa.alpha, pa.delta);

    pa.xi.push_back(ivec_neg(pa.alpha));
    cur = pa.alpha;
    for (int i = 1; i < pa.m; ++i) {
      cur = rd_.sigma_inv_on_char(cur);
      pa.xi.push_back(cur);
    }

    pa.r.resize(pa.m);
    pa.r[0] = Rational(1) - pa.alpha_delta;
    i64 qpow = 1;
    for (int i = 1; i < pa.m; ++i) {
      qpow = checked_i64(i128(qpow) * rd_.q());
      pa.r[i] = (pa.alpha_delta - Rational(1)) / Rational(qpow);
    }

    // (Z^m)_r: clear denominators of r, take the integer kernel.
    i64 lcm = 1;
    for (const auto& x : pa.r) lcm = checked_i64(i128(lcm) / std::gcd(lcm, x.den()) * x.den());
    IVec row(pa.m);
    for (int i = 0; i < pa.m; ++i)
      row[i] = checked_i64(i128(pa.r[i].num()) * (lcm / pa.r[i].den()));
    IMat ker = integer_kernel(IMat{row});
    pa.kernel_lattice = IntLattice(pa.m, ker);

    // Lambda = image of the kernel under n |-> sum n_i Xi_i.
    IMat lam_gens;
    for (const auto& nvec : pa.kernel_lattice.basis()) {
      IVec g(rd_.rank(), 0);
      for (int i = 0; i < pa.m; ++i) g = ivec_add(g, ivec_scale(nvec[i], pa.xi[i]));
      lam_gens.push_back(g);
    }
    pa.lambda = IntLattice(rd_.rank(), lam_gens);
    return pa;
  }

  QVec simple_coords(const IVec& v) const {
    int ns = rd_.num_simple();
    QMat gram(ns, QVec(ns));
    QVec rhs(ns);
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < ns; ++j)
        gram[i][j] = Rational(ivec_dot(rd_.simple_root(i), rd_.simple_root(j)));
      rhs[i] = Rational(ivec_dot(rd_.simple_root(i), v));
    }
    return qmat_solve(gram, rhs);
  }

  RootDatum rd_;
  IVec mu_;
  std::vector<int> I_, delta_p_;
  bool sigma_fixes_I_ = false;
  WeylElt w0_, w0I_, frame_z_;
  i64 dim_p_ = 0, dim_g_ = 0;
  std::map<int, PerAlpha> per_alpha_;
  QMat wp_costar_;
  IMat wp_star_;
  IntLattice congruence_;
};

// E-orbit combinatorics: elements of {}^I W with dimensions and the twisted
// closure order w' <= w iff w1 w' sigma(w1)^{-1} <=_Bruhat w for some w1 in W_I.
struct Orbit {
  WeylElt w;
  i64 dim = 0, codim = 0;
};

struct OrbitPoset {
  std::vector<Orbit> orbits;                    // sorted by (length, word)
  std::vector<std::vector<bool>> leq;           // closure relation
  std::vector<std::pair<int, int>> hasse_edges; // (smaller, larger)
  int open_index = -1;
  std::vector<int> codim_one;
};

inline OrbitPoset orbit_poset(const ZipDatum& zd) {
  const RootDatum& rd = zd.rd();
  OrbitPoset out;
  std::vector<WeylElt> reps = rd.min_coset_reps(zd.I());
  std::sort(reps.begin(), reps.end(), [](const WeylElt& a, const WeylElt& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.word != b.word) return a.word < b.word;
    return a.m < b.m;
  });
  i64 lmax = 0;
  for (const auto& w : reps) lmax = std::max<i64>(lmax, w.length());
  for (const auto& w : reps) {
    Orbit o;
    o.w = w;
    o.dim = zd.dim_p() + w.length();
    o.codim = lmax - w.length();
    out.orbits.push_back(o);
  }
  int n = (int)out.orbits.size();
  std::vector<IMat> wI = rd.subgroup_matrices(zd.I());
  // Twisted conjugates y w sigma(y)^{-1} of each element; the lower element
  // is compared through its twists against a fixed upper element.
  std::vector<std::vector<IMat>> twists(n);
  for (int i = 0; i < n; ++i)
    for (const auto& w1 : wI)
      twists[i].push_back(imat_mul(imat_mul(w1, out.orbits[i].w.m),
                                   imat_inverse(rd.sigma_on_weyl(w1))));
  out.leq.assign(n, std::vector<bool>(n, false));
  for (int lo = 0; lo < n; ++lo)
    for (int hi = 0; hi < n; ++hi) {
      bool rel = false;
      for (const auto& t : twists[lo])
        if (rd.bruhat_leq(t, out.orbits[hi].w)) { rel = true; break; }
      out.leq[lo][hi] = rel;
    }
  for (int i = 0; i < n; ++i) {
    if (out.orbits[i].codim == 0) out.open_index = i;
    if (out.orbits[i].codim == 1) out.codim_one.push_back(i);
  }
  // Hasse edges: transitive reduction.
  for (int lo = 0; lo < n; ++lo)
    for (int hi = 0; hi < n; ++hi) {
      if (lo == hi || !out.leq[lo][hi]) continue;
      bool direct = true;
      for (int mid = 0; mid < n; ++mid) {
        if (mid == lo || mid == hi) continue;
        if (out.leq[lo][mid] && out.leq[mid][hi]) { direct = false; break; }
      }
      if (direct) out.hasse_edges.emplace_back(lo, hi);
    }
  return out;
}

}  // namespace zipsections
