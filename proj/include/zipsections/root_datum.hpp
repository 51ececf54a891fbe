#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "int_lattice.hpp"

namespace zipsections {

// Weyl group element: its matrix on X*(T) plus a reduced word (generator
// indices, leftmost factor first).
struct WeylElt {
  IMat m;
  std::vector<int> word;
  int length() const { return (int)word.size(); }
  bool operator==(const WeylElt& o) const { return m == o.m; }
};

// Based root datum of a connected reductive group split over k, with the
// q-power Frobenius acting on X*(T) as q times the finite-order matrix sigma.
// Positive roots are taken with respect to B+, so B corresponds to Phi_-.
class RootDatum {
 public:
  RootDatum(int rank, IMat simple_roots, IMat simple_coroots, IMat sigma_star,
            i64 q)
      : rank_(rank),
        simple_roots_(std::move(simple_roots)),
        simple_coroots_(std::move(simple_coroots)),
        sigma_star_(std::move(sigma_star)),
        q_(q) {
    validate_and_derive();
  }

  int rank() const { return rank_; }
  i64 q() const { return q_; }
  int p() const { return p_; }
  int field_k() const { return k_; }  // q = p^k
  int num_simple() const { return (int)simple_roots_.size(); }
  const IVec& simple_root(int i) const { return simple_roots_[i]; }
  const IVec& simple_coroot(int i) const { return simple_coroots_[i]; }
  const IMat& sigma_star() const { return sigma_star_; }
  const IMat& sigma_star_inv() const { return sigma_star_inv_; }
  const IMat& sigma_costar() const { return sigma_costar_; }
  int sigma_order() const { return sigma_order_; }
  const std::vector<IVec>& positive_roots() const { return pos_roots_; }
  const std::vector<IVec>& all_roots() const { return roots_; }

  i64 pairing(const IVec& chi, const IVec& cochar) const {
    return ivec_dot(chi, cochar);
  }

  bool is_root(const IVec& v) const { return root_index_.count(v) > 0; }
  bool is_positive_root(const IVec& v) const {
    auto it = root_index_.find(v);
    return it != root_index_.end() && it->second;
  }

  IVec sigma_on_char(const IVec& v) const { return imat_apply(sigma_star_, v); }
  IVec sigma_inv_on_char(const IVec& v) const {
    return imat_apply(sigma_star_inv_, v);
  }
  // sigma on roots must stay inside Phi; validated for Delta at construction.
  IVec sigma_on_root(const IVec& a) const {
    IVec r = sigma_on_char(a);
    if (!is_root(r)) throw std::domain_error("sigma image is not a root");
    return r;
  }

  IMat reflection_matrix(int i) const {
    IMat s = imat_identity(rank_);
    for (int r = 0; r < rank_; ++r)
      for (int c = 0; c < rank_; ++c)
        s[r][c] = checked_i64(i128(s[r][c]) -
                              i128(simple_roots_[i][r]) * simple_coroots_[i][c]);
    return s;
  }

  int length(const IMat& w) const {
    int l = 0;
    for (const auto& b : pos_roots_)
      if (!is_positive_root(imat_apply(w, b))) ++l;
    return l;
  }

  // Greedy reduced word: repeatedly strip the lowest-index generator that
  // shortens from the left.
  std::vector<int> reduced_word(IMat w) const {
    std::vector<int> word;
    int l = length(w);
    while (l > 0) {
      bool found = false;
      for (int i = 0; i < num_simple(); ++i) {
        IMat sw = imat_mul(reflection_matrix(i), w);
        int ls = length(sw);
        if (ls == l - 1) {
          word.push_back(i);
          w = std::move(sw);
          l = ls;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("word recovery failed");
    }
    return word;
  }

  WeylElt make_element(const IMat& w) const { return WeylElt{w, reduced_word(w)}; }

  IMat word_to_matrix(const std::vector<int>& word) const {
    IMat w = imat_identity(rank_);
    for (int i : word) w = imat_mul(w, reflection_matrix(i));
    return w;
  }

  // Subgroup W_K generated by the simple reflections in K; all of W for
  // K = {0..num_simple-1}. Matrices sorted lexicographically by entries.
  std::vector<IMat> subgroup_matrices(const std::vector<int>& K) const {
    std::set<IMat> seen;
    std::vector<IMat> queue{imat_identity(rank_)};
    seen.insert(queue[0]);
    size_t head = 0;
    while (head < queue.size()) {
      IMat w = queue[head++];
      for (int i : K) {
        IMat nw = imat_mul(reflection_matrix(i), w);
        if (seen.insert(nw).second) {
          if (seen.size() > 20000)
            throw std::domain_error("Weyl enumeration exceeded configured bound");
          queue.push_back(nw);
        }
      }
    }
    return std::vector<IMat>(seen.begin(), seen.end());
  }

  std::vector<int> all_simple_indices() const {
    std::vector<int> k(num_simple());
    for (int i = 0; i < num_simple(); ++i) k[i] = i;
    return k;
  }

  std::vector<WeylElt> weyl_group() const {
    std::vector<WeylElt> out;
    for (const auto& m : subgroup_matrices(all_simple_indices()))
      out.push_back(make_element(m));
    return out;
  }

  WeylElt longest_element(const std::vector<int>& K) const {
    IMat best = imat_identity(rank_);
    int bl = 0;
    for (const auto& m : subgroup_matrices(K)) {
      int l = length(m);
      if (l > bl) { bl = l; best = m; }
    }
    return make_element(best);
  }

  // Minimal-length representatives of W_K \ W: w with w^{-1}(beta) > 0 for
  // all beta in K.
  std::vector<WeylElt> min_coset_reps(const std::vector<int>& K) const {
    std::vector<WeylElt> out;
    for (const auto& m : subgroup_matrices(all_simple_indices())) {
      IMat winv = imat_inverse(m);
      bool minimal = true;
      for (int i : K)
        if (!is_positive_root(imat_apply(winv, simple_roots_[i]))) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(make_element(m));
    }
    return out;
  }

  IMat sigma_on_weyl(const IMat& w) const {
    return imat_mul(imat_mul(sigma_star_, w), sigma_star_inv_);
  }

  // Bruhat order by the subword criterion on a fixed reduced word of w:
  // x <= w iff x is a product of some l(x)-letter subsequence. DP over
  // subproducts keyed by length used.
  bool bruhat_leq(const IMat& x, const WeylElt& w) const {
    int lx = length(x);
    int lw = w.length();
    if (lx > lw) return false;
    if (lx == lw) return x == w.m;
    std::set<std::pair<int, IMat>> reach;
    reach.insert({0, imat_identity(rank_)});
    for (int letter : w.word) {
      IMat s = reflection_matrix(letter);
      std::set<std::pair<int, IMat>> next = reach;
      for (const auto& [used, m] : reach) {
        if (used >= lx) continue;
        next.insert({used + 1, imat_mul(m, s)});
      }
      reach = std::move(next);
    }
    return reach.count({lx, x}) > 0;
  }

 private:
  void validate_and_derive() {
    if (rank_ <= 0 || rank_ > 12) throw std::invalid_argument("rank out of range");
    factor_q();
    int ns = num_simple();
    if (ns == 0) throw std::invalid_argument("need at least one simple root");
    if ((int)simple_coroots_.size() != ns)
      throw std::invalid_argument("simple roots/coroots count mismatch");
    for (int i = 0; i < ns; ++i)
      if ((int)simple_roots_[i].size() != rank_ ||
          (int)simple_coroots_[i].size() != rank_)
        throw std::invalid_argument("root/coroot of wrong length");
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j) {
        i64 c = pairing(simple_roots_[i], simple_coroots_[j]);
        if (i == j && c != 2)
          throw std::invalid_argument("<alpha_i, alpha_i^vee> must equal 2");
        if (i != j && c > 0)
          throw std::invalid_argument("Cartan matrix off-diagonal must be <= 0");
      }
    // Simple roots linearly independent.
    {
      IMat rows = simple_roots_;
      IMat h = hnf_rows(rows);
      if ((int)h.size() != ns)
        throw std::invalid_argument("simple roots must be linearly independent");
    }
    if ((int)sigma_star_.size() != rank_)
      throw std::invalid_argument("sigma matrix of wrong size");
    for (const auto& r : sigma_star_)
      if ((int)r.size() != rank_)
        throw std::invalid_argument("sigma matrix of wrong size");
    sigma_star_inv_ = imat_inverse(sigma_star_);  // throws if not unimodular
    sigma_costar_ = imat_transpose(sigma_star_inv_);
    // sigma permutes Delta.
    sigma_perm_.assign(ns, -1);
    for (int i = 0; i < ns; ++i) {
      IVec img = sigma_on_char(simple_roots_[i]);
      for (int j = 0; j < ns; ++j)
        if (img == simple_roots_[j]) { sigma_perm_[i] = j; break; }
      if (sigma_perm_[i] < 0)
        throw std::invalid_argument("sigma does not permute the simple roots");
      // Coroots must follow the same permutation.
      if (imat_apply(sigma_costar_, simple_coroots_[i]) !=
          simple_coroots_[sigma_perm_[i]])
        throw std::invalid_argument("sigma does not permute the simple coroots");
    }
    sigma_order_ = 1;
    IMat acc = sigma_star_;
    while (acc != imat_identity(rank_)) {
      acc = imat_mul(acc, sigma_star_);
      if (++sigma_order_ > 64)
        throw std::invalid_argument("sigma is not of finite order");
    }
    generate_roots();
  }

  void factor_q() {
    if (q_ < 2) throw std::invalid_argument("q must be a prime power >= 2");
    i64 n = q_;
    int pr = 0;
    for (int d = 2; (i64)d * d <= n; ++d)
      if (n % d == 0) { pr = d; break; }
    if (pr == 0) pr = (int)n;
    k_ = 0;
    while (n > 1) {
      if (n % pr) throw std::invalid_argument("q must be a prime power");
      n /= pr;
      ++k_;
    }
    p_ = pr;
  }

  void generate_roots() {
    std::set<IVec> roots(simple_roots_.begin(), simple_roots_.end());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<IVec> cur(roots.begin(), roots.end());
      for (const auto& b : cur)
        for (int i = 0; i < num_simple(); ++i) {
          IVec nb = imat_apply(reflection_matrix(i), b);
          if (roots.insert(nb).second) grew = true;
        }
      if (roots.size() > 2000)
        throw std::invalid_argument("root system enumeration exceeded bound");
    }
    roots_.assign(roots.begin(), roots.end());
    // Positivity: coordinates in the simple-root basis all nonnegative.
    for (const auto& b : roots_) {
      QVec coords = simple_root_coords(b);
      bool pos = true, neg = true;
      for (const auto& c : coords) {
        if (c < Rational(0)) pos = false;
        if (c > Rational(0)) neg = false;
      }
      if (pos == neg) throw std::logic_error("root has mixed sign coordinates");
      root_index_[b] = pos;
      if (pos) pos_roots_.push_back(b);
    }
  }

  // Coordinates of v in the basis of simple roots (v must lie in their span).
  QVec simple_root_coords(const IVec& v) const {
    int ns = num_simple();
    // Solve (A^T A) x = A^T v with A columns = simple roots; A has full
    // column rank, so the Gram matrix is invertible.
    QMat gram(ns, QVec(ns));
    QVec rhs(ns);
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < ns; ++j)
        gram[i][j] = Rational(ivec_dot(simple_roots_[i], simple_roots_[j]));
      rhs[i] = Rational(ivec_dot(simple_roots_[i], v));
    }
    return qmat_solve(gram, rhs);
  }

  int rank_;
  IMat simple_roots_, simple_coroots_;
  IMat sigma_star_, sigma_star_inv_, sigma_costar_;
  i64 q_;
  int p_ = 0, k_ = 0;
  int sigma_order_ = 1;
  std::vector<int> sigma_perm_;
  std::vector<IVec> roots_, pos_roots_;
  std::map<IVec, bool> root_index_;
};

}  // namespace zipsections
