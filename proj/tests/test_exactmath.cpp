#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "zipsections/fq_matrix.hpp"
#include "zipsections/int_lattice.hpp"

using namespace zipsections;

TEST_CASE("finite fields satisfy the field axioms") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{
           {2, 1}, {2, 2}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    Fq F(p, e);
    CAPTURE(p, e);
    i64 n = F.order();
    REQUIRE(n == (i64)std::llround(std::pow((double)p, (double)e)));
    // exhaustive on pairs, sampled stride on triples for the bigger fields
    i64 stride = n <= 25 ? 1 : 7;
    for (Fq::elem a = 0; a < (Fq::elem)n; ++a) {
      REQUIRE(F.add(a, F.zero()) == a);
      REQUIRE(F.mul(a, F.one()) == a);
      REQUIRE(F.add(a, F.neg(a)) == F.zero());
      if (!F.is_zero(a)) {
        REQUIRE(F.mul(a, F.inv(a)) == F.one());
        REQUIRE(F.pow(a, n - 1) == F.one());
      }
      REQUIRE(F.pow(a, n) == a);
      REQUIRE(F.frob(a, e) == a);
      for (Fq::elem b = 0; b < (Fq::elem)n; ++b) {
        REQUIRE(F.add(a, b) == F.add(b, a));
        REQUIRE(F.mul(a, b) == F.mul(b, a));
        // Frobenius is additive
        REQUIRE(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
        for (Fq::elem c = 0; c < (Fq::elem)n; c += (Fq::elem)stride) {
          REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
          REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field embeddings are ring homomorphisms") {
  Fq small(2, 2), big(2, 4);
  for (Fq::elem a = 0; a < 4; ++a) {
    for (Fq::elem b = 0; b < 4; ++b) {
      REQUIRE(small.embed_into(big, small.add(a, b)) ==
              big.add(small.embed_into(big, a), small.embed_into(big, b)));
      REQUIRE(small.embed_into(big, small.mul(a, b)) ==
              big.mul(small.embed_into(big, a), small.embed_into(big, b)));
    }
  }
  REQUIRE(small.embed_into(big, small.one()) == big.one());
  // images of distinct elements stay distinct
  std::set<Fq::elem> seen;
  for (Fq::elem a = 0; a < 4; ++a) seen.insert(small.embed_into(big, a));
  REQUIRE(seen.size() == 4);
}

TEST_CASE("binomials mod p agree with the Pascal recursion") {
  for (int p : {2, 3, 5}) {
    std::vector<std::vector<int>> pas(61, std::vector<int>(61, 0));
    for (int n = 0; n <= 60; ++n) {
      pas[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        pas[n][k] = (pas[n - 1][k - 1] + pas[n - 1][k]) % p;
      for (int k = 0; k <= 60; ++k) {
        CAPTURE(p, n, k);
        REQUIRE(binom_mod_p(n, k, p) == pas[n][k]);
      }
    }
  }
}

TEST_CASE("rationals normalize and order correctly") {
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(-2, -4) == Rational(1, 2));
  REQUIRE(Rational(2, -4) == Rational(-1, 2));
  REQUIRE(Rational(0, 7) == Rational(0));
  REQUIRE(Rational(1, 2).den() == 2);
  REQUIRE(Rational(-1, 2).num() == -1);
  REQUIRE(Rational(-1, 2).den() == 2);
  REQUIRE(Rational(3, 1).is_integer());
  REQUIRE(!Rational(1, 3).is_integer());
  REQUIRE(Rational(5, 3).str() == "5/3");
  REQUIRE(Rational(-4, 2).str() == "-2");

  std::mt19937_64 rng(7);
  auto rnd = [&] {
    i64 num = (i64)(rng() % 41) - 20;
    i64 den = (i64)(rng() % 9) + 1;
    return Rational(num, den);
  };
  for (int t = 0; t < 500; ++t) {
    Rational a = rnd(), b = rnd(), c = rnd();
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a - a == Rational(0));
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
    // trichotomy
    int rel = (a < b) + (a == b) + (b < a);
    REQUIRE(rel == 1);
    if (a < b) REQUIRE(a + c < b + c);
  }
}

TEST_CASE("rref is idempotent and preserves the row space") {
  Fq F(5, 1);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int rows = 1 + (int)(rng() % 5), cols = 1 + (int)(rng() % 5);
    FqMatrix m(rows, cols);
    for (auto& x : m.a) x = (Fq::elem)(rng() % 5);
    Subspace s1(F, m);
    FqMatrix reduced = s1.basis();
    Subspace s2(F, reduced);
    REQUIRE(s1 == s2);
    // every original row lies in the reduced span
    for (int r = 0; r < rows; ++r) {
      std::vector<Fq::elem> v(m.a.begin() + (size_t)r * cols,
                              m.a.begin() + (size_t)(r + 1) * cols);
      REQUIRE(s1.contains(F, v));
    }
  }
}

TEST_CASE("kernels and inverses against direct checks") {
  Fq F(3, 1);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    int rows = 1 + (int)(rng() % 4), cols = 1 + (int)(rng() % 4);
    FqMatrix m(rows, cols);
    for (auto& x : m.a) x = (Fq::elem)(rng() % 3);
    FqMatrix ker = mat_kernel(F, m);
    REQUIRE(ker.rows + mat_rank(F, m) == cols);
    for (int r = 0; r < ker.rows; ++r) {
      std::vector<Fq::elem> v(ker.a.begin() + (size_t)r * cols,
                              ker.a.begin() + (size_t)(r + 1) * cols);
      for (auto x : mat_apply(F, m, v)) REQUIRE(F.is_zero(x));
    }
    // exhaustive membership in F_3^cols for small cols
    if (cols <= 4) {
      Subspace ks = Subspace::kernel_of(F, m);
      i64 total = 1;
      for (int i = 0; i < cols; ++i) total *= 3;
      int count = 0;
      for (i64 code = 0; code < total; ++code) {
        std::vector<Fq::elem> v(cols);
        i64 rem = code;
        for (int i = 0; i < cols; ++i) { v[i] = (Fq::elem)(rem % 3); rem /= 3; }
        bool in_ker = true;
        for (auto x : mat_apply(F, m, v))
          if (!F.is_zero(x)) { in_ker = false; break; }
        REQUIRE(ks.contains(F, v) == in_ker);
        if (in_ker) ++count;
      }
      i64 expect = 1;
      for (int i = 0; i < ks.dim(); ++i) expect *= 3;
      REQUIRE(count == expect);
    }
  }
  for (int t = 0; t < 100; ++t) {
    int n = 1 + (int)(rng() % 4);
    FqMatrix m(n, n);
    do {
      for (auto& x : m.a) x = (Fq::elem)(rng() % 3);
    } while (mat_rank(F, m) < n);
    REQUIRE(mat_mul(F, m, mat_inverse(F, m)) == FqMatrix::identity(n));
  }
  FqMatrix sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(1, 0) = 2;
  REQUIRE_THROWS_AS(mat_inverse(F, sing), std::domain_error);
}

TEST_CASE("subspace lattice identities") {
  Fq F(5, 1);
  std::mt19937_64 rng(17);
  auto rnd_space = [&](int ambient) {
    int rows = (int)(rng() % (ambient + 1));
    FqMatrix m(rows, ambient);
    for (auto& x : m.a) x = (Fq::elem)(rng() % 5);
    return Subspace(F, m);
  };
  for (int t = 0; t < 300; ++t) {
    int ambient = 1 + (int)(rng() % 5);
    Subspace a = rnd_space(ambient), b = rnd_space(ambient);
    Subspace cap = a.intersect(F, b);
    Subspace cup = a.sum(F, b);
    REQUIRE(a.contains(F, cap));
    REQUIRE(b.contains(F, cap));
    REQUIRE(cup.contains(F, a));
    REQUIRE(cup.contains(F, b));
    REQUIRE(cap.dim() + cup.dim() == a.dim() + b.dim());
    REQUIRE(a.contains(F, a));
    REQUIRE(a.intersect(F, a) == a);
    REQUIRE(a.sum(F, a) == a);
    REQUIRE(a.intersect(F, Subspace::full(F, ambient)) == a);
    REQUIRE(a.sum(F, Subspace::zero(F, ambient)) == a);
  }
  // equal spaces presented differently compare equal
  FqMatrix m1(2, 3), m2(2, 3);
  m1.at(0, 0) = 1; m1.at(0, 2) = 2;
  m1.at(1, 1) = 1; m1.at(1, 2) = 3;
  // m2 rows: 2*r1 + 3*r2 and 4*r2, reduced mod 5
  m2.at(0, 0) = 2; m2.at(0, 1) = 3; m2.at(0, 2) = 3;
  m2.at(1, 1) = 4; m2.at(1, 2) = 2;
  REQUIRE(Subspace(F, m1) == Subspace(F, m2));
}

TEST_CASE("integer lattices: canonical HNF, membership, coset keys") {
  // canonical basis independent of the generating set
  IntLattice l1(3, {{2, 0, 0}, {0, 3, 0}, {1, 1, 1}});
  // same lattice from recombined generators: g3, g1+g3, g2+g3, g1+g2+2g3
  IntLattice l2(3, {{1, 1, 1}, {3, 1, 1}, {1, 4, 1}, {4, 5, 2}});
  REQUIRE(l1 == l2);
  REQUIRE(l1.rank() == 3);
  REQUIRE(l1.contains(IVec{2, 0, 0}));
  REQUIRE(l1.contains(IVec{3, 4, 1}));
  REQUIRE(!l1.contains(IVec{1, 0, 0}));

  IntLattice z = IntLattice::zero(2);
  REQUIRE(z.rank() == 0);
  REQUIRE(z.contains(IVec{0, 0}));
  REQUIRE(!z.contains(IVec{1, 0}));
  REQUIRE(z.coset_key(IVec{4, -5}) == IVec{4, -5});

  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    IMat gens(2 + rng() % 2, IVec(3));
    for (auto& g : gens)
      for (auto& x : g) x = (i64)(rng() % 9) - 4;
    IntLattice l(3, gens);
    // generators are members; keys are translation invariant
    for (const auto& g : gens) REQUIRE(l.contains(g));
    IVec v{(i64)(rng() % 7) - 3, (i64)(rng() % 7) - 3, (i64)(rng() % 7) - 3};
    for (const auto& g : gens)
      REQUIRE(l.coset_key(ivec_add(v, g)) == l.coset_key(v));
    IVec key = l.coset_key(v);
    REQUIRE(l.coset_key(key) == key);
    REQUIRE(l.contains(ivec_sub(v, key)));
  }
}

TEST_CASE("integer kernel: exact annihilator") {
  IMat m{{2, 4, 6}, {1, 2, 3}};
  IMat ker = integer_kernel(m);
  REQUIRE(ker.size() == 2);
  for (const auto& k : ker) REQUIRE(ivec_is_zero(imat_apply(m, k)));
  // the kernel is saturated: x = (2,-1,0) and (3,0,-1) must be reachable
  IntLattice kl(3, ker);
  REQUIRE(kl.contains(IVec{2, -1, 0}));
  REQUIRE(kl.contains(IVec{3, 0, -1}));
  REQUIRE(!kl.contains(IVec{1, 0, 0}));

  IMat full = integer_kernel(IMat{{1, 0}, {0, 1}});
  REQUIRE(full.empty());
  IMat none = integer_kernel(IMat{{0, 0}});
  REQUIRE(IntLattice(2, none).rank() == 2);
}

TEST_CASE("hnf rows give staircase bases with positive pivots") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    IMat m(3, IVec(4));
    for (auto& r : m)
      for (auto& x : r) x = (i64)(rng() % 11) - 5;
    IMat h = hnf_rows(m);
    int prev = -1;
    for (const auto& r : h) {
      int lead = 0;
      while (lead < 4 && r[lead] == 0) ++lead;
      REQUIRE(lead < 4);
      REQUIRE(lead > prev);
      REQUIRE(r[lead] > 0);
      prev = lead;
    }
    // entries above a pivot are reduced into [0, pivot)
    for (size_t i = 0; i < h.size(); ++i) {
      int lead = 0;
      while (h[i][lead] == 0) ++lead;
      for (size_t j = 0; j < i; ++j) {
        REQUIRE(h[j][lead] >= 0);
        REQUIRE(h[j][lead] < h[i][lead]);
      }
    }
  }
}
