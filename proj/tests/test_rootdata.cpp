#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "zipsections/catalog.hpp"
#include "zipsections/root_datum.hpp"

using namespace zipsections;

namespace {

struct NamedDatum {
  std::string name;
  RootDatum rd;
};

std::vector<NamedDatum> catalog_data(i64 q) {
  return {{"sl2", sl2_root_datum(q)},
          {"u21", u21_root_datum(q)},
          {"res_sl2", res_sl2_root_datum(q)},
          {"sp4", sp2n_root_datum(2, q)}};
}

}  // namespace

TEST_CASE("Weyl group sizes, longest elements, Poincare symmetry") {
  std::map<std::string, std::pair<size_t, int>> expect = {
      {"sl2", {2, 1}}, {"u21", {6, 3}}, {"res_sl2", {4, 2}}, {"sp4", {8, 4}}};
  for (const auto& [name, rd] : catalog_data(2)) {
    CAPTURE(name);
    auto W = rd.weyl_group();
    REQUIRE(W.size() == expect[name].first);
    WeylElt w0 = rd.longest_element(rd.all_simple_indices());
    REQUIRE(w0.length() == expect[name].second);
    REQUIRE(imat_mul(w0.m, w0.m) == imat_identity(rd.rank()));
    // length is palindromic over the group
    std::vector<int> by_len(w0.length() + 1, 0);
    for (const auto& w : W) {
      REQUIRE(w.length() <= w0.length());
      by_len[w.length()]++;
    }
    for (int l = 0; l <= w0.length(); ++l)
      REQUIRE(by_len[l] == by_len[w0.length() - l]);
    // w0 sends the positive roots to negative ones
    for (const auto& a : rd.positive_roots())
      REQUIRE(!rd.is_positive_root(imat_apply(w0.m, a)));
  }
}

TEST_CASE("positive root counts and reflection involutions") {
  std::map<std::string, size_t> pos = {
      {"sl2", 1}, {"u21", 3}, {"res_sl2", 2}, {"sp4", 4}};
  for (const auto& [name, rd] : catalog_data(3)) {
    CAPTURE(name);
    REQUIRE(rd.positive_roots().size() == pos[name]);
    REQUIRE(rd.all_roots().size() == 2 * pos[name]);
    for (const auto& a : rd.all_roots()) {
      REQUIRE(rd.is_root(a));
      REQUIRE(rd.is_positive_root(a) != rd.is_positive_root(ivec_neg(a)));
    }
    for (int i = 0; i < rd.num_simple(); ++i) {
      IMat s = rd.reflection_matrix(i);
      REQUIRE(imat_mul(s, s) == imat_identity(rd.rank()));
      REQUIRE(imat_apply(s, rd.simple_root(i)) == ivec_neg(rd.simple_root(i)));
      // s_i permutes the positive roots other than alpha_i
      for (const auto& a : rd.positive_roots())
        if (a != rd.simple_root(i))
          REQUIRE(rd.is_positive_root(imat_apply(s, a)));
      REQUIRE(rd.pairing(rd.simple_root(i), rd.simple_coroot(i)) == 2);
    }
  }
}

TEST_CASE("reduced words round-trip through matrices") {
  for (const auto& [name, rd] : catalog_data(2)) {
    CAPTURE(name);
    for (const auto& w : rd.weyl_group()) {
      REQUIRE(rd.word_to_matrix(w.word) == w.m);
      REQUIRE((int)w.word.size() == rd.length(w.m));
      for (int letter : w.word) {
        REQUIRE(letter >= 0);
        REQUIRE(letter < rd.num_simple());
      }
    }
  }
}

TEST_CASE("sigma permutes the simple roots with the right order") {
  std::map<std::string, int> ord = {
      {"sl2", 1}, {"u21", 2}, {"res_sl2", 2}, {"sp4", 1}};
  for (const auto& [name, rd] : catalog_data(2)) {
    CAPTURE(name);
    REQUIRE(rd.sigma_order() == ord[name]);
    IMat power = imat_identity(rd.rank());
    for (int k = 0; k < rd.sigma_order(); ++k)
      power = imat_mul(rd.sigma_star(), power);
    REQUIRE(power == imat_identity(rd.rank()));
    for (int i = 0; i < rd.num_simple(); ++i) {
      IVec image = rd.sigma_on_root(rd.simple_root(i));
      bool simple = false;
      for (int j = 0; j < rd.num_simple(); ++j)
        if (image == rd.simple_root(j)) simple = true;
      REQUIRE(simple);
    }
  }
  // the restriction-of-scalars datum swaps its two factors
  RootDatum res = res_sl2_root_datum(2);
  REQUIRE(res.sigma_on_root(res.simple_root(0)) == res.simple_root(1));
  REQUIRE(res.sigma_on_root(res.simple_root(1)) == res.simple_root(0));
}

TEST_CASE("minimal coset representatives tile the Weyl group") {
  for (const auto& [name, rd] : catalog_data(2)) {
    CAPTURE(name);
    // every subset K of the simple indices
    int n = rd.num_simple();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> K;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) K.push_back(i);
      auto reps = rd.min_coset_reps(K);
      auto sub = rd.subgroup_matrices(K);
      auto W = rd.weyl_group();
      REQUIRE(reps.size() * sub.size() == W.size());
      std::set<IMat> covered;
      for (const auto& u : sub)
        for (const auto& w : reps) {
          covered.insert(imat_mul(u, w.m));
          // minimal reps split lengths additively
          REQUIRE(rd.length(imat_mul(u, w.m)) == rd.length(u) + w.length());
        }
      REQUIRE(covered.size() == W.size());
    }
  }
}

TEST_CASE("Bruhat order is a partial order bounded by the longest element") {
  for (const auto& [name, rd] : catalog_data(2)) {
    CAPTURE(name);
    auto W = rd.weyl_group();
    WeylElt w0 = rd.longest_element(rd.all_simple_indices());
    IMat id = imat_identity(rd.rank());
    for (const auto& w : W) {
      REQUIRE(rd.bruhat_leq(id, w));
      REQUIRE(rd.bruhat_leq(w.m, w0));
      REQUIRE(rd.bruhat_leq(w.m, w));
    }
    for (const auto& x : W)
      for (const auto& w : W) {
        bool xw = rd.bruhat_leq(x.m, w);
        if (xw && x.length() == w.length()) REQUIRE(x.m == w.m);
        if (xw) REQUIRE(x.length() <= w.length());
        bool wx = rd.bruhat_leq(w.m, x);
        if (xw && wx) REQUIRE(x.m == w.m);
        for (const auto& y : W)
          if (xw && rd.bruhat_leq(w.m, y)) REQUIRE(rd.bruhat_leq(x.m, y));
      }
    // covers: simple reflections are exactly the length-one elements above id
    int simples = 0;
    for (const auto& w : W)
      if (w.length() == 1) ++simples;
    REQUIRE(simples == rd.num_simple());
  }
}

TEST_CASE("malformed root data are rejected") {
  // pairing of a simple root with its own coroot must be 2
  REQUIRE_THROWS_AS(RootDatum(1, {{1}}, {{1}}, imat_identity(1), 2),
                    std::invalid_argument);
  // sigma must permute the simple roots; this unimodular map sends
  // alpha_0 to -alpha_1
  IMat bad_sigma{{0, -1}, {-1, 0}};
  RootDatum good = res_sl2_root_datum(2);
  IMat sr, sc;
  for (int i = 0; i < good.num_simple(); ++i) {
    sr.push_back(good.simple_root(i));
    sc.push_back(good.simple_coroot(i));
  }
  REQUIRE_THROWS_AS(RootDatum(2, sr, sc, bad_sigma, 2),
                    std::invalid_argument);
}
