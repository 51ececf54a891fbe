#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "zipsections/acceptance.hpp"
#include "zipsections/catalog.hpp"

using namespace zipsections;
using acceptance_detail::random_sl2_b_rep;

TEST_CASE("symmetric powers: closed form equals the pipeline") {
  for (i64 q : {2, 3}) {
    CAPTURE(q);
    CatalogEntry ce = catalog_entry("sl2", q);
    for (int n = 0; n <= 14; ++n) {
      CAPTURE(n);
      PRep v = sl2_sym_std(ce.field, n);
      SectionSpace s = h0(v, ce.zd, ce.lphi);
      std::vector<int> expect;
      for (i64 j : sl2_h0_closed_form(q, n)) expect.push_back((int)(n - j));
      std::sort(expect.begin(), expect.end());
      REQUIRE(section_indices_multfree(v, s) == expect);
    }
  }
}

TEST_CASE("u21: closed form equals the pipeline on a grid") {
  CatalogEntry ce = catalog_entry("u21", 2);
  for (i64 l1 = 0; l1 <= 3; ++l1)
    for (i64 l2 = -2; l2 <= l1; ++l2)
      for (i64 l3 = -2; l3 <= 2; ++l3) {
        CAPTURE(l1, l2, l3);
        PRep v = u21_vI(ce.field, l1, l2, l3);
        SectionSpace s = h0(v, ce.zd, ce.lphi);
        auto is = u21_h0_closed_form(2, l1, l2, l3);
        REQUIRE(s.dim() == (int)is.size());
        for (i64 i : is) {
          IVec nu{l1 - i, l2 + i, l3};
          REQUIRE(s.weight_dims.at(nu) == 1);
        }
      }
  // the worked case: lambda = (3,1,2) has a one-dimensional section space
  REQUIRE(u21_h0_closed_form(2, 3, 1, 2) == std::vector<i64>{2});
  PRep v = u21_vI(ce.field, 3, 1, 2);
  SectionSpace s = h0(v, ce.zd, ce.lphi);
  REQUIRE(s.dim() == 1);
  REQUIRE(s.weight_dims.at(IVec{1, 3, 2}) == 1);
}

TEST_CASE("property (P) on the classical families") {
  for (i64 q : {2, 3}) {
    auto F = catalog_entry("sl2", q).field;
    for (int n = 0; n <= 25; ++n) {
      PropertyPReport pp = property_P(sl2_sym_std(F, n));
      CAPTURE(q, n);
      REQUIRE(pp.crit_iii);
      REQUIRE(pp.crit_i);
    }
    PRep std1 = sl2_sym_std(F, 1);
    PropertyPReport tp = property_P(tensor(std1, std1));
    REQUIRE_FALSE(tp.crit_iii);
    REQUIRE_FALSE(tp.crit_i);
    REQUIRE(property_P(trivial_rep(F, 1)).holds());
  }
  auto F3 = catalog_entry("u21", 3).field;
  REQUIRE_THROWS_AS(property_P(u21_vI(F3, 1, 0, 0)), std::invalid_argument);
}

TEST_CASE("property (P): the two criteria agree on random B-representations") {
  std::mt19937_64 rng(55001);
  int held = 0, failed = 0;
  for (i64 q : {2, 3, 5}) {
    auto F = catalog_entry("sl2", q).field;
    for (int t = 0; t < 40; ++t) {
      PRep v = random_sl2_b_rep(F, rng, 11);
      PropertyPReport pp = property_P(v);
      CAPTURE(q, t, v.dim());
      REQUIRE(pp.crit_i == pp.crit_iii);
      (pp.holds() ? held : failed)++;
    }
  }
  // the sample must exercise both outcomes
  REQUIRE(held > 0);
  REQUIRE(failed > 0);
}

TEST_CASE("under property (P) the sections are the full low-weight blocks") {
  std::mt19937_64 rng(55002);
  int exercised = 0;
  for (i64 q : {2, 3}) {
    CatalogEntry ce = catalog_entry("sl2", q);
    for (int t = 0; t < 40; ++t) {
      PRep v = random_sl2_b_rep(ce.field, rng, 11);
      if (!property_P(v).holds()) continue;
      ++exercised;
      i64 m = 0;
      for (const auto& w : v.weights) m = std::min(m, w[0]);
      std::vector<int> idx;
      for (int i = 0; i < v.dim(); ++i) {
        i64 w = v.weights[i][0];
        if (w <= 0 && imod(w, q - 1) == 0 && (q + 1) * w <= (q - 1) * m)
          idx.push_back(i);
      }
      SectionSpace s = h0(v, ce.zd, ce.lphi);
      REQUIRE(s.space == block_span(*ce.field, idx, v.dim()));
    }
  }
  REQUIRE(exercised >= 5);
}

TEST_CASE("the section ring is generated in degrees q-1 and q+1") {
  for (i64 q : {2, 3}) {
    RDeltaReport r = r_delta_generators_check(q, 12);
    CAPTURE(q);
    REQUIRE(r.all_factor);
    REQUIRE(r.degree_q_minus_1);
    REQUIRE(r.degree_q_plus_1);
    REQUIRE(r.degrees_checked == 13);
  }
}

TEST_CASE("u21 ample cone: membership equals witness existence") {
  for (i64 q : {2, 3}) {
    CAPTURE(q);
    i64 B = 2 * q;
    for (i64 l1 = -B; l1 <= B; ++l1)
      for (i64 l2 = -B; l2 <= B; ++l2)
        for (i64 l3 = -B; l3 <= B; ++l3) {
          ConeReport r = u21_cone(q, l1, l2, l3);
          CAPTURE(l1, l2, l3);
          REQUIRE(r.closed_form_member == r.witness_n.has_value());
          if (r.witness_n) {
            REQUIRE(*r.witness_n >= 1);
            REQUIRE(*r.witness_n <= q * (q * q - 1));
            REQUIRE(r.witness_i.has_value());
            auto s = u21_h0_closed_form(q, *r.witness_n * l1,
                                        *r.witness_n * l2, *r.witness_n * l3);
            REQUIRE(!s.empty());
            REQUIRE(s.front() == *r.witness_i);
          }
        }
    // boundary ray: lambda = (1,1,1) lies in the cone for every q
    REQUIRE(u21_cone(q, 1, 1, 1).closed_form_member);
    REQUIRE(u21_cone(q, 1, 0, 0).closed_form_member == false);
  }
}

TEST_CASE("prime power factorization") {
  REQUIRE(factor_prime_power(2) == std::pair<int, int>{2, 1});
  REQUIRE(factor_prime_power(4) == std::pair<int, int>{2, 2});
  REQUIRE(factor_prime_power(8) == std::pair<int, int>{2, 3});
  REQUIRE(factor_prime_power(9) == std::pair<int, int>{3, 2});
  REQUIRE(factor_prime_power(5) == std::pair<int, int>{5, 1});
  REQUIRE_THROWS_AS(factor_prime_power(6), std::invalid_argument);
  REQUIRE_THROWS_AS(factor_prime_power(1), std::invalid_argument);
  REQUIRE_THROWS_AS(factor_prime_power(12), std::invalid_argument);
}

TEST_CASE("group-theoretic identity checks pass on random samples") {
  IdentityReport hasse = hasse_invariant_check(2, 50);
  REQUIRE(hasse.ok);
  REQUIRE(hasse.samples == 50);
  IdentityReport hasse3 = hasse_invariant_check(3, 25);
  REQUIRE(hasse3.ok);
  IdentityReport theta = theta_sp2n_check(2, 2, 25);
  REQUIRE(theta.ok);
  REQUIRE(theta.samples == 25);
  IdentityReport theta3 = theta_sp2n_check(3, 3, 10);
  REQUIRE(theta3.ok);
}

TEST_CASE("multiplicity-free extraction rejects repeated weights") {
  CatalogEntry ce = catalog_entry("sl2", 2);
  PRep std1 = sl2_sym_std(ce.field, 1);
  PRep v = tensor(std1, std1);
  SectionSpace s = h0(v, ce.zd, ce.lphi);
  REQUIRE(s.dim() > 0);
  REQUIRE_THROWS_AS(section_indices_multfree(v, s), std::domain_error);
}
