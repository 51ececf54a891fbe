#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>
#include <vector>

#include "zipsections/acceptance.hpp"
#include "zipsections/catalog.hpp"
#include "zipsections/lphi.hpp"
#include "zipsections/prep.hpp"

using namespace zipsections;
using acceptance_detail::random_sl2_b_rep;
using acceptance_detail::restrict_indices;

namespace {

std::shared_ptr<const Fq> field(i64 q) {
  i64 p = q, k = 1;
  for (i64 d = 2; d * d <= p; ++d)
    while (p % d == 0 && p > d) { p /= d; ++k; }
  return std::make_shared<const Fq>((int)p, (int)k);
}

}  // namespace

TEST_CASE("every constructor produces a structurally valid rep") {
  for (i64 q : {2, 3}) {
    CAPTURE(q);
    auto F = field(q);
    for (int n = 0; n <= 6; ++n)
      REQUIRE_NOTHROW(sl2_sym_std(F, n).validate());
    PRep s2 = sl2_sym_std(F, 2), s3 = sl2_sym_std(F, 3);
    REQUIRE_NOTHROW(tensor(s2, s3).validate());
    REQUIRE_NOTHROW(dual(s3).validate());
    REQUIRE_NOTHROW(direct_sum(s2, dual(s2)).validate());
    REQUIRE_NOTHROW(frobenius_twist(s3, q).validate());
    REQUIRE_NOTHROW(boxtimes(s2, s3).validate());
    REQUIRE_NOTHROW(char_rep(F, IVec{3, -1}).validate());
    REQUIRE_NOTHROW(sym_pair(F, IVec{1, 0}, IVec{0, 1}, 4).validate());
    REQUIRE_NOTHROW(res_sl2_example_rep(F, q).validate());
  }
  auto F2 = field(2);
  for (i64 l1 = -2; l1 <= 2; ++l1)
    for (i64 l2 = -2; l2 <= l1; ++l2) {
      REQUIRE_NOTHROW(u21_vI(F2, l1, l2, 1).validate());
      REQUIRE_NOTHROW(sp4_vI(F2, l1, l2).validate());
    }
}

TEST_CASE("ranks and weights follow the functorial rules") {
  auto F = field(3);
  PRep a = sl2_sym_std(F, 2), b = sl2_sym_std(F, 3);

  PRep t = tensor(a, b);
  REQUIRE(t.dim() == a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      REQUIRE(t.weights[i * b.dim() + j] ==
              ivec_add(a.weights[i], b.weights[j]));

  PRep d = dual(b);
  REQUIRE(d.dim() == b.dim());
  for (int i = 0; i < b.dim(); ++i)
    REQUIRE(d.weights[i] == ivec_neg(b.weights[i]));
  // double dual is the identity on the nose
  PRep dd = dual(d);
  REQUIRE(dd.weights == b.weights);
  REQUIRE(dd.ops == b.ops);

  PRep s = direct_sum(a, b);
  REQUIRE(s.dim() == a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i) REQUIRE(s.weights[i] == a.weights[i]);
  for (int j = 0; j < b.dim(); ++j)
    REQUIRE(s.weights[a.dim() + j] == b.weights[j]);

  PRep tw = frobenius_twist(b, 3);
  REQUIRE(tw.dim() == b.dim());
  for (int i = 0; i < b.dim(); ++i)
    REQUIRE(tw.weights[i] == ivec_scale(3, b.weights[i]));
  REQUIRE(tw.max_level(IVec{-2}) == 3 * b.max_level(IVec{-2}));

  PRep bx = boxtimes(a, b);
  REQUIRE(bx.rank == a.rank + b.rank);
  REQUIRE(bx.dim() == a.dim() * b.dim());
  REQUIRE(bx.weights[0 * b.dim() + 1] == IVec{2, 1});

  REQUIRE_THROWS_AS(tensor(a, char_rep(F, IVec{0, 0})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(tensor(a, sl2_sym_std(field(3), 2)),
                    std::invalid_argument);
}

TEST_CASE("unipotent group elements respect the functors") {
  for (i64 q : {2, 3, 4}) {
    CAPTURE(q);
    auto F = field(q);
    PRep a = sl2_sym_std(F, 3), b = sl2_sym_std(F, 2);
    IVec down{-2};
    for (Fq::elem c = 0; c < (Fq::elem)F->order(); ++c) {
      FqMatrix ua = unipotent_matrix(a, down, c);
      FqMatrix ub = unipotent_matrix(b, down, c);
      // tensor acts diagonally
      REQUIRE(unipotent_matrix(tensor(a, b), down, c) ==
              mat_kron(*F, ua, ub));
      // dual acts by inverse transpose, and u(c)^{-1} = u(-c)
      REQUIRE(unipotent_matrix(dual(a), down, c) ==
              mat_transpose(unipotent_matrix(a, down, F->neg(c))));
      REQUIRE(mat_mul(*F, ua, unipotent_matrix(a, down, F->neg(c))) ==
              FqMatrix::identity(a.dim()));
      // twist acts through the Frobenius of the scalar
      REQUIRE(unipotent_matrix(frobenius_twist(a, q), down, c) ==
              unipotent_matrix(a, down, F->pow(c, q)));
      // direct sums act blockwise
      FqMatrix us = unipotent_matrix(direct_sum(a, b), down, c);
      for (int r = 0; r < a.dim(); ++r)
        for (int col = 0; col < a.dim(); ++col)
          REQUIRE(us.at(r, col) == ua.at(r, col));
      for (int r = 0; r < b.dim(); ++r)
        for (int col = 0; col < b.dim(); ++col)
          REQUIRE(us.at(a.dim() + r, a.dim() + col) == ub.at(r, col));
      // one-parameter subgroup: u(c) u(c') = u(c + c')
      for (Fq::elem c2 = 0; c2 < (Fq::elem)F->order(); ++c2)
        REQUIRE(mat_mul(*F, ua, unipotent_matrix(a, down, c2)) ==
                unipotent_matrix(a, down, F->add(c, c2)));
    }
  }
}

TEST_CASE("validate rejects corrupted data") {
  auto F = field(2);
  PRep v = sl2_sym_std(F, 3);

  PRep bad_weight = v;
  bad_weight.weights[1] = IVec{5};
  REQUIRE_THROWS_WITH(bad_weight.validate(),
                      Catch::Matchers::ContainsSubstring("grading"));

  PRep bad_op = v;
  // breaking one entry of E^{(1)} violates E^{(1)}E^{(1)} = C(2,1) E^{(2)}
  bad_op.ops[IVec{-2}][1].at(1, 0) = F->zero();
  REQUIRE_THROWS_WITH(bad_op.validate(),
                      Catch::Matchers::ContainsSubstring("divided-power"));

  PRep bad_level = v;
  bad_level.ops[IVec{2}][0] = FqMatrix::identity(4);
  REQUIRE_THROWS_WITH(bad_level.validate(),
                      Catch::Matchers::ContainsSubstring("level"));

  PRep bad_shape = v;
  bad_shape.ops[IVec{2}][1] = FqMatrix(2, 2);
  REQUIRE_THROWS_WITH(bad_shape.validate(),
                      Catch::Matchers::ContainsSubstring("shape"));

  PRep zero_root = v;
  zero_root.ops[IVec{0}][1] = FqMatrix(4, 4);
  REQUIRE_THROWS_WITH(zero_root.validate(),
                      Catch::Matchers::ContainsSubstring("zero"));
}

TEST_CASE("weight blocks and operator blocks slice consistently") {
  auto F = field(3);
  PRep v = sl2_sym_std(F, 4);
  auto blocks = v.weight_blocks();
  REQUIRE(blocks.size() == 5);
  for (int i = 0; i <= 4; ++i) {
    IVec w{4 - 2 * i};
    REQUIRE(blocks.at(w) == std::vector<int>{i});
  }
  // E^{(1)}_{-a} maps the weight-4 line to the weight-2 line by coefficient
  // C(4,1) = 1 mod 3
  FqMatrix blk = v.block(IVec{-2}, 1, {0}, {1});
  REQUIRE(blk.rows == 1);
  REQUIRE(blk.at(0, 0) == F->from_int(4));
  // level-0 block is the indicator of shared indices
  FqMatrix id_blk = v.block(IVec{2}, 0, {1, 2}, {2, 3});
  REQUIRE(id_blk.at(0, 0) == F->zero());
  REQUIRE(id_blk.at(0, 1) == F->one());
  REQUIRE(id_blk.at(1, 0) == F->zero());
  REQUIRE(id_blk.at(1, 1) == F->zero());

  // tensor weight blocks refine the factor blocks
  PRep t = tensor(v, dual(v));
  int zero_count = 0;
  for (const auto& w : t.weights)
    if (ivec_is_zero(w)) ++zero_count;
  REQUIRE(zero_count == 5);
  REQUIRE(t.weight_blocks().at(IVec{0}).size() == 5);
}

TEST_CASE("restricting to an operator-closed index subset") {
  auto F = field(2);
  PRep v = sl2_sym_std(F, 3);
  // the tail {1,2,3} is closed under the lowering operators only; raising
  // operators leave it, so restriction must reject it
  REQUIRE_THROWS_AS(restrict_indices(v, {1, 2, 3}), std::logic_error);
  PRep low = v;
  low.ops.erase(IVec{2});
  PRep tail = restrict_indices(low, {1, 2, 3});
  REQUIRE(tail.dim() == 3);
  REQUIRE_NOTHROW(tail.validate());
  REQUIRE(tail.weights == std::vector<IVec>{{1}, {-1}, {-3}});
  // whole-space restriction is the identity
  PRep all = restrict_indices(v, {0, 1, 2, 3});
  REQUIRE(all.weights == v.weights);
  REQUIRE(all.ops == v.ops);
}

TEST_CASE("semisimplification drops exactly the unipotent directions") {
  auto F = field(2);
  ZipDatum zd = catalog_entry("res_sl2", 2).zd;
  PRep v = res_sl2_example_rep(F, 2);
  REQUIRE_FALSE(trivial_on_ru_p(v, zd));
  PRep ss = l_semisimplify(v, zd);
  REQUIRE(trivial_on_ru_p(ss, zd));
  REQUIRE(ss.dim() == v.dim());
  REQUIRE(ss.weights == v.weights);
  // -alpha_0 = (-2,0) spans R_u(P); the Levi root (0,-2) acts at level 2
  // because the second factor is Frobenius twisted
  REQUIRE(v.has_op(IVec{-2, 0}, 1));
  REQUIRE_FALSE(ss.has_op(IVec{-2, 0}, 1));
  REQUIRE(v.has_op(IVec{0, -2}, 2));
  REQUIRE(ss.has_op(IVec{0, -2}, 2));
  // positive roots are never in R_u(P), so raising operators stay
  REQUIRE(ss.has_op(IVec{2, 0}, 1));
  REQUIRE_NOTHROW(ss.validate());
  // for a B-representation over the rank-one datum everything drops
  ZipDatum sl2 = catalog_entry("sl2", 2).zd;
  PRep brep = sl2_sym_std(F, 3);
  brep.ops.erase(IVec{2});
  REQUIRE(l_semisimplify(brep, sl2).ops.empty());
}

TEST_CASE("random B-representations are valid and field-consistent") {
  std::mt19937_64 rng(991);
  for (i64 q : {2, 3, 5}) {
    auto F = field(q);
    for (int t = 0; t < 25; ++t) {
      PRep v = random_sl2_b_rep(F, rng, 10);
      REQUIRE(v.dim() >= 1);
      REQUIRE(v.dim() <= 10);
      REQUIRE_NOTHROW(v.validate());
      // no raising operators: weights only decrease under the stored ops
      for (const auto& [root, levels] : v.ops) REQUIRE(root == IVec{-2});
    }
  }
}
