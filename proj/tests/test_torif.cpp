#include <doctest.h>

#include <random>

#include "f1kit/genseries.hpp"
#include "f1kit/torif.hpp"
#include "oracles.hpp"

using namespace f1kit;

namespace {

TorifExpr pt() { return TorifExpr::torus(0); }
TorifExpr gm(int d = 1) { return TorifExpr::torus(d); }

}  // namespace

TEST_CASE("evaluation") {
  CHECK(eval_class(pt()) == MotClass(1));
  CHECK(eval_class(TorifExpr::complement(gm(), pt())) == MotClass::T() - MotClass(1));
  const auto p1 = TorifExpr::disjoint_union({pt(), pt(), gm()});
  const MotClass t2 = MotClass::T() + MotClass(2);
  CHECK(eval_class(TorifExpr::product({p1, p1})) == t2 * t2);
  CHECK(eval_class(TorifExpr::product({})) == MotClass(1));
  CHECK(eval_class(TorifExpr::disjoint_union({})).is_zero());
  CHECK_THROWS_AS(TorifExpr::torus(-1), std::invalid_argument);
}

TEST_CASE("additivity and multiplicativity on random expressions") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_expr(rng, 3);
    const auto b = oracle::random_expr(rng, 3);
    REQUIRE(validate(a).ok);
    REQUIRE(validate(b).ok);
    CHECK(eval_class(TorifExpr::disjoint_union({a, b})) == eval_class(a) + eval_class(b));
    CHECK(eval_class(TorifExpr::product({a, b})) == eval_class(a) * eval_class(b));
    CHECK(TorifExpr::product({a, b}).dimension() == a.dimension() + b.dimension());
  }
}

TEST_CASE("validation") {
  CHECK(validate(TorifExpr::complement(gm(), pt())).ok);
  const auto bad = validate(TorifExpr::complement(gm(), gm()));
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostics.size() == 1);
  CHECK(validate(TorifExpr::complement(TorifExpr::product({gm(), gm()}), gm())).ok);
  CHECK_FALSE(validate(TorifExpr::complement(TorifExpr::disjoint_union({pt(), gm()}), pt(), {0})).ok);
  CHECK(validate(TorifExpr::complement(TorifExpr::disjoint_union({pt(), gm()}), pt(), {1})).ok);
  CHECK_FALSE(validate(TorifExpr::complement(gm(), pt(), {5})).ok);
  CHECK_THROWS_AS(TorifExpr::complement(gm(), pt(), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(eval_class(TorifExpr::complement(gm(), gm())), std::invalid_argument);
  // nested invalid complement is found
  CHECK_FALSE(validate(TorifExpr::product({pt(), TorifExpr::complement(pt(), pt())})).ok);
}

TEST_CASE("atomic pieces") {
  const auto p1 = TorifExpr::disjoint_union({pt(), pt(), gm()});
  const auto sq = TorifExpr::product({p1, p1});
  CHECK(sq.atom_count() == 9);
  CHECK(sq.dim_signature() == std::vector<std::uint64_t>{4, 4, 1});
  CHECK(sq.atom_dim(8) == 2);
  CHECK(sq.atom_dim(2) == 1);
  CHECK(sq.atom_dim(0) == 0);
  CHECK_THROWS_AS(sq.atom_dim(9), std::out_of_range);
  CHECK(TorifExpr::complement(p1, pt()).assignment() == std::vector<std::size_t>{2});
}

TEST_CASE("projective spaces") {
  for (int d = 0; d <= 6; ++d) {
    const auto ct = torify_proj_space(d);
    CHECK(ct.pieces().size() == (std::size_t{1} << (d + 1)) - 1);
    CHECK(ct.total_class() == proj_class(d));
    CHECK(ct.total_class() == ct.recompute_class());
    CHECK(ct.is_f1_constructible());
  }
  const auto p1 = torify_proj_space(1);
  CHECK(p1.pieces()[0].expr == pt());
  CHECK(p1.pieces()[1].expr == pt());
  CHECK(p1.pieces()[2].expr == gm());
  CHECK(torify_proj_space(2).total_class() == MotClass::from_t_coeffs({3, 3, 1}));
}

TEST_CASE("tree curves") {
  CHECK(torify_tree_curve(RootedTree::corolla(2)).total_class() == MotClass::from_t_coeffs({2, 1}));
  for (int n = 2; n <= 5; ++n) {
    for (const auto& t : enumerate_stable_trees(n)) {
      const auto ct = torify_tree_curve(t);
      const auto nv = static_cast<long long>(t.vertex_count());
      CHECK(ct.total_class() == MotClass::from_t_coeffs({nv + 1, nv}));
      CHECK(ct.total_class() == tree_class(t, 1));
    }
  }
  CHECK_THROWS_AS(torify_tree_curve(RootedTree::corolla(1)), std::invalid_argument);
}

TEST_CASE("open strata") {
  const auto ct = constructible_open_stratum(1, 3);
  REQUIRE(ct.pieces().size() == 1);
  CHECK(ct.pieces()[0].expr == TorifExpr::complement(gm(), pt()));
  CHECK(constructible_open_stratum(1, 4).total_class() == MotClass::from_t_coeffs({2, -3, 1}));
  CHECK(constructible_open_stratum(1, 2).total_class() == MotClass(1));
  for (int d = 1; d <= 3; ++d) {
    for (int n = 2; n <= 7; ++n) {
      const auto c = constructible_open_stratum(d, n);
      CHECK(c.total_class() == open_stratum_class(d, n));
      CHECK(validate(c.pieces()[0].expr).ok);
      CHECK(c.is_f1_constructible() == (n == 2));
    }
  }
}

TEST_CASE("complementedness") {
  const auto p1 = torify_proj_space(1);
  CHECK(is_strongly_complemented(p1, {{0, std::nullopt}}));
  CHECK(is_strongly_complemented(p1, {{0, std::nullopt}, {1, std::nullopt}}));
  CHECK_FALSE(is_strongly_complemented(p1, {{2, pt()}}));
  CHECK(is_strongly_complemented(p1, {{2, gm()}}));  // the whole torus
  CHECK_FALSE(is_strongly_complemented(p1, {{0, std::nullopt}, {0, std::nullopt}}));
  CHECK_THROWS_AS(is_strongly_complemented(p1, {{3, std::nullopt}}), std::invalid_argument);
  CHECK_THROWS_AS(is_strongly_complemented(p1, {{0, gm()}}), std::invalid_argument);

  // The diagonal of P^1 x P^1: the two fixed points plus the diagonal of the open torus.
  const auto sq = oracle::product_p1xp1();
  const PieceSelection diagonal{{0, std::nullopt}, {4, std::nullopt}, {8, gm()}};
  CHECK_FALSE(is_strongly_complemented(sq, diagonal));
  CHECK(selection_class(sq, diagonal) == MotClass::T() + MotClass(2));
}

TEST_CASE("blowups") {
  const auto p2 = torify_proj_space(2);
  const auto bl = blowup_decomposition(p2, {{0, std::nullopt}}, 2);
  CHECK(bl.total_class() == MotClass::from_l_coeffs({1, 2, 1}));
  CHECK(bl.pieces().back().label == "E:" + p2.pieces()[0].label);
  CHECK(blowup_decomposition(p2, {{1, std::nullopt}}, 1).total_class() == p2.total_class());
  const auto curve = torify_tree_curve(RootedTree::corolla(3));
  CHECK(blowup_decomposition(curve, {{0, std::nullopt}}, 2).total_class() == curve.total_class() + MotClass::L());
  CHECK_THROWS_AS(blowup_decomposition(p2, {{6, pt()}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(blowup_decomposition(p2, {{0, std::nullopt}}, 0), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Piece> pieces;
    const int k = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int j = 0; j < k; ++j) pieces.push_back({"p" + std::to_string(j), oracle::random_expr(rng, 2)});
    const ConstructibleTorification ct(pieces);
    PieceSelection center;
    for (int j = 0; j < k; ++j) {
      if (rng() % 2) center.push_back({static_cast<std::size_t>(j), std::nullopt});
    }
    const int codim = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto b = blowup_decomposition(ct, center, codim);
    CHECK(b.total_class() == blowup_class(ct.total_class(), selection_class(ct, center), codim));
    CHECK(b.total_class() == b.recompute_class());
  }
}

TEST_CASE("equivalence shadows") {
  const auto p1 = torify_proj_space(1);
  CHECK(equiv_shadow(p1, p1, EquivLevel::Strong));
  CHECK(equiv_shadow(p1, p1, EquivLevel::Weak));
  const auto sq = oracle::product_p1xp1();
  const auto diag = oracle::diagonal_adapted_p1xp1();
  CHECK(sq.total_class() == diag.total_class());
  CHECK_FALSE(equiv_shadow(sq, diag, EquivLevel::Strong));
  CHECK(equiv_shadow(sq, diag, EquivLevel::Weak));
  const auto p2 = torify_proj_space(2);
  CHECK_FALSE(equiv_shadow(p1, p2, EquivLevel::Strong));
  CHECK_FALSE(equiv_shadow(p1, p2, EquivLevel::Weak));
  // equal pieces built separately
  const ConstructibleTorification a({{"x", TorifExpr::complement(gm(), pt())}});
  const ConstructibleTorification b({{"x", TorifExpr::complement(gm(), pt())}});
  CHECK(equiv_shadow(a, b, EquivLevel::Strong));
}

TEST_CASE("json") {
  const auto e = TorifExpr::complement(TorifExpr::product({gm(), gm()}), gm());
  CHECK(to_json(e).dump() ==
        R"({"op":"complement","ambient":{"op":"product","factors":[{"op":"torus","dim":1},{"op":"torus","dim":1}]},)"
        R"("removed":{"op":"torus","dim":1},"assignment":[0]})");
  CHECK(torif_expr_from_json(to_json(e)) == e);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto r = oracle::random_expr(rng, 3);
    CHECK(torif_expr_from_json(to_json(r)) == r);
  }
  CHECK_THROWS_AS(torif_expr_from_json(nlohmann::ordered_json::parse(R"({"op":"cube"})")), std::invalid_argument);
  CHECK_THROWS_AS(torif_expr_from_json(nlohmann::ordered_json::parse(R"({"op":"torus"})")), std::invalid_argument);
  const auto j = to_json(torify_proj_space(1));
  CHECK(j["total_class"].dump() == R"({"basis":"T","coeffs":["2","1"]})");
  CHECK(j["f1_constructible"] == true);
}
