#include <doctest.h>

#include <random>

#include "f1kit/motive.hpp"
#include "oracles.hpp"

using namespace f1kit;

namespace {

MotClass random_class(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 5);
  std::uniform_int_distribution<long long> coef(-50, 50);
  std::vector<BigInt> c;
  for (int k = deg(rng); k >= 0; --k) c.emplace_back(coef(rng));
  return MotClass::from_t_coeffs(std::move(c));
}

}  // namespace

TEST_CASE("canonical form drops trailing zeros") {
  CHECK(MotClass::from_t_coeffs({1, 2, 0, 0}) == MotClass::from_t_coeffs({1, 2}));
  CHECK(MotClass::from_t_coeffs({0, 0}).is_zero());
  CHECK(MotClass().degree() == -1);
  CHECK(MotClass(0).is_zero());
  CHECK(MotClass::T().degree() == 1);
}

TEST_CASE("L = T + 1 and basis changes round trip") {
  CHECK(MotClass::L() == MotClass::T() + MotClass(1));
  const MotClass x = MotClass::from_l_coeffs({1, 16, 16, 1});
  CHECK(change_basis(x, Basis::L) == std::vector<BigInt>{1, 16, 16, 1});
  CHECK(MotClass::from_t_coeffs(change_basis(x, Basis::T)) == x);
  CHECK(MotClass::from_coeffs(Basis::L, {0, 1}) == MotClass::L());
}

TEST_CASE("ring laws on random classes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_class(rng);
    const auto b = random_class(rng);
    const auto c = random_class(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MotClass());
    CHECK(a * MotClass(1) == a);
    CHECK(mot_mul(a, b) == a * b);
    const BigInt m = i % 7;
    CHECK(count_points(a * b, m) == oracle::eval_at(a, m) * oracle::eval_at(b, m));
    CHECK(count_points(a + b, m) == oracle::eval_at(a, m) + oracle::eval_at(b, m));
  }
}

TEST_CASE("pow and scaling") {
  CHECK(MotClass::L().pow(3) == MotClass::from_t_coeffs({1, 3, 3, 1}));
  CHECK(MotClass::T().pow(0) == MotClass(1));
  CHECK(MotClass::T().scaled(BigInt(5)) == MotClass::from_t_coeffs({0, 5}));
}

TEST_CASE("big coefficients stay exact") {
  const MotClass x = MotClass::L().pow(200);
  CHECK(x.t_coeff(100) == oracle::choose(200, 100));
  CHECK(count_points(x, 1) == BigInt(1) << 200);
}

TEST_CASE("effectiveness") {
  CHECK(is_effective_torus_class(MotClass::T() + MotClass(2)));
  CHECK_FALSE(is_effective_torus_class(MotClass::T() - MotClass(1)));
  CHECK(is_effective_torus_class(MotClass()));
  CHECK(is_effective_torus_class(MotClass::L().pow(4)));
}

TEST_CASE("point counts") {
  const MotClass p1 = proj_class(1);
  CHECK(count_points(p1, 0) == 2);
  CHECK(count_points(p1, 1) == 3);
  CHECK(count_points(MotClass::T() - MotClass(1), 0) == -1);
}

TEST_CASE("projective spaces and blowups") {
  CHECK(proj_class(-1).is_zero());
  CHECK(proj_class(0) == MotClass(1));
  CHECK(proj_class(2) == MotClass::from_l_coeffs({1, 1, 1}));
  for (int d = 0; d <= 6; ++d) CHECK(proj_class(d) == oracle::projective(d));
  CHECK(blowup_class(proj_class(2), MotClass(1), 2) == MotClass::from_l_coeffs({1, 2, 1}));
  CHECK(blowup_class(proj_class(3), proj_class(1), 1) == proj_class(3));
  CHECK_THROWS_AS(blowup_class(MotClass(1), MotClass(1), 0), std::invalid_argument);
}

TEST_CASE("falling factorial via Stirling numbers") {
  CHECK(stirling_first_row(3) == std::vector<BigInt>{0, 2, -3, 1});
  for (unsigned m = 0; m <= 12; ++m) CHECK(expand_falling(m) == expand_falling_stirling(m));
  CHECK(expand_falling(2) == MotClass::from_t_coeffs({2, -3, 1}));
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("Poincaré polynomial") {
  const MotClass x = MotClass::from_l_coeffs({1, 16, 16, 1});
  CHECK(poincare_poly(x) == std::vector<BigInt>{1, 0, 16, 0, 16, 0, 1});
  CHECK(poincare_string(poincare_poly(x)) == "1+16q^2+16q^4+q^6");
}

TEST_CASE("formatting") {
  const MotClass x = MotClass::from_l_coeffs({1, 16, 16, 1});
  CHECK(to_string(x, Basis::L) == "L^3+16L^2+16L+1");
  CHECK(to_string(MotClass::T() + MotClass(2)) == "T+2");
  CHECK(to_string(MotClass::T() - MotClass(1)) == "T-1");
  CHECK(to_string(MotClass()) == "0");
  CHECK(to_string(-MotClass::T().pow(2)) == "-T^2");
}

TEST_CASE("json round trip and validation") {
  const MotClass x = MotClass::T() + MotClass(2);
  CHECK(to_json(x).dump() == R"({"basis":"T","coeffs":["2","1"]})");
  CHECK(mot_class_from_json(to_json(x, Basis::L)) == x);
  CHECK(mot_class_from_json(to_json(x)) == x);
  auto bad = to_json(x);
  bad["coeffs"][0] = "2x";
  CHECK_THROWS_AS(mot_class_from_json(bad), std::invalid_argument);
  CHECK(parse_basis("L") == Basis::L);
  CHECK_THROWS_AS(parse_basis("Q"), std::invalid_argument);
}
