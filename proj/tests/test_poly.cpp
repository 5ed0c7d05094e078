#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birefl/poly.hpp"

using namespace birefl;

namespace {

Poly random_poly(const Field& f, int maxdeg, std::mt19937_64& rng) {
  int d = static_cast<int>(rng() % static_cast<uint64_t>(maxdeg + 1));
  std::vector<FieldElement> c;
  for (int i = 0; i <= d; ++i) c.push_back(f.nth_element(rng() % f.size()));
  return Poly(f, std::move(c));
}

}  // namespace

TEST_CASE("gcd/divmod basics") {
  Field Q = Field::rationals();
  Poly a = Poly::from_ints(Q, {-1, 0, 1});  // x^2 - 1
  Poly b = Poly::from_ints(Q, {-1, 1});     // x - 1
  CHECK(gcd(a, b) == b);
  auto [q, r] = divmod(Poly::from_ints(Q, {0, 0, 0, 1}), b);  // x^3 / (x-1)
  CHECK(q == Poly::from_ints(Q, {1, 1, 1}));
  CHECK(r == Poly::from_ints(Q, {1}));
  CHECK_THROWS_AS(divmod(a, Poly::zero(Q)), Error);
}

TEST_CASE("squarefree decomposition") {
  Field F5 = Field::prime(5);
  // (x-2)(x-3)^2
  Poly p = Poly::linear(F5.from_int(2)) * Poly::linear(F5.from_int(3)) *
           Poly::linear(F5.from_int(3));
  auto sf = squarefree_decomposition(p);
  REQUIRE(sf.size() == 2);
  Poly check = Poly::one(F5);
  for (auto& [g, e] : sf) {
    for (int i = 0; i < e; ++i) check = check * g;
  }
  CHECK(check == p.monic());
  bool saw1 = false, saw2 = false;
  for (auto& [g, e] : sf) {
    if (e == 1) { saw1 = true; CHECK(g == Poly::linear(F5.from_int(2))); }
    if (e == 2) { saw2 = true; CHECK(g == Poly::linear(F5.from_int(3))); }
  }
  CHECK(saw1);
  CHECK(saw2);

  // char-p descent branch: (x^5 - x)^5-ish — use (x^2+1)^5 over F5
  Poly q = Poly::from_ints(F5, {1, 0, 1});
  Poly q5 = Poly::one(F5);
  for (int i = 0; i < 5; ++i) q5 = q5 * q;
  auto sf5 = squarefree_decomposition(q5);
  REQUIRE(sf5.size() == 1);
  CHECK(sf5[0].second == 5);
  CHECK(sf5[0].first == q.monic());
}

TEST_CASE("reciprocal and self-reciprocal") {
  Field Q = Field::rationals();
  CHECK(reciprocal(Poly::from_ints(Q, {-1, 1})) == Poly::from_ints(Q, {-1, 1}));
  CHECK(reciprocal(Poly::from_ints(Q, {1, -3, 1})) == Poly::from_ints(Q, {1, -3, 1}));
  // x - 2 -> x - 1/2
  Poly r = reciprocal(Poly::from_ints(Q, {-2, 1}));
  CHECK(r == Poly(Q, {Q.from_rat(mpq_class(-1, 2)), Q.one()}));
  CHECK(is_self_reciprocal(Poly::from_ints(Q, {1, 0, 1})));
  // (x-2)(x-1/2) = x^2 - 5/2 x + 1
  Poly p(Q, {Q.one(), Q.from_rat(mpq_class(-5, 2)), Q.one()});
  CHECK(is_self_reciprocal(p));
  CHECK(!is_self_reciprocal(Poly::from_ints(Q, {-2, 1})));
  CHECK_THROWS_AS(reciprocal(Poly::from_ints(Q, {0, 1})), Error);
  CHECK_THROWS_AS(reciprocal(Poly::from_ints(Q, {1, 2})), Error);

  // involution property on random polynomials with p(0) != 0
  std::mt19937_64 rng(5);
  Field F7 = Field::prime(7);
  for (int i = 0; i < 200; ++i) {
    Poly a = random_poly(F7, 6, rng).monic();
    if (a.degree() < 1 || a.constant_term().is_zero()) continue;
    CHECK(reciprocal(reciprocal(a)) == a);
    Poly prod = (a * reciprocal(a)).monic();
    CHECK(is_self_reciprocal(prod));
  }
}

TEST_CASE("factor over finite fields: spec examples") {
  Field F5 = Field::prime(5), F7 = Field::prime(7);
  auto f1 = factor(Poly::from_ints(F5, {1, 0, 1}));  // x^2+1 = (x-2)(x-3) mod 5
  REQUIRE(f1.complete());
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].first.degree() == 1);
  CHECK(f1.factors[1].first.degree() == 1);

  auto f2 = factor(Poly::from_ints(F7, {1, 0, 1}));  // irreducible mod 7
  REQUIRE(f2.complete());
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].first.degree() == 2);

  Field Q = Field::rationals();
  auto f3 = factor(Poly::from_ints(Q, {-1, 0, 1}));
  REQUIRE(f3.complete());
  CHECK(f3.factors.size() == 2);
}

TEST_CASE("factor re-multiplies to the input (random, several fields)") {
  std::mt19937_64 rng(42);
  Field F3 = Field::prime(3), F5 = Field::prime(5), F7 = Field::prime(7);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  int count = 0;
  for (const auto& f : {F3, F5, F7, F9}) {
    for (int i = 0; i < 250; ++i) {
      Poly p = random_poly(f, 8, rng);
      if (p.degree() < 1) continue;
      auto fac = factor(p, 1);
      REQUIRE(fac.complete());
      Poly prod = Poly::one(f);
      for (auto& [g, e] : fac.factors) {
        CHECK(g.is_monic());
        for (int j = 0; j < e; ++j) prod = prod * g;
      }
      CHECK(prod == p.monic());
      ++count;
    }
  }
  CHECK(count > 800);
}

TEST_CASE("equal-degree splitting is deterministic given the seed") {
  Field F5 = Field::prime(5);
  // (x^2+2)(x^2+3) both irreducible mod 5: x^4 + 5x^2 + 6 = x^4 + 1 mod 5
  Poly p = Poly::from_ints(F5, {1, 0, 0, 0, 1});
  auto a = factor(p, 123), b = factor(p, 123);
  REQUIRE(a.factors.size() == b.factors.size());
  for (size_t i = 0; i < a.factors.size(); ++i) {
    CHECK(a.factors[i].first == b.factors[i].first);
    CHECK(a.factors[i].second == b.factors[i].second);
  }
}

TEST_CASE("factor over Q: linear + quadratic extraction, honest Unfactored") {
  Field Q = Field::rationals();
  // (x - 2/3)(x + 1)(x^2 + 1)
  Poly p = Poly(Q, {Q.from_rat(mpq_class(-2, 3)), Q.one()}) *
           Poly::from_ints(Q, {1, 1}) * Poly::from_ints(Q, {1, 0, 1});
  auto f = factor(p);
  REQUIRE(f.complete());
  Poly prod = Poly::one(Q);
  for (auto& [g, e] : f.factors)
    for (int j = 0; j < e; ++j) prod = prod * g;
  CHECK(prod == p.monic());

  // x^4 + x + 1 has no rational roots and no rational quadratic split found:
  // stays unfactored rather than being guessed at
  Poly hard = Poly::from_ints(Q, {1, 1, 0, 0, 1});
  auto fh = factor(hard);
  CHECK(!fh.complete());
  Poly prod2 = fh.unfactored;
  for (auto& [g, e] : fh.factors)
    for (int j = 0; j < e; ++j) prod2 = prod2 * g;
  CHECK(prod2 == hard.monic());
}
