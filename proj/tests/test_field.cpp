#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birefl/field.hpp"

using namespace birefl;

namespace {

std::vector<Field> sample_fields() {
  Field Q = Field::rationals();
  Field F3 = Field::prime(3), F5 = Field::prime(5), F7 = Field::prime(7);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  Field Qi = Field::quadratic(Q, Q.from_int(-1));
  Field F25 = Field::quotient(F5, {F5.from_int(2), F5.from_int(0), F5.one()});  // x^2+2
  return {Q, F3, F5, F7, F9, Qi, F25};
}

FieldElement random_element(const Field& f, std::mt19937_64& rng) {
  if (f.finite()) return f.nth_element(rng() % f.size());
  if (f.kind() == FieldKind::QuadExt) {
    Field b = f.base();
    auto r = [&] {
      return b.from_rat(mpq_class(static_cast<long>(rng() % 41) - 20,
                                  static_cast<long>(rng() % 7) + 1));
    };
    return f.element({r(), r()});
  }
  return f.from_rat(mpq_class(static_cast<long>(rng() % 201) - 100,
                              static_cast<long>(rng() % 29) + 1));
}

}  // namespace

TEST_CASE("field construction guards") {
  CHECK_THROWS_AS(Field::prime(2), Error);
  Field F3 = Field::prime(3);
  CHECK(Field::quadratic(F3, F3.from_int(2)).size() == 9);  // 2 nonsquare mod 3
  Field Q = Field::rationals();
  CHECK_THROWS_AS(Field::quadratic(Q, Q.from_int(4)), Error);  // 4 = 2^2
  // x^2 - 1 reducible over F5
  Field F5 = Field::prime(5);
  CHECK_THROWS_AS(Field::quotient(F5, {F5.from_int(-1), F5.zero(), F5.one()}), Error);
  // interning: same descriptor gives the same handle
  CHECK(Field::prime(5) == F5);
  CHECK(Field::quadratic(F3, F3.from_int(2)) == Field::quadratic(F3, F3.from_int(2)));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (const auto& f : sample_fields()) {
    for (int i = 0; i < 400; ++i) {
      FieldElement a = random_element(f, rng), b = random_element(f, rng),
                   c = random_element(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == f.zero());
      if (!a.is_zero()) {
        CHECK(a * a.inv() == f.one());
      }
      CHECK(a * f.one() == a);
    }
  }
}

TEST_CASE("conjugation is an order-2 base-fixing automorphism") {
  std::mt19937_64 rng(11);
  Field Q = Field::rationals();
  Field F3 = Field::prime(3);
  for (const auto& f : {Field::quadratic(Q, Q.from_int(2)),
                        Field::quadratic(F3, F3.from_int(2))}) {
    Field b = f.base();
    for (int i = 0; i < 200; ++i) {
      FieldElement x = random_element(f, rng), y = random_element(f, rng);
      CHECK(x.conj().conj() == x);
      CHECK((x + y).conj() == x.conj() + y.conj());
      CHECK((x * y).conj() == x.conj() * y.conj());
    }
    // conj fixes exactly the base field: on the basis {1, u}
    CHECK(f.one().conj() == f.one());
    CHECK(f.gen().conj() == -f.gen());
    // base field elements are fixed
    FieldElement be = f.element({b.from_int(5), b.zero()});
    CHECK(be.conj() == be);
  }
  // Frobenius agreement over F9: conj(x) = x^3
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  for (uint64_t i = 0; i < 9; ++i) {
    FieldElement x = F9.nth_element(i);
    CHECK(x.conj() == x.pow(3));
  }
}

TEST_CASE("is_square matches exhaustive squaring over F_p for p <= 50") {
  for (uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    Field F = Field::prime(p);
    std::vector<bool> sq(p, false);
    for (uint64_t x = 0; x < p; ++x) sq[(x * x) % p] = true;
    for (uint64_t c = 0; c < p; ++c) {
      auto r = is_square(F.from_int(static_cast<long long>(c)));
      CHECK(static_cast<bool>(r) == sq[c]);
      if (r) CHECK((*r) * (*r) == F.from_int(static_cast<long long>(c)));
    }
  }
}

TEST_CASE("is_square spec examples") {
  Field F5 = Field::prime(5), F7 = Field::prime(7), Q = Field::rationals();
  auto r5 = is_square(F5.from_int(-1));
  REQUIRE(r5);
  CHECK((*r5) * (*r5) == F5.from_int(-1));
  CHECK(!is_square(F7.from_int(-1)));
  auto rq = is_square(Q.from_rat(mpq_class(4, 9)));
  REQUIRE(rq);
  CHECK(*rq == Q.from_rat(mpq_class(2, 3)));
}

TEST_CASE("is_square over quadratic extensions (exhaustive over F9, F49)") {
  Field F3 = Field::prime(3), F7 = Field::prime(7);
  for (const auto& f : {Field::quadratic(F3, F3.from_int(2)),
                        Field::quadratic(F7, F7.from_int(3))}) {
    std::vector<char> issq(f.size(), 0);
    for (uint64_t i = 0; i < f.size(); ++i) {
      FieldElement x = f.nth_element(i);
      for (uint64_t j = 0; j < f.size(); ++j)
        if (f.nth_element(j) * f.nth_element(j) == x) { issq[i] = 1; break; }
    }
    for (uint64_t i = 0; i < f.size(); ++i) {
      FieldElement x = f.nth_element(i);
      auto r = is_square(x);
      CHECK(static_cast<bool>(r) == static_cast<bool>(issq[i]));
      if (r) CHECK((*r) * (*r) == x);
    }
  }
}

TEST_CASE("norm: values and multiplicativity") {
  Field Q = Field::rationals();
  Field Qs2 = Field::quadratic(Q, Q.from_int(2));
  // 1 + sqrt 2 has norm -1
  FieldElement x = Qs2.element({Q.one(), Q.one()});
  CHECK(norm(x) == Q.from_int(-1));
  CHECK(norm(Qs2.one()) == Q.one());

  Field F3 = Field::prime(3);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  FieldElement y = F9.element({F3.one(), F3.one()});  // 1 + u, u^2 = 2
  CHECK(norm(y) == F3.from_int(2));                   // 1 - 2 = -1 = 2

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    FieldElement a = random_element(Qs2, rng), b = random_element(Qs2, rng);
    CHECK(norm(a * b) == norm(a) * norm(b));
  }
  for (int i = 0; i < 1000; ++i) {
    FieldElement a = F9.nth_element(rng() % 9), b = F9.nth_element(rng() % 9);
    CHECK(norm(a * b) == norm(a) * norm(b));
  }
}

TEST_CASE("is_norm: definite over finite fields, local tests over Q") {
  Field Q = Field::rationals();
  Field Qi = Field::quadratic(Q, Q.from_int(-1));
  // 3 is not a sum of two rational squares
  auto r = is_norm(Q.from_int(3), Qi);
  CHECK(r.state == NormResult::None);
  // 1 is a norm in any extension
  CHECK(is_norm(Q.one(), Qi).state == NormResult::Found);
  // 2 = (1+i)(1-i)
  auto r2 = is_norm(Q.from_int(2), Qi);
  REQUIRE(r2.state == NormResult::Found);
  CHECK(norm(r2.preimage) == Q.from_int(2));

  // -1 is a norm from Q(sqrt 2)
  Field Qs2 = Field::quadratic(Q, Q.from_int(2));
  auto r3 = is_norm(Q.from_int(-1), Qs2);
  REQUIRE(r3.state == NormResult::Found);
  CHECK(norm(r3.preimage) == Q.from_int(-1));

  // finite field: norm surjective; spec example over F9
  Field F3 = Field::prime(3);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  for (long long c = 1; c <= 2; ++c) {
    auto rf = is_norm(F3.from_int(c), F9);
    REQUIRE(rf.state == NormResult::Found);
    CHECK(norm(rf.preimage) == F3.from_int(c));
  }
}

TEST_CASE("nth_root") {
  Field Q = Field::rationals();
  CHECK(*nth_root(Q.from_rat(mpq_class(8, 27)), 3) == Q.from_rat(mpq_class(2, 3)));
  CHECK(!nth_root(Q.from_int(2), 3));
  Field F5 = Field::prime(5);
  // gcd(3, 4) = 1: every element has a unique cube root mod 5
  for (long long c = 1; c < 5; ++c) {
    auto r = nth_root(F5.from_int(c), 3);
    REQUIRE(r);
    CHECK(r->pow(3) == F5.from_int(c));
  }
}

TEST_CASE("quotient field F25 arithmetic") {
  Field F5 = Field::prime(5);
  Field F25 = Field::quotient(F5, {F5.from_int(2), F5.from_int(0), F5.one()});
  CHECK(F25.size() == 25);
  FieldElement u = F25.gen();
  CHECK(u * u == F25.from_int(-2));
  // multiplicative group order 24
  FieldElement x = F25.element({F5.one(), F5.one()});
  CHECK(x.pow(24).is_one());
}
