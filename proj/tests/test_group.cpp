#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birefl/group.hpp"

using namespace birefl;

TEST_CASE("contains: spec examples") {
  Field F5 = Field::prime(5);
  Mat J = standard_symplectic_gram(F5, 4);
  GroupSpec sp = GroupSpec::symplectic(J);
  Mat a = Mat::diag(F5, {F5.from_int(2), F5.from_int(3), F5.from_int(2), F5.from_int(3)});
  CHECK(contains(sp, a));  // pairs multiply to 1

  Field Q = Field::rationals();
  GroupSpec so2 = GroupSpec::special_orth(Mat::identity(Q, 2));
  CHECK(contains(so2, Mat::from_ints(Q, {{0, -1}, {1, 0}})));

  GroupSpec sl2 = GroupSpec::sl(Q, 2);
  CHECK(!contains(sl2, Mat::from_ints(Q, {{1, 1}, {0, 2}})));
  CHECK(contains(sl2, Mat::from_ints(Q, {{1, 1}, {0, 1}})));
}

TEST_CASE("contains is closed under products and inverses (random samples)") {
  std::mt19937_64 rng(17);
  Field F3 = Field::prime(3);
  Field F9 = Field::quadratic(F3, F3.from_int(2));

  auto random_member = [&](const GroupSpec& spec, int tries = 20000) -> std::optional<Mat> {
    Field f = spec.entry_field();
    int n = spec.dim();
    for (int t = 0; t < tries; ++t) {
      Mat m(f, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = f.nth_element(rng() % f.size());
      if (invertible(m) && contains(spec, m)) return m;
    }
    return std::nullopt;
  };

  std::vector<GroupSpec> specs = {
      GroupSpec::sl(F3, 2),
      GroupSpec::symplectic(standard_symplectic_gram(F3, 2)),
      GroupSpec::special_orth(split_symmetric_form(F3, 2).gram),
      GroupSpec::unitary(standard_form(F9, FormFlavor::Hermitian, 2).gram, F9),
  };
  for (const auto& spec : specs) {
    int done = 0;
    for (int i = 0; i < 40; ++i) {
      auto a = random_member(spec), b = random_member(spec);
      if (!a || !b) continue;
      CHECK(contains(spec, *a * *b));
      CHECK(contains(spec, inverse(*a)));
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("standard forms") {
  Field F5 = Field::prime(5);
  Mat J = standard_symplectic_gram(F5, 4);
  CHECK(J == Mat::from_ints(F5, {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}));
  FormData split = split_symmetric_form(F5, 4);
  CHECK(split.gram == Mat::from_ints(F5, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}));
  Field F3 = Field::prime(3);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  FormData h = standard_form(F9, FormFlavor::Hermitian, 2);
  CHECK(h.gram == Mat::diag(F9, {F9.one(), -F9.one()}));
  CHECK_THROWS_AS(standard_symplectic_gram(F5, 3), Error);
}

TEST_CASE("conjugator_space: spec examples") {
  Field F7 = Field::prime(7);
  // t = I: everything
  auto cs1 = conjugator_space(Mat::identity(F7, 2));
  CHECK(cs1.reversers.size() == 4);
  CHECK(cs1.centralizer.size() == 4);

  // t = diag(2,3): eigenvalues disjoint from inverses -> zero space
  auto cs2 = conjugator_space(Mat::diag(F7, {F7.from_int(2), F7.from_int(3)}));
  CHECK(cs2.reversers.empty());

  // t = diag(2,4), 2^-1 = 4 mod 7: anti-diagonal matrices, dimension 2
  auto cs3 = conjugator_space(Mat::diag(F7, {F7.from_int(2), F7.from_int(4)}));
  CHECK(cs3.reversers.size() == 2);
  Mat t = Mat::diag(F7, {F7.from_int(2), F7.from_int(4)});
  Mat tinv = inverse(t);
  for (const auto& x : cs3.reversers) {
    CHECK(x * t == tinv * x);
    CHECK(x.at(0, 0).is_zero());
    CHECK(x.at(1, 1).is_zero());
  }
}

TEST_CASE("invertible conjugators form a single coset of the centralizer") {
  // exhaust over F3, t = diag(2, 2^-1 = 2)... use t = [[0,-1],[1,0]] instead
  Field F3 = Field::prime(3);
  Mat t = Mat::from_ints(F3, {{0, -1}, {1, 0}});
  auto cs = conjugator_space(t);
  std::vector<Mat> invertibles;
  for_each_combination(cs.reversers, 1000000, [&](const Mat& x) {
    if (invertible(x)) invertibles.push_back(x);
    return true;
  });
  REQUIRE(!invertibles.empty());
  Mat g0 = invertibles[0];
  Mat tinv = inverse(t);
  for (const auto& g : invertibles) {
    CHECK(g * t * inverse(g) == tinv);
    // g = g0 * z with z in the centralizer
    Mat z = inverse(g0) * g;
    CHECK(z * t == t * z);
  }
}

TEST_CASE("restrict_conjugators: SL2(F3) around the identity is the whole group") {
  Field F3 = Field::prime(3);
  GroupSpec sl2 = GroupSpec::sl(F3, 2);
  auto rc = restrict_conjugators(sl2, Mat::identity(F3, 2));
  REQUIRE(rc.enumerated);
  CHECK(rc.members.size() == 24);  // |SL2(F3)| = 3 * 8
}

TEST_CASE("restrict_conjugators: Sp(4) remark - every group conjugator squares to -I") {
  Field F7 = Field::prime(7);
  Mat J = standard_symplectic_gram(F7, 4);
  GroupSpec sp = GroupSpec::symplectic(J);
  // distinct diagonal entries: 2, 4=2^-1, 3, 5=3^-1
  Mat s = Mat::diag(F7, {F7.from_int(2), F7.from_int(4), F7.from_int(3), F7.from_int(5)});
  REQUIRE(contains(sp, s));
  auto rc = restrict_conjugators(sp, s);
  REQUIRE(rc.enumerated);
  CHECK(!rc.members.empty());
  Mat minusI = -Mat::identity(F7, 4);
  for (const auto& g : rc.members) CHECK(g * g == minusI);
}

TEST_CASE("restrict_conjugators falls back to a parametric description") {
  Field Q = Field::rationals();
  GroupSpec gl = GroupSpec::gl(Q, 2);
  auto rc = restrict_conjugators(gl, Mat::from_ints(Q, {{2, 0}, {0, 3}}));
  CHECK(!rc.enumerated);
  // the space is empty here (eigenvalues not inverse-paired)
  CHECK(rc.space.empty());
}
