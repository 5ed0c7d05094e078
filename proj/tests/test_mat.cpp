#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birefl/mat.hpp"

using namespace birefl;

namespace {

Mat random_mat(const Field& f, int n, std::mt19937_64& rng) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = f.nth_element(rng() % f.size());
  return m;
}

Mat random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  while (true) {
    Mat m = random_mat(f, n, rng);
    if (invertible(m)) return m;
  }
}

// Independent elementary-divisor oracle: Smith normal form of xI - t over
// k[x], computed with unimodular row/column operations. Returns the nontrivial
// diagonal entries in ascending divisibility order.
std::vector<Poly> smith_invariant_factors(const Mat& t) {
  Field f = t.field();
  int n = t.rows();
  // polynomial matrix M = xI - t
  std::vector<std::vector<Poly>> M(static_cast<size_t>(n),
                                   std::vector<Poly>(static_cast<size_t>(n), Poly::zero(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly e = Poly::constant(-t.at(i, j));
      if (i == j) e = e + Poly::x(f);
      M[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
    }
  auto deg = [](const Poly& p) { return p.is_zero() ? INT32_MAX : p.degree(); };
  for (int k = 0; k < n; ++k) {
    while (true) {
      // pivot: entry of least degree in the trailing block
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (!M[i][j].is_zero() && (pi < 0 || deg(M[i][j]) < deg(M[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // all zero
      std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(pi)]);
      for (int i = 0; i < n; ++i) std::swap(M[i][static_cast<size_t>(k)], M[i][static_cast<size_t>(pj)]);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (M[i][k].is_zero()) continue;
        Poly q = M[i][k] / M[k][k];
        for (int j = k; j < n; ++j) M[i][j] = M[i][j] - q * M[k][j];
        if (!M[i][k].is_zero()) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (M[k][j].is_zero()) continue;
        Poly q = M[k][j] / M[k][k];
        for (int i = k; i < n; ++i) M[i][j] = M[i][j] - q * M[i][k];
        if (!M[k][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility fix-up: M[k][k] must divide all trailing entries
      bool fixed = true;
      for (int i = k + 1; i < n && fixed; ++i)
        for (int j = k + 1; j < n && fixed; ++j) {
          if (M[i][j].is_zero()) continue;
          if (!divmod(M[i][j], M[k][k]).second.is_zero()) {
            // add row i to row k and restart
            for (int c = k; c < n; ++c) M[k][c] = M[k][c] + M[i][c];
            fixed = false;
          }
        }
      if (fixed) break;
    }
  }
  std::vector<Poly> out;
  for (int k = 0; k < n; ++k) {
    Poly d = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
    if (!d.is_zero() && d.degree() > 0) out.push_back(d.monic());
  }
  std::sort(out.begin(), out.end(),
            [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
  return out;
}

}  // namespace

TEST_CASE("lin_core basics") {
  Field F7 = Field::prime(7);
  Mat d = Mat::from_ints(F7, {{2, 0}, {0, 3}});
  CHECK(det(d) == F7.from_int(6));
  Mat z = Mat::zero(F7, 2, 2);
  CHECK(kernel(z).cols() == 2);
  Field Q = Field::rationals();
  Mat I = Mat::identity(Q, 3);
  Vector b = {Q.from_int(1), Q.from_int(5), Q.from_int(-2)};
  auto x = solve(I, b);
  REQUIRE(x);
  CHECK(*x == b);
  Mat a = Mat::from_ints(Q, {{1, 2}, {3, 4}});
  CHECK(inverse(a) * a == Mat::identity(Q, 2));
  CHECK(rank(Mat::from_ints(Q, {{1, 2}, {2, 4}})) == 1);
  CHECK_THROWS_AS(inverse(Mat::from_ints(Q, {{1, 2}, {2, 4}})), Error);
}

TEST_CASE("charpoly/minpoly spec examples") {
  Field Q = Field::rationals();
  auto [chi1, m1] = charpoly_minpoly(Mat::identity(Q, 3));
  CHECK(chi1 == Poly::from_ints(Q, {-1, 3, -3, 1}));  // (x-1)^3
  CHECK(m1 == Poly::from_ints(Q, {-1, 1}));

  Poly p = Poly::from_ints(Q, {1, 0, 1});
  auto [chi2, m2] = charpoly_minpoly(Mat::companion(p));
  CHECK(chi2 == p);
  CHECK(m2 == p);

  Field F5 = Field::prime(5);
  Mat g = Mat::from_ints(F5, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 3}});
  auto [chi3, m3] = charpoly_minpoly(g);
  Poly xm2 = Poly::linear(F5.from_int(2)), xm3 = Poly::linear(F5.from_int(3));
  CHECK(chi3 == xm2 * xm2 * xm3 * xm3);
  CHECK(m3 == xm2 * xm3 * xm3);
}

TEST_CASE("invariant factors: spec examples + Smith oracle") {
  Field Q = Field::rationals();
  auto d1 = invariant_factors(Mat::identity(Q, 2));
  REQUIRE(d1.blocks.size() == 2);
  CHECK(d1.blocks[0].invariant_factor == Poly::from_ints(Q, {-1, 1}));
  CHECK(d1.blocks[1].invariant_factor == Poly::from_ints(Q, {-1, 1}));

  auto d2 = invariant_factors(Mat::companion(Poly::from_ints(Q, {1, 0, 1})));
  REQUIRE(d2.blocks.size() == 1);

  Field F5 = Field::prime(5);
  Mat g = Mat::from_ints(F5, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 3}});
  auto d3 = invariant_factors(g);
  auto oracle = smith_invariant_factors(g);
  REQUIRE(d3.blocks.size() == oracle.size());
  for (size_t i = 0; i < oracle.size(); ++i)
    CHECK(d3.blocks[i].invariant_factor == oracle[i]);
  // expected: (x-2), (x-2)(x-3)^2
  Poly xm2 = Poly::linear(F5.from_int(2)), xm3 = Poly::linear(F5.from_int(3));
  CHECK(d3.blocks[0].invariant_factor == xm2);
  CHECK(d3.blocks[1].invariant_factor == xm2 * xm3 * xm3);
}

TEST_CASE("invariant factors agree with the Smith oracle on random matrices") {
  std::mt19937_64 rng(2024);
  Field F3 = Field::prime(3), F5 = Field::prime(5);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  int checked = 0;
  for (const auto& f : {F3, F5, F9}) {
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + static_cast<int>(rng() % 5);
      Mat t = random_mat(f, n, rng);
      auto dec = invariant_factors(t);
      auto oracle = smith_invariant_factors(t);
      REQUIRE(dec.blocks.size() == oracle.size());
      Poly prod = Poly::one(f);
      for (size_t i = 0; i < oracle.size(); ++i) {
        CHECK(dec.blocks[i].invariant_factor == oracle[i]);
        // divisibility chain
        if (i + 1 < oracle.size())
          CHECK(divmod(dec.blocks[i + 1].invariant_factor, dec.blocks[i].invariant_factor)
                    .second.is_zero());
        prod = prod * dec.blocks[i].invariant_factor;
      }
      CHECK(prod.degree() == n);  // sum deg = dim
      ++checked;
    }
  }
  CHECK(checked == 120);
}

TEST_CASE("are_conjugate") {
  Field F7 = Field::prime(7);
  Mat t = Mat::from_ints(F7, {{2, 1}, {0, 3}});
  auto g = are_conjugate(t, t);
  REQUIRE(g);
  CHECK(*g * t * inverse(*g) == t);

  Mat a = Mat::from_ints(F7, {{2, 0}, {0, 3}});
  Mat b = Mat::from_ints(F7, {{3, 0}, {0, 2}});
  auto g2 = are_conjugate(a, b);
  REQUIRE(g2);
  CHECK(*g2 * a * inverse(*g2) == b);

  // Example-1 matrix over F5 is not conjugate to its inverse
  Field F5 = Field::prime(5);
  Mat ex1 = Mat::from_ints(F5, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 3}});
  CHECK(!are_conjugate(ex1, inverse(ex1)));
}

TEST_CASE("jordan_chevalley") {
  Field Q = Field::rationals();
  Mat u = Mat::from_ints(Q, {{1, 1}, {0, 1}});
  auto jc1 = jordan_chevalley(u);
  CHECK(jc1.s == Mat::identity(Q, 2));
  CHECK(jc1.u == u);

  Mat d = Mat::from_ints(Q, {{2, 0}, {0, 3}});
  auto jc2 = jordan_chevalley(d);
  CHECK(jc2.s == d);
  CHECK(jc2.u == Mat::identity(Q, 2));

  Field F5 = Field::prime(5);
  Mat g = Mat::from_ints(F5, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 3}});
  auto jc3 = jordan_chevalley(g);
  CHECK(jc3.s == Mat::from_ints(F5, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}}));
  CHECK(jc3.u == Mat::from_ints(F5, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}));

  // properties on random invertible matrices
  std::mt19937_64 rng(99);
  for (const auto& f : {Field::prime(3), Field::prime(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      int n = 2 + static_cast<int>(rng() % 4);
      Mat m = random_invertible(f, n, rng);
      auto jc = jordan_chevalley(m);
      CHECK(jc.s * jc.u == m);
      CHECK(jc.s * jc.u == jc.u * jc.s);
      CHECK(is_semisimple(jc.s));
      CHECK(is_unipotent(jc.u));
    }
  }
}

TEST_CASE("symmetric factorization") {
  Field Q = Field::rationals();
  Mat u = Mat::from_ints(Q, {{1, 1}, {0, 1}});
  auto sf = symmetric_factorization(u);
  CHECK(sf.s1.is_symmetric());
  CHECK(sf.s2.is_symmetric());
  CHECK(sf.s1 * sf.s2 == u);

  Mat i2 = Mat::identity(Q, 2);
  CHECK_THROWS_AS(symmetric_factorization(i2), Error);  // not cyclic

  Field F5 = Field::prime(5);
  Mat c = Mat::companion(Poly::from_ints(F5, {-2, 0, 0, 1}));  // x^3 - 2
  auto sf2 = symmetric_factorization(c);
  CHECK(sf2.s1.is_symmetric());
  CHECK(sf2.s2.is_symmetric());
  CHECK(sf2.s1 * sf2.s2 == c);

  // SL adjustment: needs det(a) = 1 and an n-th root of det(S1)^-1
  Mat c2 = Mat::companion(Poly::from_ints(F5, {-1, 2, 0, 1}));  // x^3 + 2x - 1, det 1
  auto sf3 = symmetric_factorization(c2);
  CHECK(sf3.s1 * sf3.s2 == c2);
  CHECK(sf3.in_sl);  // gcd(3, 4) = 1 so cube roots always exist in F5
  CHECK(det(sf3.s1).is_one());
  CHECK(det(sf3.s2).is_one());
}

TEST_CASE("small brute-force oracle locks the Hankel convention (n = 2, F3)") {
  // every cyclic C over F3 of size 2 must admit our K1 K2 decomposition, and
  // our formula's output must lie in the set found by brute force
  Field F3 = Field::prime(3);
  int cases = 0;
  for (uint64_t code = 0; code < 81; ++code) {
    uint64_t c = code;
    Mat a(F3, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a.at(i, j) = F3.from_int(static_cast<long long>(c % 3));
        c /= 3;
      }
    if (!invertible(a)) continue;
    if (invariant_factors(a).blocks.size() != 1) continue;
    auto sf = symmetric_factorization(a);
    REQUIRE(sf.s1.is_symmetric());
    REQUIRE(sf.s2.is_symmetric());
    REQUIRE(sf.s1 * sf.s2 == a);
    // brute force: some symmetric pair multiplies to a
    bool found = false;
    for (uint64_t s1c = 0; s1c < 27 && !found; ++s1c) {
      uint64_t s = s1c;
      Mat s1(F3, 2, 2);
      s1.at(0, 0) = F3.from_int(static_cast<long long>(s % 3)); s /= 3;
      s1.at(1, 1) = F3.from_int(static_cast<long long>(s % 3)); s /= 3;
      s1.at(0, 1) = s1.at(1, 0) = F3.from_int(static_cast<long long>(s % 3));
      if (!invertible(s1)) continue;
      Mat s2 = inverse(s1) * a;
      if (s2.is_symmetric()) found = true;
    }
    CHECK(found);
    ++cases;
  }
  CHECK(cases > 20);
}

TEST_CASE("transpose similarity (Taussky-Zassenhaus sanity)") {
  std::mt19937_64 rng(7);
  Field F7 = Field::prime(7);
  Mat u = Mat::from_ints(Field::rationals(), {{1, 1}, {0, 1}});
  Mat p = transpose_similarity(u);
  CHECK(p * u * inverse(p) == u.transpose());

  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Mat a = random_mat(F7, n, rng);
    Mat pp = transpose_similarity(a);
    CHECK(invertible(pp));
    CHECK(pp * a * inverse(pp) == a.transpose());
  }
}

TEST_CASE("invariant factor data describes conjugacy (random pairs)") {
  std::mt19937_64 rng(31);
  Field F3 = Field::prime(3);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Mat a = random_mat(F3, n, rng);
    Mat g = random_invertible(F3, n, rng);
    Mat b = g * a * inverse(g);
    auto w = are_conjugate(a, b);
    REQUIRE(w);
    CHECK(*w * a * inverse(*w) == b);
  }
}
