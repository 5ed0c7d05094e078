#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "birefl/reality.hpp"

using namespace birefl;

namespace {

Mat random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  while (true) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = f.nth_element(rng() % f.size());
    if (invertible(m)) return m;
  }
}

Mat example1_matrix(const Field& f) {
  // diag(2, 2, [[3, 3], [0, 3]]) = s u with s = diag(2,2,3,3), u unipotent
  return Mat::from_ints(f, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 3}, {0, 0, 0, 3}});
}

}  // namespace

TEST_CASE("gl_reality: spec examples") {
  Field Q = Field::rationals();
  Mat t(Q, 2, 2);
  t.at(0, 0) = Q.from_int(2);
  t.at(1, 1) = Q.from_rat(mpq_class(1, 2));
  auto r = gl_reality(t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  verify_report(r);

  auto r2 = gl_reality(Mat::from_ints(Q, {{2, 0}, {0, 3}}));
  CHECK(r2.real.state == VerdictState::No);
  CHECK(r2.real.obstruction->kind == Obstruction::Kind::NonReciprocalInvariantFactor);

  Field F5 = Field::prime(5);
  auto r3 = gl_reality(example1_matrix(F5));
  CHECK(r3.real.state == VerdictState::No);
  CHECK(r3.real.obstruction->kind == Obstruction::Kind::NonReciprocalInvariantFactor);
  // the offending factor is X - 2
  CHECK(r3.real.obstruction->factor->degree() == 1);
}

TEST_CASE("three-way GL agreement on random matrices") {
  std::mt19937_64 rng(123);
  Field F3 = Field::prime(3), F5 = Field::prime(5), F7 = Field::prime(7);
  Field F9 = Field::quadratic(F3, F3.from_int(2));
  int cases = 0;
  for (const auto& f : {F3, F5, F7, F9}) {
    for (int trial = 0; trial < 25; ++trial) {
      int n = 2 + static_cast<int>(rng() % 5);
      Mat t = random_invertible(f, n, rng);
      auto rep = gl_reality(t);
      bool by_construction = rep.real.state == VerdictState::Yes;
      bool by_conjugacy = are_conjugate(t, inverse(t)).has_value();
      bool by_factors = true;
      for (const auto& b : invariant_factors(t).blocks)
        by_factors = by_factors && is_self_reciprocal(b.invariant_factor);
      CHECK(by_construction == by_conjugacy);
      CHECK(by_construction == by_factors);
      CHECK((rep.strongly_real.state == VerdictState::Yes) == by_construction);
      if (by_construction) verify_report(rep);
      ++cases;
    }
  }
  CHECK(cases == 100);
}

TEST_CASE("wonenburger determinant law: even blocks carry det (-1)^m") {
  std::mt19937_64 rng(5);
  Field F7 = Field::prime(7);
  // cyclic with a single even self-reciprocal factor of degree 2m: det sigma = (-1)^m
  for (int m = 1; m <= 3; ++m) {
    for (int trial = 0; trial < 10; ++trial) {
      // random self-reciprocal of degree 2m with f(+-1) != 0
      std::vector<FieldElement> c(static_cast<size_t>(2 * m + 1), F7.zero());
      c[static_cast<size_t>(2 * m)] = F7.one();
      c[0] = F7.one();
      for (int i = 1; i <= m; ++i) {
        FieldElement v = F7.nth_element(rng() % 7);
        c[static_cast<size_t>(i)] = v;
        c[static_cast<size_t>(2 * m - i)] = v;
      }
      Poly p(F7, c);
      if (p.eval(F7.one()).is_zero() || p.eval(-F7.one()).is_zero()) continue;
      Mat t = Mat::companion(p);
      auto [sigma, tau] = wonenburger_involutions(t, std::nullopt);
      CHECK(det(sigma) == F7.from_int(m % 2 ? -1 : 1));
      CHECK(is_involution(sigma));
      CHECK(sigma * t * sigma == inverse(t));
      (void)tau;
    }
  }
}

TEST_CASE("wonenburger: spec examples") {
  Field Q = Field::rationals();
  Mat c = Mat::companion(Poly::from_ints(Q, {1, -3, 1}));
  auto [sigma, tau] = wonenburger_involutions(c, std::nullopt);
  CHECK(det(sigma) == Q.from_int(-1));  // 2m = 2, det (-1)^1
  CHECK(is_involution(sigma));
  CHECK(sigma * c * sigma == inverse(c));
  (void)tau;

  Mat i4 = Mat::identity(Q, 4);
  auto [s2, t2] = wonenburger_involutions(i4, 1);
  CHECK(s2 == i4);
  CHECK(t2 == i4);

  // SL6 Remark 1 element: det target +1 unachievable
  Field F11 = Field::prime(11);
  Mat s = Mat::diag(F11, {F11.from_int(2), F11.from_int(6), F11.from_int(3),
                          F11.from_int(4), F11.from_int(5), F11.from_int(9)});
  CHECK_THROWS_AS(wonenburger_involutions(s, 1), Error);
}

TEST_CASE("sl_reality: Remark 2 over F5 and F7") {
  Field F5 = Field::prime(5);
  Mat u5 = Mat::from_ints(F5, {{1, 1}, {0, 1}});
  auto r5 = sl_reality(u5);
  CHECK(r5.real.state == VerdictState::Yes);
  // spec witness: diag(2, -2) = diag(2, 3)
  CHECK(*r5.real.conjugator * u5 * inverse(*r5.real.conjugator) == inverse(u5));
  CHECK(det(*r5.real.conjugator).is_one());
  CHECK(r5.strongly_real.state == VerdictState::No);
  verify_report(r5);

  Field F7 = Field::prime(7);
  Mat u7 = Mat::from_ints(F7, {{1, 1}, {0, 1}});
  auto r7 = sl_reality(u7);
  CHECK(r7.real.state == VerdictState::No);
  CHECK(r7.real.obstruction->kind == Obstruction::Kind::MinusOneNotSquare);
  CHECK(r7.strongly_real.state == VerdictState::No);
}

TEST_CASE("sl_reality: diag(2,1/2,3,1/3,1,1) over Q is strongly real") {
  Field Q = Field::rationals();
  Vector d = {Q.from_int(2), Q.from_rat(mpq_class(1, 2)), Q.from_int(3),
              Q.from_rat(mpq_class(1, 3)), Q.one(), Q.one()};
  Mat t = Mat::diag(Q, d);
  auto r = sl_reality(t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  CHECK(det(*r.strongly_real.sigma).is_one());
  verify_report(r);
}

TEST_CASE("sl_reality: SL6 Remark 1 element (exhaustive over F11)") {
  Field F11 = Field::prime(11);
  Mat s = Mat::diag(F11, {F11.from_int(2), F11.from_int(6), F11.from_int(3),
                          F11.from_int(4), F11.from_int(5), F11.from_int(9)});
  REQUIRE(det(s).is_one());
  auto r = sl_reality(s, 2000000);
  CHECK(r.real.state == VerdictState::Yes);  // H = diag(N,N,N) has det 1
  CHECK(r.strongly_real.state == VerdictState::No);
  CHECK(r.strongly_real.obstruction->kind == Obstruction::Kind::CentralizerDetObstruction);
  verify_report(r);
}

TEST_CASE("so_reality: dim 2 split form over Q is not real (Lemma 3.4.4)") {
  Field Q = Field::rationals();
  FormData q{Mat::from_ints(Q, {{0, 1}, {1, 0}}), FormFlavor::Symmetric};
  Mat t(Q, 2, 2);
  t.at(0, 0) = Q.from_int(2);
  t.at(1, 1) = Q.from_rat(mpq_class(1, 2));
  auto r = so_reality(q, t);
  CHECK(r.real.state == VerdictState::No);
  CHECK(r.real.obstruction->kind == Obstruction::Kind::DeterminantParity);
}

TEST_CASE("so_reality: split dim 6 over F5 with +-1 eigenvalues") {
  Field F5 = Field::prime(5);
  FormData q = split_symmetric_form(F5, 6);
  // t = diag on the hyperbolic pairs: eigenvalues 2, 3=2^-1, 1, 1, 4, 4
  // built inside SO(q): pair coordinates (i, 5-i)
  Mat t(F5, 6, 6);
  t.at(0, 0) = F5.from_int(2);
  t.at(5, 5) = F5.from_int(3);
  t.at(1, 1) = F5.from_int(1);
  t.at(4, 4) = F5.from_int(1);
  t.at(2, 2) = F5.from_int(4);
  t.at(3, 3) = F5.from_int(4);
  GroupSpec so = GroupSpec::special_orth(q.gram);
  REQUIRE(contains(so, t));
  auto r = so_reality(q, t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  verify_report(r);
}

TEST_CASE("so_reality: split dim 4 over F5, eigenvalues 2,3 twice (Lemma 3.4.5)") {
  Field F5 = Field::prime(5);
  FormData q = split_symmetric_form(F5, 4);
  Mat t(F5, 4, 4);
  t.at(0, 0) = F5.from_int(2);
  t.at(1, 1) = F5.from_int(2);
  t.at(2, 2) = F5.from_int(3);
  t.at(3, 3) = F5.from_int(3);
  GroupSpec so = GroupSpec::special_orth(q.gram);
  REQUIRE(contains(so, t));
  auto r = so_reality(q, t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  verify_report(r);
}

TEST_CASE("o_reality: every semisimple orthogonal element is strongly real (Prop 3.4.1)") {
  // sample isometries of small split forms over F3/F5 by random conjugation
  // of diagonal isometries
  std::mt19937_64 rng(77);
  for (uint64_t pq : {3ull, 5ull}) {
    Field f = Field::prime(pq);
    FormData q = split_symmetric_form(f, 4);
    GroupSpec og = GroupSpec::orth(q.gram);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 12; ++trial) {
      Mat m(f, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = f.nth_element(rng() % f.size());
      if (!invertible(m) || !contains(og, m)) continue;
      if (!is_semisimple(m)) continue;
      auto r = o_reality(q, m);
      CHECK(r.real.state == VerdictState::Yes);
      CHECK(r.strongly_real.state == VerdictState::Yes);
      verify_report(r);
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("sp_conjugator: spec examples") {
  Field F5 = Field::prime(5);
  Mat J4 = standard_symplectic_gram(F5, 4);
  FormData jf{J4, FormFlavor::Alternating};

  // t = I: any s = diag(N, ..., N) works
  auto r1 = sp_conjugator(jf, Mat::identity(F5, 4), SpTarget::Inverse);
  REQUIRE(r1.state == VerdictState::Yes);
  CHECK(*r1.s * *r1.s == -Mat::identity(F5, 4));

  // t = diag(2,3,2,3) w.r.t. diag(N,N)
  Mat t = Mat::diag(F5, {F5.from_int(2), F5.from_int(3), F5.from_int(2), F5.from_int(3)});
  GroupSpec sp = GroupSpec::symplectic(J4);
  REQUIRE(contains(sp, t));
  auto r2 = sp_conjugator(jf, t, SpTarget::Inverse);
  REQUIRE(r2.state == VerdictState::Yes);
  CHECK(*r2.s * *r2.s == -Mat::identity(F5, 4));
  CHECK(*r2.s * t * inverse(*r2.s) == inverse(t));
  CHECK(contains(sp, *r2.s));

  // negated inverse over F13: t = diag(2, 7, 11, 6) = diag(l, l^-1, -l, -l^-1)
  Field F13 = Field::prime(13);
  Mat J13 = standard_symplectic_gram(F13, 4);
  FormData jf13{J13, FormFlavor::Alternating};
  Mat tn = Mat::diag(F13, {F13.from_int(2), F13.from_int(7), F13.from_int(11), F13.from_int(6)});
  GroupSpec sp13 = GroupSpec::symplectic(J13);
  REQUIRE(contains(sp13, tn));
  auto r3 = sp_conjugator(jf13, tn, SpTarget::NegatedInverse);
  REQUIRE(r3.state == VerdictState::Yes);
  CHECK(*r3.s * *r3.s == -Mat::identity(F13, 4));
  CHECK(*r3.s * tn * inverse(*r3.s) == -inverse(tn));
  CHECK(contains(sp13, *r3.s));
}

TEST_CASE("sp_conjugator: nonsplit torus (irreducible minpoly) over F3") {
  // element of Sp(2, F3) = SL(2, F3) with irreducible characteristic polynomial
  Field F3 = Field::prime(3);
  Mat J = standard_symplectic_gram(F3, 2);
  FormData jf{J, FormFlavor::Alternating};
  Mat t = Mat::from_ints(F3, {{0, -1}, {1, 1}});  // char X^2 - X + 1
  GroupSpec sp = GroupSpec::symplectic(J);
  REQUIRE(contains(sp, t));
  REQUIRE(is_semisimple(t));
  auto r = sp_conjugator(jf, t, SpTarget::Inverse);
  REQUIRE(r.state == VerdictState::Yes);
  CHECK(*r.s * *r.s == -Mat::identity(F3, 2));
  CHECK(contains(sp, *r.s));
  CHECK(*r.s * t * inverse(*r.s) == inverse(t));
}

TEST_CASE("sp_reality: Sp(4) remark - real but not strongly real") {
  Field F7 = Field::prime(7);
  Mat J = standard_symplectic_gram(F7, 4);
  FormData jf{J, FormFlavor::Alternating};
  Mat s = Mat::diag(F7, {F7.from_int(2), F7.from_int(4), F7.from_int(3), F7.from_int(5)});
  auto r = sp_reality(jf, s);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::No);
  verify_report(r);
}

TEST_CASE("projective_reality: PSL2 spec examples") {
  Field F5 = Field::prime(5);
  GroupSpec psl2_5 = GroupSpec::projective(GroupSpec::sl(F5, 2));
  // diag(2,3) in PSL2(F5): 2^2 = -1 so t^2 = -I: t is an involution mod center
  Mat t = Mat::diag(F5, {F5.from_int(2), F5.from_int(3)});
  auto r = projective_reality(psl2_5, t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  verify_report(r);

  Field F7 = Field::prime(7);
  GroupSpec psl2_7 = GroupSpec::projective(GroupSpec::sl(F7, 2));
  Mat u = Mat::from_ints(F7, {{1, 1}, {0, 1}});
  auto r2 = projective_reality(psl2_7, u);
  CHECK(r2.real.state == VerdictState::No);
  CHECK(r2.strongly_real.state == VerdictState::No);

  // the same unipotent IS real (hence strongly real) in PSL2(F5)
  Mat u5 = Mat::from_ints(F5, {{1, 1}, {0, 1}});
  auto r3 = projective_reality(psl2_5, u5);
  CHECK(r3.real.state == VerdictState::Yes);
  CHECK(r3.strongly_real.state == VerdictState::Yes);
  verify_report(r3);
}

TEST_CASE("projective_reality: PSp(4, F5) diag(2,3,2,3)") {
  Field F5 = Field::prime(5);
  Mat J = standard_symplectic_gram(F5, 4);
  GroupSpec psp = GroupSpec::projective(GroupSpec::symplectic(J));
  Mat t = Mat::diag(F5, {F5.from_int(2), F5.from_int(3), F5.from_int(2), F5.from_int(3)});
  auto r = projective_reality(psp, t);
  CHECK(r.real.state == VerdictState::Yes);
  CHECK(r.strongly_real.state == VerdictState::Yes);
  verify_report(r);
}

TEST_CASE("jordan_reality_gl: Example 1 and friends") {
  Field F5 = Field::prime(5);
  Mat g = example1_matrix(F5);
  auto r = jordan_reality_gl(g);
  CHECK(r.real.state == VerdictState::No);
  CHECK(r.strongly_real.state == VerdictState::No);

  // semisimple real: reduces to gl_reality
  Field Q = Field::rationals();
  Mat d(Q, 2, 2);
  d.at(0, 0) = Q.from_int(2);
  d.at(1, 1) = Q.from_rat(mpq_class(1, 2));
  auto r2 = jordan_reality_gl(d);
  CHECK(r2.real.state == VerdictState::Yes);
  verify_report(r2);

  // unipotent [[1,1],[0,1]] over Q in GL2: conjugator diag(1,-1)
  Mat u = Mat::from_ints(Q, {{1, 1}, {0, 1}});
  auto r3 = jordan_reality_gl(u);
  CHECK(r3.real.state == VerdictState::Yes);
  CHECK(r3.strongly_real.state == VerdictState::Yes);
  verify_report(r3);
}

TEST_CASE("Lemma 2.2.1 equivalence: jordan route agrees with gl_reality") {
  std::mt19937_64 rng(2718);
  Field F3 = Field::prime(3), F5 = Field::prime(5);
  // all of GL2(F3)
  int checked = 0;
  for (uint64_t code = 0; code < 81; ++code) {
    uint64_t c = code;
    Mat m(F3, 2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        m.at(i, j) = F3.from_int(static_cast<long long>(c % 3));
        c /= 3;
      }
    if (!invertible(m)) continue;
    auto a = gl_reality(m);
    auto b = jordan_reality_gl(m);
    CHECK(a.real.state == b.real.state);
    ++checked;
  }
  CHECK(checked == 48);
  // random GL4(F5)
  for (int trial = 0; trial < 25; ++trial) {
    Mat m = random_invertible(F5, 4, rng);
    auto a = gl_reality(m);
    auto b = jordan_reality_gl(m);
    CHECK(a.real.state == b.real.state);
  }
}

TEST_CASE("Lemma 3.4.4/3.4.5 determinant laws via the conjugator parametrization") {
  // t = diag(l * I_m, l^-1 * I_m) w.r.t. [[0, S], [S, 0]]: orthogonal
  // conjugators are antidiag(B, S tB^-1 S^-1) with det (-1)^m exactly
  std::mt19937_64 rng(31);
  for (int m : {1, 2, 3}) {
    for (const char* which : {"F5", "Q"}) {
      Field f = which[0] == 'F' ? Field::prime(5) : Field::rationals();
      FormData q = split_symmetric_form(f, 2 * m);
      Mat S(f, m, m);
      for (int i = 0; i < m; ++i) S.at(i, m - 1 - i) = f.one();
      FieldElement lam = f.from_int(2);
      Mat t(f, 2 * m, 2 * m);
      for (int i = 0; i < m; ++i) t.at(i, i) = lam;
      for (int i = m; i < 2 * m; ++i) t.at(i, i) = lam.inv();
      GroupSpec og = GroupSpec::orth(q.gram);
      REQUIRE(contains(og, t));
      for (int trial = 0; trial < 25; ++trial) {
        Mat B(f, m, m);
        do {
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              B.at(i, j) = f.finite() ? f.nth_element(rng() % f.size())
                                      : f.from_int(static_cast<long long>(rng() % 9) - 4);
        } while (!invertible(B));
        Mat C = S * inverse(B.transpose()) * inverse(S);
        Mat g(f, 2 * m, 2 * m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            g.at(i, m + j) = B.at(i, j);
            g.at(m + i, j) = C.at(i, j);
          }
        REQUIRE(contains(og, g));
        REQUIRE(g * t * inverse(g) == inverse(t));
        CHECK(det(g) == f.from_int(m % 2 ? -1 : 1));
      }
    }
  }
}
