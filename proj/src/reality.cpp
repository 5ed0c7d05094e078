#include "birefl/reality.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "birefl/fp.hpp"

namespace birefl {

std::string Obstruction::name() const {
  switch (kind) {
    case Kind::NonReciprocalInvariantFactor: return "NonReciprocalInvariantFactor";
    case Kind::DeterminantParity: return "DeterminantParity";
    case Kind::NormObstruction: return "NormObstruction";
    case Kind::MinusOneNotSquare: return "MinusOneNotSquare";
    case Kind::NoGroupConjugator: return "NoGroupConjugator";
    case Kind::CentralizerDetObstruction: return "CentralizerDetObstruction";
  }
  return "Obstruction";
}

bool is_involution(const Mat& m) {
  return m.is_square() && m * m == Mat::identity(m.field(), m.rows());
}

void verify_report(const RealityReport& r) {
  const Mat& t = r.element;
  bool projective = r.spec.kind == GroupKind::Projective;
  const GroupSpec& memb = projective ? *r.spec.inner : r.spec;
  Field f = t.field();
  Mat tinv = inverse(t);
  auto eq = [&](const Mat& a, const Mat& b) {
    return projective ? projectively_equal(a, b) : a == b;
  };
  if (r.real.state == VerdictState::Yes) {
    const Mat& g = *r.real.conjugator;
    if (!contains(memb, g)) throw Error(Errc::NotInGroup, "witness conjugator not in group");
    if (!eq(g * t * inverse(g), tinv))
      throw Error(Errc::BadInput, "witness conjugator fails g t g^-1 = t^-1");
  }
  if (r.strongly_real.state == VerdictState::Yes) {
    const Mat& s = *r.strongly_real.sigma;
    const Mat& u = *r.strongly_real.tau;
    Mat id = Mat::identity(f, t.rows());
    if (!contains(memb, s) || !contains(memb, u))
      throw Error(Errc::NotInGroup, "involution witness not in group");
    if (!eq(s * s, id) || !eq(u * u, id))
      throw Error(Errc::BadInput, "witness not an involution");
    if (!eq(s * u, t)) throw Error(Errc::BadInput, "sigma tau != t");
    if (r.real.state == VerdictState::No)
      throw Error(Errc::BadInput, "strongly real but not real");
  }
}

// ---------------- Wonenburger construction ----------------

namespace {

Vector poly_apply_vec(const Poly& p, const Mat& t, const Vector& v) {
  Field f = t.field();
  Vector r(v.size(), f.zero());
  for (int i = p.degree(); i >= 0; --i) {
    r = t * r;
    FieldElement c = p.coeff(i);
    if (!c.is_zero())
      for (size_t j = 0; j < v.size(); ++j) r[j] = r[j] + c * v[j];
  }
  return r;
}

struct WonPiece {
  std::vector<Vector> basis;  // piece basis vectors (in V)
  int plus;                   // leading +1 count for the H1 choice
  int minus;                  // trailing -1 count
  bool odd;                   // odd-dimensional piece: sign can be flipped
  int det_h1;                 // det of H1 on this piece: (-1)^minus
};

// Build the V_+ / V_- basis of a cyclic piece with annihilator pw and cyclic
// vector u; pw is (X-1)^r, (X+1)^s, or the (+-1)-free part f.
WonPiece wonenburger_piece(const Mat& t, const Mat& tinv, const Vector& u, const Poly& pw) {
  Field f = t.field();
  int dim = pw.degree();
  WonPiece piece;
  if (dim % 2 == 0) {
    int m = dim / 2;
    Vector y = u;
    for (int i = 0; i < m; ++i) y = t * y;  // y = t^m u
    std::vector<Vector> plus, minus;
    Vector a = y, b = y;  // t^j y and t^-j y
    plus.push_back(y);
    for (int j = 1; j <= m; ++j) {
      a = t * a;
      b = tinv * b;
      Vector sum(a.size(), f.zero()), dif(a.size(), f.zero());
      for (size_t i = 0; i < a.size(); ++i) {
        sum[i] = a[i] + b[i];
        dif[i] = a[i] - b[i];
      }
      if (j <= m - 1) plus.push_back(sum);
      minus.push_back(dif);
    }
    piece.basis = plus;
    piece.basis.insert(piece.basis.end(), minus.begin(), minus.end());
    piece.plus = m;
    piece.minus = m;
    piece.odd = false;
    piece.det_h1 = (m % 2) ? -1 : 1;
  } else {
    int m = (dim - 1) / 2;
    Vector y = u;
    for (int i = 0; i < m; ++i) y = t * y;
    std::vector<Vector> plus, minus;
    plus.push_back(y);
    Vector a = y, b = y;
    for (int j = 1; j <= m; ++j) {
      a = t * a;
      b = tinv * b;
      Vector sum(a.size(), f.zero()), dif(a.size(), f.zero());
      for (size_t i = 0; i < a.size(); ++i) {
        sum[i] = a[i] + b[i];
        dif[i] = a[i] - b[i];
      }
      plus.push_back(sum);
      minus.push_back(dif);
    }
    piece.basis = plus;
    piece.basis.insert(piece.basis.end(), minus.begin(), minus.end());
    piece.plus = m + 1;
    piece.minus = m;
    piece.odd = true;
    piece.det_h1 = (m % 2) ? -1 : 1;
  }
  return piece;
}

}  // namespace

std::pair<Mat, Mat> wonenburger_involutions(const Mat& t, std::optional<int> det_target) {
  Field f = t.field();
  int n = t.rows();
  if (!invertible(t)) throw Error(Errc::Singular, "wonenburger: t not invertible");
  Mat tinv = inverse(t);
  CyclicDecomposition dec = invariant_factors(t);
  for (const auto& b : dec.blocks)
    if (!is_self_reciprocal(b.invariant_factor))
      throw Error(Errc::NotReal, "invariant factor not self-reciprocal");

  std::vector<WonPiece> pieces;
  for (const auto& blk : dec.blocks) {
    const Poly& delta = blk.invariant_factor;
    auto [r, rest1] = root_multiplicity(delta, f.one());
    auto [s, rest] = root_multiplicity(rest1, -f.one());
    Poly xm1 = Poly::linear(f.one()), xp1 = Poly::linear(-f.one());
    std::vector<Poly> parts;
    if (r > 0) {
      Poly pw = Poly::one(f);
      for (int i = 0; i < r; ++i) pw = pw * xm1;
      parts.push_back(pw);
    }
    if (s > 0) {
      Poly pw = Poly::one(f);
      for (int i = 0; i < s; ++i) pw = pw * xp1;
      parts.push_back(pw);
    }
    if (rest.degree() > 0) parts.push_back(rest.monic());
    // CRT idempotents of delta = prod parts; u_part = e_part(t) * generator
    for (const auto& pw : parts) {
      Poly others = delta / pw;
      auto [g, a, b] = xgcd(others, pw);
      if (g.degree() != 0) throw Error(Errc::BadInput, "wonenburger: CRT failed");
      Poly e = (a * others * Poly::constant(g.coeff(0).inv())) % delta;
      Vector u = poly_apply_vec(e, t, blk.generator);
      pieces.push_back(wonenburger_piece(t, tinv, u, pw));
    }
  }

  // sign bookkeeping: even pieces have forced determinant, odd pieces offer a
  // +-1 choice each
  int forced = 1;
  int odd_count = 0;
  for (const auto& p : pieces) {
    forced *= p.det_h1;
    if (p.odd) ++odd_count;
  }
  std::vector<bool> flip(pieces.size(), false);
  if (det_target) {
    int target = *det_target;
    if (forced != target) {
      bool done = false;
      for (size_t i = 0; i < pieces.size() && !done; ++i)
        if (pieces[i].odd) {
          flip[i] = true;
          done = true;
        }
      if (!done)
        throw Error(Errc::DeterminantUnachievable,
                    "all pieces even-dimensional; determinant is forced to " +
                        std::string(forced == 1 ? "+1" : "-1"));
    }
  }

  std::vector<Vector> cols;
  Vector diag;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    FieldElement plus = flip[i] ? -f.one() : f.one();
    FieldElement minus = -plus;
    for (int j = 0; j < p.plus; ++j) diag.push_back(plus);
    for (int j = 0; j < p.minus; ++j) diag.push_back(minus);
    for (const auto& v : p.basis) cols.push_back(v);
  }
  Mat B = Mat::from_columns(f, cols);
  if (static_cast<int>(cols.size()) != n || !invertible(B))
    throw Error(Errc::BadInput, "wonenburger: assembled basis is not a basis");
  Mat sigma = B * Mat::diag(f, diag) * inverse(B);
  Mat tau = sigma * t;
  if (!is_involution(sigma) || !is_involution(tau))
    throw Error(Errc::BadInput, "wonenburger: constructed maps are not involutions");
  if (!(sigma * t * sigma == tinv))
    throw Error(Errc::BadInput, "wonenburger: sigma t sigma != t^-1");
  if (det_target && det(sigma) != f.from_int(*det_target))
    throw Error(Errc::BadInput, "wonenburger: determinant target missed");
  return {sigma, tau};
}

RealityReport gl_reality(const Mat& t) {
  Field f = t.field();
  GroupSpec spec = GroupSpec::gl(f, t.rows());
  if (!invertible(t)) throw Error(Errc::Singular, "gl_reality: singular input");
  CyclicDecomposition dec = invariant_factors(t);
  for (const auto& b : dec.blocks) {
    if (!is_self_reciprocal(b.invariant_factor)) {
      Obstruction o{Obstruction::Kind::NonReciprocalInvariantFactor, b.invariant_factor,
                    {},
                    "invariant factor " + b.invariant_factor.str() + " is not self-reciprocal"};
      RealityReport r{spec, t, RealVerdict::no(o), StrongVerdict::no(o), {"W66"}};
      return r;
    }
  }
  auto [sigma, tau] = wonenburger_involutions(t, std::nullopt);
  RealityReport r{spec, t, RealVerdict::yes(sigma), StrongVerdict::yes(sigma, tau),
                  {"W66", "Thm3.1.1"}};
  verify_report(r);
  return r;
}

// ---------------- SL(n) ----------------

namespace {

// Search the coset g0 * span(Z) for members satisfying pred. Exhaustive over
// finite fields when |F|^dim(Z) <= bound; otherwise a bounded deterministic +
// seeded search. Returns (definitive, witness).
std::pair<bool, std::optional<Mat>> coset_search(
    const Mat& g0, const std::vector<Mat>& zbasis, uint64_t bound, uint64_t seed,
    const std::function<bool(const Mat&)>& pred) {
  Field f = g0.field();
  if (pred(g0)) return {true, g0};
  if (zbasis.empty()) return {true, std::nullopt};
  if (f.finite()) {
    uint64_t q = f.size();
    uint64_t total = 1;
    bool fits = true;
    for (size_t i = 0; i < zbasis.size(); ++i) {
      if (total > bound / q + 1) { fits = false; break; }
      total *= q;
      if (total > bound) { fits = false; break; }
    }
    if (fits) {
      std::optional<Mat> found;
      for_each_combination(zbasis, bound, [&](const Mat& z) {
        Mat g = g0 * z;
        if (pred(g)) {
          found = g;
          return false;
        }
        return true;
      });
      return {true, found};
    }
  }
  // bounded non-exhaustive search
  std::mt19937_64 rng(seed);
  auto sample_scalar = [&]() {
    if (f.finite()) return f.nth_element(rng() % f.size());
    return f.from_int(static_cast<long long>(rng() % 11) - 5);
  };
  for (const auto& z : zbasis) {
    Mat g = g0 * z;
    if (pred(g)) return {false, g};
  }
  for (int trial = 0; trial < 2000; ++trial) {
    Mat z = Mat::zero(f, g0.rows(), g0.cols());
    for (const auto& zb : zbasis) z = z + zb * sample_scalar();
    Mat g = g0 * z;
    if (pred(g)) return {false, g};
  }
  return {false, std::nullopt};
}

struct Det1Scan {
  bool definitive = false;
  std::optional<Mat> any;         // some det-1 coset member
  std::optional<Mat> involution;  // some det-1 involution in the coset
};

// One pass over the coset g0 * span(zbasis) collecting a det-1 member and a
// det-1 involution. Exhaustive (definitive) when the space fits the bound;
// prime fields run on the raw residue path.
Det1Scan scan_det1_coset(const Mat& g0, const std::vector<Mat>& zbasis, uint64_t bound,
                         uint64_t seed) {
  Field f = g0.field();
  Det1Scan out;
  if (f.kind() == FieldKind::Prime) {
    FpMat g0f = FpMat::from(g0);
    std::vector<FpMat> zb;
    zb.reserve(zbasis.size());
    for (const auto& z : zbasis) zb.push_back(FpMat::from(z));
    std::optional<FpMat> any, inv;
    bool complete = fp_coset_scan(g0f, zb, bound, [&](const FpMat& g) {
      if (g.det() != 1) return true;
      if (!any) any = g;
      if (!inv && g.mul(g).is_identity()) inv = g;
      return !(any && inv);
    });
    if (complete) {
      out.definitive = true;
      if (any) out.any = any->to_mat(f);
      if (inv) out.involution = inv->to_mat(f);
      return out;
    }
  } else if (f.finite()) {
    uint64_t q = f.size(), total = 1;
    bool fits = true;
    for (size_t i = 0; i < zbasis.size(); ++i) {
      if (total > bound / q + 1) { fits = false; break; }
      total *= q;
      if (total > bound) { fits = false; break; }
    }
    if (fits) {
      for_each_combination(zbasis, bound, [&](const Mat& z) {
        Mat g = g0 * z;
        if (!det(g).is_one()) return true;
        if (!out.any) out.any = g;
        if (!out.involution && is_involution(g)) out.involution = g;
        return !(out.any && out.involution);
      });
      out.definitive = true;
      return out;
    }
  }
  // bounded non-exhaustive attempts
  std::mt19937_64 rng(seed ^ 0x51c4);
  auto scal = [&]() {
    return f.finite() ? f.nth_element(rng() % f.size())
                      : f.from_int(static_cast<long long>(rng() % 11) - 5);
  };
  auto consider = [&](const Mat& g) {
    if (!det(g).is_one()) return;
    if (!out.any) out.any = g;
    if (!out.involution && is_involution(g)) out.involution = g;
  };
  consider(g0);
  for (const auto& z : zbasis) consider(g0 * z);
  for (int trial = 0; trial < 2000 && !(out.any && out.involution); ++trial) {
    Mat z = Mat::zero(f, g0.rows(), g0.cols());
    for (const auto& zb : zbasis) z = z + zb * scal();
    consider(g0 * z);
  }
  return out;
}

// Find an involution in the coset lying in the group (form-preserving).
std::pair<bool, std::optional<Mat>> scan_group_involution(const Mat& g0,
                                                          const std::vector<Mat>& zbasis,
                                                          const GroupSpec& spec,
                                                          uint64_t bound, uint64_t seed) {
  Field f = g0.field();
  if (f.kind() == FieldKind::Prime && spec.form) {
    FpMat g0f = FpMat::from(g0);
    FpMat gram = FpMat::from(spec.form->gram);
    std::vector<FpMat> zb;
    for (const auto& z : zbasis) zb.push_back(FpMat::from(z));
    std::optional<FpMat> found;
    bool complete = fp_coset_scan(g0f, zb, bound, [&](const FpMat& g) {
      if (!g.mul(g).is_identity()) return true;
      if (!(g.transpose().mul(gram).mul(g) == gram)) return true;
      found = g;
      return false;
    });
    if (complete) return {true, found ? std::optional<Mat>(found->to_mat(f)) : std::nullopt};
  }
  GroupSpec s = spec;
  return coset_search(g0, zbasis, bound, seed, [s](const Mat& g) {
    return invertible(g) && is_involution(g) && contains(s, g);
  });
}

}  // namespace

SlConjugacy sl_conjugate(const Mat& a, const Mat& b, uint64_t bound) {
  auto g0 = are_conjugate(a, b);
  if (!g0) return {VerdictState::No, {}, "not conjugate in GL"};
  if (det(*g0).is_one()) return {VerdictState::Yes, g0, ""};
  auto zbasis = conjugator_space(a).centralizer;
  Det1Scan scan = scan_det1_coset(*g0, zbasis, bound, 0);
  if (scan.any) return {VerdictState::Yes, scan.any, ""};
  if (scan.definitive) return {VerdictState::No, {}, "no determinant-1 conjugator in the coset"};
  return {VerdictState::Unknown, {}, "coset search exceeded the bound"};
}

RealityReport sl_reality(const Mat& t, uint64_t bound, uint64_t seed) {
  Field f = t.field();
  int n = t.rows();
  GroupSpec spec = GroupSpec::sl(f, n);
  if (!det(t).is_one()) throw Error(Errc::DetNotOne, "sl_reality: det t != 1");
  RealityReport r{spec, t, RealVerdict::unknown(""), StrongVerdict::unknown(""), {}};

  CyclicDecomposition dec = invariant_factors(t);
  for (const auto& blk : dec.blocks) {
    if (!is_self_reciprocal(blk.invariant_factor)) {
      Obstruction o{Obstruction::Kind::NonReciprocalInvariantFactor, blk.invariant_factor,
                    {},
                    "invariant factor " + blk.invariant_factor.str() + " is not self-reciprocal"};
      r.real = RealVerdict::no(o);
      r.strongly_real = StrongVerdict::no(o);
      r.notes.push_back("W66");
      return r;
    }
  }

  try {
    auto [sigma, tau] = wonenburger_involutions(t, 1);
    r.real = RealVerdict::yes(sigma);
    r.strongly_real = StrongVerdict::yes(sigma, tau);
    r.notes.push_back("Thm3.1.1");
    verify_report(r);
    return r;
  } catch (const Error& e) {
    if (e.code() != Errc::DeterminantUnachievable) throw;
  }

  // All pieces even-dimensional and the forced determinant is -1 (so n = 2 mod 4).
  r.notes.push_back("Thm3.1.1");
  Mat id = Mat::identity(f, n);

  // Remark 2 pattern: nontrivial (-+)unipotent in SL2. Conjugators are
  // [[a, b], [0, -a]] up to conjugation; an SL member needs a^2 = -1 and no
  // member is an involution.
  bool remark2 = (n == 2) && (is_unipotent(t) || is_unipotent(-t)) && !t.is_scalar();
  if (remark2) {
    r.notes.push_back("Rem3.1.2");
    if (auto a = is_square(-f.one())) {
      // conjugate the standard witness diag(a, -a) along the unipotent frame:
      // pick v with (t - I) v != 0 (or (t + I) for -unipotent)
      Mat u = is_unipotent(t) ? t : -t;
      Mat nmat = u - id;
      Vector v;
      for (int i = 0; i < n; ++i) {
        Vector cand(static_cast<size_t>(n), f.zero());
        cand[static_cast<size_t>(i)] = f.one();
        Vector w = nmat * cand;
        bool nz = false;
        for (const auto& x : w) nz = nz || !x.is_zero();
        if (nz) { v = cand; break; }
      }
      Mat frame = Mat::from_columns(f, {nmat * v, v});
      Mat g = frame * Mat::diag(f, {*a, -*a}) * inverse(frame);
      r.real = RealVerdict::yes(g);
    } else {
      r.real = RealVerdict::no(Obstruction{Obstruction::Kind::MinusOneNotSquare, {}, {},
                                           "-1 is not a square in " + f.name()});
    }
    r.strongly_real = StrongVerdict::no(
        Obstruction{Obstruction::Kind::NoGroupConjugator, {}, {},
                    "every conjugator squares to a scalar a^2 with a^2 = -1 required for "
                    "SL membership; no involution exists"});
    verify_report(r);
    return r;
  }

  auto [sigma0, tau0] = wonenburger_involutions(t, std::nullopt);
  (void)tau0;
  auto zbasis = conjugator_space(t).centralizer;
  Det1Scan scan = scan_det1_coset(sigma0, zbasis, bound, seed);

  if (scan.any) r.real = RealVerdict::yes(*scan.any);
  else if (scan.definitive)
    r.real = RealVerdict::no(Obstruction{
        Obstruction::Kind::CentralizerDetObstruction, {}, {},
        "exhaustive coset scan: centralizer determinant image misses det(g0)^-1"});
  else r.real = RealVerdict::unknown("coset search exceeded the bound");

  if (scan.involution)
    r.strongly_real = StrongVerdict::yes(*scan.involution, *scan.involution * t);
  else if (scan.definitive)
    r.strongly_real = StrongVerdict::no(Obstruction{
        Obstruction::Kind::CentralizerDetObstruction, {}, {},
        "exhaustive coset scan: no determinant-1 involution conjugates t to t^-1"});
  else r.strongly_real = StrongVerdict::unknown("coset search exceeded the bound");
  r.notes.push_back("beyond-paper: n = 2 (mod 4) strong reality by coset scan");
  verify_report(r);
  return r;
}

// ---------------- isometry machinery (SO / Sp) ----------------

namespace {

struct FAlgebra {
  Field k;
  Poly p;  // irreducible, p(0) != 0
  int d;
  Mat trace_gram;  // Tr(X^{i+j}) for i, j < d
  Poly xinv;       // X^-1 mod p

  explicit FAlgebra(const Poly& poly) : k(poly.field()), p(poly), d(poly.degree()) {
    Mat c = Mat::companion(p);
    Mat pw = Mat::identity(k, d);
    std::vector<FieldElement> tr;
    for (int m = 0; m <= 2 * d - 2; ++m) {
      FieldElement s = k.zero();
      for (int i = 0; i < d; ++i) s = s + pw.at(i, i);
      tr.push_back(s);
      pw = pw * c;
    }
    trace_gram = Mat(k, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) trace_gram.at(i, j) = tr[static_cast<size_t>(i + j)];
    auto [g, s, t] = xgcd(Poly::x(k), p);
    if (g.degree() != 0) throw Error(Errc::ZeroConstantTerm, "FAlgebra: p(0) = 0");
    xinv = (s * Poly::constant(g.coeff(0).inv())) % p;
  }

  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % p; }
  Poly inv(const Poly& a) const {
    auto [g, s, t] = xgcd(a % p, p);
    if (g.degree() != 0) throw Error(Errc::ZeroInput, "FAlgebra: inverse of zero");
    return (s * Poly::constant(g.coeff(0).inv())) % p;
  }
  // a(X^-1) mod p; a field involution when p is self-reciprocal
  Poly bar(const Poly& a) const { return compose_mod(a, xinv, p); }
  // a(-X^-1) mod p; a field involution when p is self-#
  Poly bar_neg(const Poly& a) const { return compose_mod(a, -xinv, p); }
  // a(-X) mod p
  Poly neg_sub(const Poly& a) const { return compose_mod(a, -Poly::x(k), p); }

  // enumerate all elements (finite base field), visit -> false stops
  bool enumerate(const std::function<bool(const Poly&)>& visit) const {
    if (!k.finite()) return false;
    uint64_t q = k.size();
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
      if (total > (uint64_t{1} << 40) / q) return false;
      total *= q;
    }
    for (uint64_t idx = 0; idx < total; ++idx) {
      uint64_t rem = idx;
      std::vector<FieldElement> c;
      for (int i = 0; i < d; ++i) {
        c.push_back(k.nth_element(rem % q));
        rem /= q;
      }
      if (!visit(Poly(k, std::move(c)))) return true;
    }
    return true;
  }
};

struct IsoCtx {
  Field f;
  Mat t, tinv, gram;
  bool alternating;

  FieldElement b(const Vector& x, const Vector& y) const {
    Vector gy = gram * y;
    FieldElement s = f.zero();
    for (size_t i = 0; i < x.size(); ++i) s = s + x[i] * gy[i];
    return s;
  }
};

// F-sesquilinear lift of B on a primary piece: h(x, y) in F = k[X]/(p) with
// Tr(a h(x, y)) = B(a(t) x, y).
Poly h_form(const IsoCtx& c, const FAlgebra& F, const Vector& x, const Vector& y) {
  Vector ell;
  Vector cur = x;
  for (int i = 0; i < F.d; ++i) {
    ell.push_back(c.b(cur, y));
    cur = c.t * cur;
  }
  auto sol = solve(F.trace_gram, ell);
  if (!sol) throw Error(Errc::BadInput, "h_form: trace gram singular");
  return Poly(c.f, *sol);
}

// Greedy F-basis of the column space of `basis` (every nonzero vector has
// annihilator exactly p).
std::vector<Vector> f_basis(const IsoCtx& c, const FAlgebra& F, const Mat& basis) {
  Field f = c.f;
  int n = c.t.rows();
  std::vector<Vector> gens;
  Mat accum(f, n, 0);
  for (int j = 0; j < basis.cols() && accum.cols() < basis.cols(); ++j) {
    Vector v = basis.column(j);
    // v independent of accum?
    if (accum.cols() > 0) {
      auto sol = solve(accum, v);
      if (sol) continue;
    }
    gens.push_back(v);
    // extend accum by the Krylov chain of v
    Vector cur = v;
    for (int i = 0; i < F.d; ++i) {
      accum = accum.hstack(Mat::from_columns(f, {cur}));
      cur = c.t * cur;
    }
  }
  if (accum.cols() != basis.cols() || rank(accum) != basis.cols())
    throw Error(Errc::BadInput, "f_basis: span mismatch");
  return gens;
}

// h-orthogonalize the F-basis in place (hermitian or skew-hermitian h).
void h_orthogonalize(const IsoCtx& c, const FAlgebra& F, std::vector<Vector>& w,
                     uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eed);
  for (size_t j = 0; j < w.size(); ++j) {
    Poly gj = h_form(c, F, w[j], w[j]);
    if (gj.is_zero()) {
      bool fixed = false;
      for (size_t l = j + 1; l < w.size() && !fixed; ++l) {
        for (int s = 0; s < F.d && !fixed; ++s) {
          std::vector<FieldElement> cc(static_cast<size_t>(s) + 1, c.f.zero());
          cc[static_cast<size_t>(s)] = c.f.one();
          Vector cand = w[j];
          Vector adj = poly_apply_vec(Poly(c.f, cc), c.t, w[l]);
          for (size_t i = 0; i < cand.size(); ++i) cand[i] = cand[i] + adj[i];
          if (!h_form(c, F, cand, cand).is_zero()) {
            w[j] = cand;
            fixed = true;
          }
        }
      }
      for (int trial = 0; trial < 500 && !fixed; ++trial) {
        Vector cand = w[j];
        for (size_t l = j + 1; l < w.size(); ++l) {
          std::vector<FieldElement> cc;
          for (int i = 0; i < F.d; ++i)
            cc.push_back(c.f.finite() ? c.f.nth_element(rng() % c.f.size())
                                      : c.f.from_int(static_cast<long long>(rng() % 7) - 3));
          Vector adj = poly_apply_vec(Poly(c.f, cc), c.t, w[l]);
          for (size_t i = 0; i < cand.size(); ++i) cand[i] = cand[i] + adj[i];
        }
        if (!h_form(c, F, cand, cand).is_zero()) {
          w[j] = cand;
          fixed = true;
        }
      }
      if (!fixed) throw Error(Errc::BadInput, "h_orthogonalize: no anisotropic vector found");
      gj = h_form(c, F, w[j], w[j]);
    }
    Poly gj_inv = F.inv(gj);
    for (size_t l = j + 1; l < w.size(); ++l) {
      Poly coef = F.mul(h_form(c, F, w[l], w[j]), gj_inv);
      if (coef.is_zero()) continue;
      Vector adj = poly_apply_vec(coef, c.t, w[j]);
      for (size_t i = 0; i < adj.size(); ++i) w[l][i] = w[l][i] - adj[i];
    }
  }
}

struct PiecePair {
  std::vector<Vector> domain;  // basis vectors
  std::vector<Vector> image;   // sigma(domain[i])
};

// Invertible solution F of F T1 = R2 F with (R F)^T G P symmetric, i.e.
// F^T K = K^T F for K = R^T G P. Returns the coordinate matrix.
std::optional<Mat> paired_swap_matrix(const Field& f, const Mat& P, const Mat& R,
                                      const Mat& T1, const Mat& R2, const Mat& K,
                                      uint64_t seed) {
  int d = T1.rows();
  Mat sys(f, 2 * d * d, d * d);
  // eq1(i,j): sum_b F_{ib} T1_{bj} - sum_a R2_{ia} F_{aj} = 0
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int row = i * d + j;
      for (int b = 0; b < d; ++b)
        sys.at(row, i * d + b) = sys.at(row, i * d + b) + T1.at(b, j);
      for (int a = 0; a < d; ++a)
        sys.at(row, a * d + j) = sys.at(row, a * d + j) - R2.at(i, a);
    }
  // eq2(i,j): sum_a (F_{ai} K_{aj} - K_{ai} F_{aj}) = 0
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int row = d * d + i * d + j;
      for (int a = 0; a < d; ++a) {
        sys.at(row, a * d + i) = sys.at(row, a * d + i) + K.at(a, j);
        sys.at(row, a * d + j) = sys.at(row, a * d + j) - K.at(a, i);
      }
    }
  Mat ker = kernel(sys);
  if (ker.cols() == 0) return std::nullopt;
  std::vector<Mat> basis;
  for (int cidx = 0; cidx < ker.cols(); ++cidx) {
    Mat fm(f, d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) fm.at(a, b) = ker.at(a * d + b, cidx);
    basis.push_back(std::move(fm));
  }
  for (const auto& cand : basis)
    if (invertible(cand)) return cand;
  std::mt19937_64 rng(seed ^ 0xface);
  for (int trial = 0; trial < 400; ++trial) {
    Mat cand = Mat::zero(f, d, d);
    for (const auto& bmat : basis) {
      FieldElement c = f.finite() ? f.nth_element(rng() % f.size())
                                  : f.from_int(static_cast<long long>(rng() % 9) - 4);
      cand = cand + bmat * c;
    }
    if (invertible(cand)) return cand;
  }
  (void)P;
  (void)R;
  return std::nullopt;
}

// Collect (basis, image) for sigma on the pair V_p (+) V_q: sigma(P x) = R F x,
// sigma(R y) = P (eps F^-1 y).
PiecePair make_pair_piece(const Mat& P, const Mat& R, const Mat& F, int eps) {
  PiecePair out;
  Mat RF = R * F;
  Mat PFi = P * inverse(F) * F.field().from_int(eps);
  for (int j = 0; j < P.cols(); ++j) {
    out.domain.push_back(P.column(j));
    out.image.push_back(RF.column(j));
  }
  for (int j = 0; j < R.cols(); ++j) {
    out.domain.push_back(R.column(j));
    out.image.push_back(PFi.column(j));
  }
  return out;
}

// Primary pieces of a semisimple isometry.
struct Primary {
  Poly p;
  Mat basis;  // V_p = ker p(t)
};

std::vector<Primary> primary_pieces(const IsoCtx& c, const std::vector<Poly>& factors) {
  std::vector<Primary> out;
  for (const auto& p : factors) {
    Mat kb = kernel(poly_at(p, c.t));
    if (kb.cols() == 0) throw Error(Errc::BadInput, "primary piece empty");
    out.push_back({p, kb});
  }
  return out;
}

Poly star(const Poly& p) { return reciprocal(p); }

// roots l -> -1/l: monic normalization of X^deg p(-1/X)
Poly sharp(const Poly& p) {
  std::vector<FieldElement> cc;
  for (int i = 0; i <= p.degree(); ++i) {
    FieldElement v = p.coeff(i);
    if (i % 2) v = -v;
    cc.push_back(v);
  }
  Poly pm(p.field(), cc);  // p(-X)
  return reciprocal(pm.monic());
}

// Orthogonal basis of a nondegenerate symmetric subspace (columns of basis).
std::vector<Vector> orth_basis_symmetric(const IsoCtx& c, const Mat& basis) {
  std::vector<Vector> vecs;
  for (int j = 0; j < basis.cols(); ++j) vecs.push_back(basis.column(j));
  std::vector<Vector> out;
  while (!vecs.empty()) {
    // anisotropic vector: some v_i, else v_i + v_j
    int pick = -1;
    for (size_t i = 0; i < vecs.size(); ++i)
      if (!c.b(vecs[i], vecs[i]).is_zero()) { pick = static_cast<int>(i); break; }
    Vector v;
    if (pick >= 0) v = vecs[static_cast<size_t>(pick)];
    else {
      bool found = false;
      for (size_t i = 0; i < vecs.size() && !found; ++i)
        for (size_t j = i + 1; j < vecs.size() && !found; ++j) {
          Vector cand = vecs[i];
          for (size_t k = 0; k < cand.size(); ++k) cand[k] = cand[k] + vecs[j][k];
          if (!c.b(cand, cand).is_zero()) {
            v = cand;
            found = true;
          }
        }
      if (!found) throw Error(Errc::BadInput, "orth_basis: totally isotropic nondegenerate space");
    }
    out.push_back(v);
    FieldElement qv = c.b(v, v);
    // project the rest onto v-perp and re-extract an independent set
    std::vector<Vector> next;
    Mat accum = Mat::from_columns(c.f, {v});
    for (auto& w : vecs) {
      FieldElement coef = c.b(w, v) / qv;
      Vector w2 = w;
      for (size_t k = 0; k < w2.size(); ++k) w2[k] = w2[k] - coef * v[k];
      bool zero = true;
      for (const auto& x : w2) zero = zero && x.is_zero();
      if (zero) continue;
      Mat test = next.empty() ? accum : accum.hstack(Mat::from_columns(c.f, next));
      if (solve(test, w2)) continue;
      next.push_back(w2);
    }
    vecs = std::move(next);
  }
  return out;
}

// Darboux pairs of a nondegenerate alternating subspace.
std::vector<std::pair<Vector, Vector>> darboux_basis(const IsoCtx& c, const Mat& basis) {
  std::vector<Vector> vecs;
  for (int j = 0; j < basis.cols(); ++j) vecs.push_back(basis.column(j));
  std::vector<std::pair<Vector, Vector>> out;
  while (!vecs.empty()) {
    Vector x = vecs[0];
    int yi = -1;
    for (size_t i = 1; i < vecs.size(); ++i)
      if (!c.b(x, vecs[i]).is_zero()) { yi = static_cast<int>(i); break; }
    if (yi < 0) throw Error(Errc::BadInput, "darboux: degenerate piece");
    Vector y = vecs[static_cast<size_t>(yi)];
    FieldElement s = c.b(x, y).inv();
    for (auto& e : y) e = e * s;  // B(x, y) = 1
    out.emplace_back(x, y);
    std::vector<Vector> next;
    Mat accum = Mat::from_columns(c.f, {x, y});
    for (size_t i = 1; i < vecs.size(); ++i) {
      if (static_cast<int>(i) == yi) continue;
      Vector v = vecs[i];
      FieldElement a = c.b(v, y), bb = c.b(v, x);
      // v' = v - B(v,y) x + B(v,x) y
      for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] - a * x[k] + bb * y[k];
      bool zero = true;
      for (const auto& e : v) zero = zero && e.is_zero();
      if (zero) continue;
      Mat test = next.empty() ? accum : accum.hstack(Mat::from_columns(c.f, next));
      if (solve(test, v)) continue;
      next.push_back(v);
    }
    vecs = std::move(next);
  }
  return out;
}

struct WitnessBuild {
  bool ok = false;
  Mat sigma;
  std::string reason;
};

// Assemble a global map from piece data and verify the requested laws.
WitnessBuild assemble(const IsoCtx& c, const std::vector<PiecePair>& pieces,
                      int involution_square /* +1 or -1 */, const Mat& target) {
  Field f = c.f;
  int n = c.t.rows();
  std::vector<Vector> dom, img;
  for (const auto& p : pieces) {
    dom.insert(dom.end(), p.domain.begin(), p.domain.end());
    img.insert(img.end(), p.image.begin(), p.image.end());
  }
  WitnessBuild out;
  if (static_cast<int>(dom.size()) != n) {
    out.reason = "piece dimensions do not fill the space";
    return out;
  }
  Mat B = Mat::from_columns(f, dom);
  if (!invertible(B)) {
    out.reason = "piece bases are not independent";
    return out;
  }
  Mat S = Mat::from_columns(f, img) * inverse(B);
  Mat id = Mat::identity(f, n);
  if (!(S * S == (involution_square > 0 ? id : -id))) {
    out.reason = "assembled map has the wrong square";
    return out;
  }
  if (!(S.transpose() * c.gram * S == c.gram)) {
    out.reason = "assembled map does not preserve the form";
    return out;
  }
  if (!(S * c.t == target * S)) {
    out.reason = "assembled map does not conjugate t to the target";
    return out;
  }
  out.ok = true;
  out.sigma = S;
  return out;
}

}  // namespace

// ---------------- SO(Q) ----------------

namespace {

struct SoBuild {
  VerdictState state = VerdictState::Unknown;
  Mat sigma;
  std::string reason;
  Obstruction obstruction{Obstruction::Kind::DeterminantParity, {}, {}, ""};
  bool has_obstruction = false;
};

// Construct an involution sigma in O(Q) with sigma t sigma^-1 = t^-1 for
// semisimple t; when det_one is requested, fix the determinant using a
// reflection on the (+-1)-eigenspaces (possible iff one is nonzero or the
// forced determinant is already 1).
SoBuild so_witness(const FormData& q, const Mat& t, bool det_one, uint64_t seed) {
  SoBuild out;
  Field f = t.field();
  IsoCtx c{f, t, inverse(t), q.gram, false};
  Poly m = minpoly(t);
  if (gcd(m, m.derivative()).degree() != 0)
    throw Error(Errc::NotSemisimple, "so_witness: t is not semisimple");
  auto fac = factor(m, seed);
  if (!fac.complete()) {
    out.reason = "minimal polynomial not factorable over " + f.name() +
                 " within the supported degree";
    return out;
  }
  std::vector<Poly> polys;
  for (auto& [p, e] : fac.factors) {
    if (e != 1) throw Error(Errc::NotSemisimple, "so_witness: repeated factor");
    polys.push_back(p);
  }
  auto prim = primary_pieces(c, polys);
  std::vector<PiecePair> pieces;
  std::vector<Vector> eig1_basis, eigm1_basis;  // orthogonal bases

  std::vector<bool> used(prim.size(), false);
  for (size_t i = 0; i < prim.size(); ++i) {
    if (used[i]) continue;
    const Poly& p = prim[i].p;
    if (p == Poly::linear(f.one())) {
      eig1_basis = orth_basis_symmetric(c, prim[i].basis);
      used[i] = true;
      continue;
    }
    if (p == Poly::linear(-f.one())) {
      eigm1_basis = orth_basis_symmetric(c, prim[i].basis);
      used[i] = true;
      continue;
    }
    Poly ps = star(p);
    if (ps == p) {
      // self-reciprocal piece: F-lines, sigma(a w) = bar(a) w
      used[i] = true;
      FAlgebra F(p);
      auto gens = f_basis(c, F, prim[i].basis);
      h_orthogonalize(c, F, gens, seed);
      PiecePair pp;
      for (const auto& w : gens) {
        Vector cur = w;
        Poly xpow = Poly::one(f);
        for (int e = 0; e < F.d; ++e) {
          pp.domain.push_back(cur);
          pp.image.push_back(poly_apply_vec(F.bar(xpow), c.t, w));
          cur = c.t * cur;
          xpow = (xpow * Poly::x(f)) % p;
        }
      }
      pieces.push_back(std::move(pp));
      continue;
    }
    // paired piece (p, p*)
    int partner = -1;
    for (size_t j = 0; j < prim.size(); ++j)
      if (!used[j] && prim[j].p == ps) { partner = static_cast<int>(j); break; }
    if (partner < 0) throw Error(Errc::NotInGroup, "so_witness: factors not *-closed");
    used[i] = used[static_cast<size_t>(partner)] = true;
    const Mat& P = prim[i].basis;
    const Mat& R = prim[static_cast<size_t>(partner)].basis;
    Mat T1 = restrict_to(t, P);
    Mat R2 = restrict_to(c.tinv, R);
    Mat K = R.transpose() * c.gram * P;
    auto F = paired_swap_matrix(f, P, R, T1, R2, K, seed);
    if (!F) {
      out.reason = "no invertible symmetric-compatible swap found";
      return out;
    }
    pieces.push_back(make_pair_piece(P, R, *F, +1));
  }

  // (+-1)-eigenspaces: identity by default, sign pattern used to adjust det
  auto eig_piece = [&](const std::vector<Vector>& ob, bool flip_first) {
    PiecePair pp;
    for (size_t j = 0; j < ob.size(); ++j) {
      pp.domain.push_back(ob[j]);
      Vector im = ob[j];
      if (flip_first && j == 0)
        for (auto& x : im) x = -x;
      pp.image.push_back(im);
    }
    return pp;
  };

  for (int attempt = 0; attempt < 2; ++attempt) {
    bool flip = attempt == 1;
    std::vector<PiecePair> all = pieces;
    if (!eig1_basis.empty()) all.push_back(eig_piece(eig1_basis, flip));
    else if (!eigm1_basis.empty()) all.push_back(eig_piece(eigm1_basis, flip));
    else if (flip) break;
    if (!eig1_basis.empty() && !eigm1_basis.empty())
      all.push_back(eig_piece(eigm1_basis, false));
    WitnessBuild wb = assemble(c, all, +1, c.tinv);
    if (!wb.ok) {
      out.reason = wb.reason;
      return out;
    }
    if (!det_one || det(wb.sigma).is_one()) {
      out.state = VerdictState::Yes;
      out.sigma = wb.sigma;
      return out;
    }
  }
  // determinant -1 forced
  out.state = VerdictState::No;
  out.has_obstruction = true;
  out.obstruction = Obstruction{
      Obstruction::Kind::DeterminantParity, {}, {},
      "dim = 2 (mod 4) with no (+-1)-eigenvalue: every orthogonal conjugator has det -1"};
  return out;
}

}  // namespace

RealityReport o_reality(const FormData& q, const Mat& t, uint64_t seed) {
  GroupSpec spec = GroupSpec::orth(q.gram);
  if (!contains(spec, t)) throw Error(Errc::NotInGroup, "o_reality: t not in O(Q)");
  RealityReport r{spec, t, RealVerdict::unknown(""), StrongVerdict::unknown(""), {"Prop3.4.1"}};
  SoBuild b = so_witness(q, t, false, seed);
  if (b.state == VerdictState::Yes) {
    r.real = RealVerdict::yes(b.sigma);
    r.strongly_real = StrongVerdict::yes(b.sigma, b.sigma * t);
    verify_report(r);
  } else {
    r.real = RealVerdict::unknown(b.reason);
    r.strongly_real = StrongVerdict::unknown(b.reason);
  }
  return r;
}

RealityReport so_reality(const FormData& q, const Mat& t, uint64_t seed) {
  GroupSpec spec = GroupSpec::special_orth(q.gram);
  if (!contains(spec, t)) throw Error(Errc::NotInGroup, "so_reality: t not in SO(Q)");
  Poly m = minpoly(t);
  if (gcd(m, m.derivative()).degree() != 0)
    throw Error(Errc::NotSemisimple, "so_reality: t not semisimple");
  int n = t.rows();
  Field f = t.field();
  RealityReport r{spec, t, RealVerdict::unknown(""), StrongVerdict::unknown(""), {}};
  bool dim2mod4 = (n % 4) == 2;
  r.notes.push_back(dim2mod4 ? "Thm3.4.6" : "Prop3.4.3");
  if (dim2mod4) {
    bool has_one = m.eval(f.one()).is_zero();
    bool has_minus = m.eval(-f.one()).is_zero();
    if (!has_one && !has_minus) {
      // per-piece determinant ledger (Lemma 3.4.4 / Thm 3.4.6 proof)
      Obstruction o{Obstruction::Kind::DeterminantParity, {}, {},
                    "dim(V) = 2 (mod 4) and neither 1 nor -1 is an eigenvalue; the "
                    "per-piece determinants force det(g) = -1 for every orthogonal "
                    "conjugator"};
      r.real = RealVerdict::no(o);
      r.strongly_real = StrongVerdict::no(o);
      r.notes.push_back("Lem3.4.4");
      return r;
    }
  }
  SoBuild b = so_witness(q, t, true, seed);
  if (b.state == VerdictState::Yes) {
    r.real = RealVerdict::yes(b.sigma);
    r.strongly_real = StrongVerdict::yes(b.sigma, b.sigma * t);
    verify_report(r);
  } else if (b.state == VerdictState::No) {
    r.real = RealVerdict::no(b.obstruction);
    r.strongly_real = StrongVerdict::no(b.obstruction);
  } else {
    r.real = RealVerdict::unknown(b.reason);
    r.strongly_real = StrongVerdict::unknown(b.reason);
  }
  return r;
}

// ---------------- Sp(2n) ----------------

namespace {

// mu in F with mu * tw(mu) = target, where tw is one of the FAlgebra
// involutions. Finite fields: exhaustive; Q-quadratics: is_norm; else none.
std::optional<Poly> solve_twisted_norm(const FAlgebra& F,
                                       const std::function<Poly(const Poly&)>& tw,
                                       const Poly& target) {
  std::optional<Poly> found;
  if (F.k.finite()) {
    F.enumerate([&](const Poly& mu) {
      if (mu.is_zero()) return true;
      if (F.mul(mu, tw(mu)) == target) {
        found = mu;
        return false;
      }
      return true;
    });
    return found;
  }
  if (F.k.kind() == FieldKind::Rationals && F.d == 2 && target.degree() <= 0) {
    // F = Q[X]/(X^2 + bX + c), involution tw; tw(X) = e0 + e1 X with e1 = -1
    // (otherwise tw = id and the equation is mu^2 = target)
    Poly twx = tw(Poly::x(F.k));
    FieldElement e1 = twx.coeff(1), e0 = twx.coeff(0);
    FieldElement tval = target.is_zero() ? F.k.zero() : target.coeff(0);
    if (e1 == -F.k.one()) {
      // u = 2X - e0 satisfies tw(u) = -u; u^2 = (4*(X^2)... reduce explicitly
      Poly u = Poly::from_ints(F.k, {0, 2}) - Poly::constant(e0);
      Poly u2 = F.mul(u, u);
      if (u2.degree() <= 0) {
        FieldElement dd = u2.is_zero() ? F.k.zero() : u2.coeff(0);
        if (!dd.is_zero() && !is_square(dd)) {
          Field K = Field::quadratic(F.k, dd);
          auto res = is_norm(tval, K);
          if (res.state == NormResult::Found) {
            // preimage a + b sqrt(dd) -> a + b u in F
            const auto& co = res.preimage.coords();
            Poly mu = Poly::constant(co[0]) + u * Poly::constant(co[1]);
            return mu % F.p;
          }
          return std::nullopt;  // None and Unknown both end the constructive path
        }
      }
    } else if (twx == Poly::x(F.k)) {
      if (auto rt = is_square(tval)) return Poly::constant(*rt);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

SpConjResult sp_conjugator(const FormData& j, const Mat& t, SpTarget target, uint64_t seed) {
  Field f = t.field();
  GroupSpec spec = GroupSpec::symplectic(j.gram);
  if (!contains(spec, t)) throw Error(Errc::NotInGroup, "sp_conjugator: t not in Sp(J)");
  Poly m = minpoly(t);
  if (gcd(m, m.derivative()).degree() != 0)
    throw Error(Errc::NotSemisimple, "sp_conjugator: t not semisimple");
  IsoCtx c{f, t, inverse(t), j.gram, true};
  Mat tgt = target == SpTarget::Inverse ? c.tinv : -c.tinv;

  auto fac = factor(m, seed);
  if (!fac.complete())
    return {VerdictState::Unknown, {}, "minimal polynomial not factorable over " + f.name()};
  std::vector<Poly> polys;
  for (auto& [p, e] : fac.factors) {
    if (e != 1) throw Error(Errc::NotSemisimple, "sp_conjugator: repeated factor");
    polys.push_back(p);
  }
  // image of each factor under the target involution on eigenvalues
  auto mapped = [&](const Poly& p) { return target == SpTarget::Inverse ? star(p) : sharp(p); };
  for (const auto& p : polys) {
    Poly q = mapped(p);
    if (std::find(polys.begin(), polys.end(), q) == polys.end())
      return {VerdictState::No, {},
              "eigenvalue multiset is not closed under the required involution (factor " +
                  p.str() + ")"};
  }

  auto prim = primary_pieces(c, polys);
  auto find_piece = [&](const Poly& p) -> int {
    for (size_t i = 0; i < prim.size(); ++i)
      if (prim[i].p == p) return static_cast<int>(i);
    return -1;
  };

  std::vector<PiecePair> pieces;
  std::vector<bool> used(prim.size(), false);

  auto darboux_n_piece = [&](const Mat& basis) {
    // s = direct sum of N on Darboux pairs: x -> y, y -> -x
    PiecePair pp;
    for (auto& [x, y] : darboux_basis(c, basis)) {
      pp.domain.push_back(x);
      pp.image.push_back(y);
      pp.domain.push_back(y);
      Vector mx = x;
      for (auto& e : mx) e = -e;
      pp.image.push_back(mx);
    }
    return pp;
  };

  for (size_t i = 0; i < prim.size(); ++i) {
    if (used[i]) continue;
    const Poly& p = prim[i].p;
    Poly q = mapped(p);
    if (q == p) {
      used[i] = true;
      Poly ps = star(p);
      if (p.degree() == 1 && ps == p) {
        // eigenvalue +-1 (inverse target): Darboux N blocks
        pieces.push_back(darboux_n_piece(prim[i].basis));
        continue;
      }
      if (target == SpTarget::NegatedInverse && p == Poly::from_ints(f, {1, 0, 1})) {
        // X^2 + 1: s = t restricted
        PiecePair pp;
        for (int col = 0; col < prim[i].basis.cols(); ++col) {
          Vector v = prim[i].basis.column(col);
          pp.domain.push_back(v);
          pp.image.push_back(c.t * v);
        }
        pieces.push_back(std::move(pp));
        continue;
      }
      FAlgebra F(p);
      auto tw = [&](const Poly& a) {
        return target == SpTarget::Inverse ? F.bar(a) : F.bar_neg(a);
      };
      if (target == SpTarget::NegatedInverse && ps != p) {
        // p self-# but not self-*: V_p isotropic; free twisted map with
        // mu tw(mu) = -1 per line, partner V_{p*} forced by the form
        int partner = find_piece(ps);
        if (partner < 0) return {VerdictState::No, {}, "factors not *-closed in Sp"};
        used[static_cast<size_t>(partner)] = true;
        auto mu = solve_twisted_norm(F, tw, Poly::constant(-f.one()));
        if (!mu)
          return {VerdictState::Unknown, {},
                  "twisted norm equation mu tw(mu) = -1 unsolved for factor " + p.str()};
        auto gens = f_basis(c, F, prim[i].basis);
        // phi on V_p: a w -> tw(a) mu w per line; collect as matrix blocks
        PiecePair pp;
        std::vector<Vector> pdom, pimg;
        for (const auto& w : gens) {
          Vector cur = w;
          Poly xpow = Poly::one(f);
          for (int e = 0; e < F.d; ++e) {
            pdom.push_back(cur);
            pimg.push_back(poly_apply_vec(F.mul(tw(xpow), *mu), c.t, w));
            cur = c.t * cur;
            xpow = (xpow * Poly::x(f)) % p;
          }
        }
        // forced map on V_{p*}: B(phi x, psi y) = B(x, y)
        Mat P = Mat::from_columns(f, pdom);
        Mat Phi = Mat::from_columns(f, pimg);
        const Mat& R = prim[static_cast<size_t>(partner)].basis;
        // solve for psi with (Phi)^T G (R psi) = P^T G R (coordinates on R)
        Mat lhs = Phi.transpose() * c.gram * R;
        Mat rhs = P.transpose() * c.gram * R;
        Mat psi = inverse(lhs) * rhs;
        PiecePair both;
        for (size_t col = 0; col < pdom.size(); ++col) {
          both.domain.push_back(pdom[col]);
          both.image.push_back(pimg[col]);
        }
        Mat Rpsi = R * psi;
        for (int col = 0; col < R.cols(); ++col) {
          both.domain.push_back(R.column(col));
          both.image.push_back(Rpsi.column(col));
        }
        pieces.push_back(std::move(both));
        continue;
      }
      // p self-* (and self-# when negated): twisted-norm lines with the h-form
      auto gens = f_basis(c, F, prim[i].basis);
      h_orthogonalize(c, F, gens, seed);
      PiecePair pp;
      for (const auto& w : gens) {
        Poly gamma = h_form(c, F, w, w);
        Poly targetc;
        if (target == SpTarget::Inverse) {
          targetc = Poly::constant(-f.one());
        } else {
          // mu bar(mu) = -nu(gamma)/gamma and mu bar#(mu) = -1
          Poly nug = F.neg_sub(gamma);
          targetc = F.mul(-nug, F.inv(gamma));
        }
        std::optional<Poly> mu;
        if (target == SpTarget::Inverse) {
          mu = solve_twisted_norm(F, [&](const Poly& a) { return F.bar(a); }, targetc);
        } else {
          // simultaneous conditions: enumerate (finite fields)
          if (F.k.finite()) {
            F.enumerate([&](const Poly& cand) {
              if (cand.is_zero()) return true;
              if (F.mul(cand, F.bar(cand)) == targetc &&
                  F.mul(cand, F.bar_neg(cand)) == Poly::constant(-f.one())) {
                mu = cand;
                return false;
              }
              return true;
            });
          }
        }
        if (!mu)
          return {VerdictState::Unknown, {},
                  "norm equation unsolved on a self-paired piece (factor " + p.str() + ")"};
        Vector cur = w;
        Poly xpow = Poly::one(f);
        for (int e = 0; e < F.d; ++e) {
          pp.domain.push_back(cur);
          pp.image.push_back(poly_apply_vec(F.mul(tw(xpow), *mu), c.t, w));
          cur = c.t * cur;
          xpow = (xpow * Poly::x(f)) % p;
        }
      }
      pieces.push_back(std::move(pp));
      continue;
    }
    // q != p: swap pieces
    int qi = find_piece(q);
    if (qi < 0) return {VerdictState::No, {}, "missing partner factor"};
    used[i] = used[static_cast<size_t>(qi)] = true;
    Poly ps = star(p);
    if (ps == q) {
      // the partner carries the form pairing: symmetric-condition swap
      const Mat& P = prim[i].basis;
      const Mat& R = prim[static_cast<size_t>(qi)].basis;
      Mat T1 = restrict_to(t, P);
      Mat R2 = restrict_to(tgt, R);
      Mat K = R.transpose() * c.gram * P;
      auto F = paired_swap_matrix(f, P, R, T1, R2, K, seed);
      if (!F) return {VerdictState::Unknown, {}, "no invertible swap for (" + p.str() + ")"};
      pieces.push_back(make_pair_piece(P, R, *F, -1));
      continue;
    }
    if (ps == p && mapped(p) != p) {
      // p self-* but not self-#: q = p# also self-*; need an isometric
      // intertwiner swap between two nondegenerate pieces
      if (p.degree() == 1) {
        // eigenvalues 1 <-> -1 under the negated target: map Darboux frames
        int mi = find_piece(q);
        auto pairs1 = darboux_basis(c, prim[i].basis);
        auto pairs2 = darboux_basis(c, prim[static_cast<size_t>(mi)].basis);
        if (pairs1.size() != pairs2.size())
          return {VerdictState::No, {}, "eigenspace dimension mismatch"};
        PiecePair pp;
        for (size_t k = 0; k < pairs1.size(); ++k) {
          auto& [x1, y1] = pairs1[k];
          auto& [x2, y2] = pairs2[k];
          // phi: x1 -> x2, y1 -> y2 ; psi = -phi^-1
          pp.domain.push_back(x1);
          pp.image.push_back(x2);
          pp.domain.push_back(y1);
          pp.image.push_back(y2);
          Vector mx = x1, my = y1;
          for (auto& e : mx) e = -e;
          for (auto& e : my) e = -e;
          pp.domain.push_back(x2);
          pp.image.push_back(mx);
          pp.domain.push_back(y2);
          pp.image.push_back(my);
        }
        pieces.push_back(std::move(pp));
        continue;
      }
      // deg >= 2: h-line matching between the two pieces
      FAlgebra F1(p);
      auto gens1 = f_basis(c, F1, prim[i].basis);
      h_orthogonalize(c, F1, gens1, seed);
      FAlgebra F2(q);
      auto gens2 = f_basis(c, F2, prim[static_cast<size_t>(qi)].basis);
      h_orthogonalize(c, F2, gens2, seed);
      if (gens1.size() != gens2.size())
        return {VerdictState::No, {}, "piece rank mismatch"};
      // phi: a(t) w1 -> a(-t ...) ... realized by solving a small linear
      // system per line pair with the isometry condition; fall back to the
      // generic enumeration when scalars fail.
      return {VerdictState::Unknown, {},
              "self-* factor swapped by # (degree >= 2): constructive matching not implemented"};
    }
    // quadruple {p, p#} with p* and p#* elsewhere: free intertwiner, partners forced
    {
      const Mat& P = prim[i].basis;
      const Mat& PH = prim[static_cast<size_t>(qi)].basis;
      Mat T1 = restrict_to(t, P);
      Mat TH = restrict_to(tgt, PH);
      // free invertible intertwiner F with F T1 = TH F
      std::vector<Mat> space = intertwiner_space(T1, TH);
      std::optional<Mat> F;
      for (const auto& cand : space)
        if (invertible(cand)) { F = cand; break; }
      if (!F) {
        std::mt19937_64 rng(seed ^ 0xabcd);
        for (int trial = 0; trial < 200 && !F; ++trial) {
          Mat cand = Mat::zero(f, T1.rows(), T1.cols());
          for (const auto& bm : space) {
            FieldElement ce = f.finite() ? f.nth_element(rng() % f.size())
                                         : f.from_int(static_cast<long long>(rng() % 9) - 4);
            cand = cand + bm * ce;
          }
          if (invertible(cand)) F = cand;
        }
      }
      if (!F) return {VerdictState::Unknown, {}, "no invertible intertwiner on a quadruple"};
      int pstar = find_piece(star(p));
      int phstar = find_piece(star(q));
      if (pstar < 0 || phstar < 0) return {VerdictState::No, {}, "factors not *-closed"};
      used[static_cast<size_t>(pstar)] = used[static_cast<size_t>(phstar)] = true;
      const Mat& PS = prim[static_cast<size_t>(pstar)].basis;
      const Mat& PHS = prim[static_cast<size_t>(phstar)].basis;
      // sigma(P x) = PH F x ; sigma(PH z) = P(-F^-1 z)
      // forced: sigma(PS y) = PHS F' y with F'^T (PH^T G PHS)^T ... solve from
      // B(sigma x, sigma y) = B(x, y) for x in V_p, y in V_p*:
      // (PH F)^T G (PHS F') = P^T G PS
      Mat lhs = (PH * *F).transpose() * c.gram * PHS;
      Mat rhs = P.transpose() * c.gram * PS;
      Mat Fp = inverse(lhs) * rhs;
      // forced: sigma(PHS w) = PS F'' w from B on (V_p#, V_p#*):
      // (P(-F^-1))^T G (PS F'') = PH^T G PHS
      Mat lhs2 = (P * inverse(*F) * (-f.one())).transpose() * c.gram * PS;
      Mat rhs2 = PH.transpose() * c.gram * PHS;
      Mat Fpp = inverse(lhs2) * rhs2;
      PiecePair pp;
      Mat im1 = PH * *F;
      for (int col = 0; col < P.cols(); ++col) {
        pp.domain.push_back(P.column(col));
        pp.image.push_back(im1.column(col));
      }
      Mat im2 = P * inverse(*F) * (-f.one());
      for (int col = 0; col < PH.cols(); ++col) {
        pp.domain.push_back(PH.column(col));
        pp.image.push_back(im2.column(col));
      }
      Mat im3 = PHS * Fp;
      for (int col = 0; col < PS.cols(); ++col) {
        pp.domain.push_back(PS.column(col));
        pp.image.push_back(im3.column(col));
      }
      Mat im4 = PS * Fpp;
      for (int col = 0; col < PHS.cols(); ++col) {
        pp.domain.push_back(PHS.column(col));
        pp.image.push_back(im4.column(col));
      }
      pieces.push_back(std::move(pp));
    }
  }

  WitnessBuild wb = assemble(c, pieces, -1, tgt);
  if (!wb.ok) return {VerdictState::Unknown, {}, "assembly failed: " + wb.reason};
  return {VerdictState::Yes, wb.sigma, ""};
}

RealityReport sp_reality(const FormData& j, const Mat& t, uint64_t bound, uint64_t seed) {
  GroupSpec spec = GroupSpec::symplectic(j.gram);
  RealityReport r{spec, t, RealVerdict::unknown(""), StrongVerdict::unknown(""), {"Thm3.5.3"}};
  SpConjResult res = sp_conjugator(j, t, SpTarget::Inverse, seed);
  if (res.state == VerdictState::Yes) {
    r.real = RealVerdict::yes(*res.s);
  } else if (res.state == VerdictState::No) {
    Obstruction o{Obstruction::Kind::NoGroupConjugator, {}, {}, res.reason};
    r.real = RealVerdict::no(o);
    r.strongly_real = StrongVerdict::no(o);
    return r;
  } else {
    r.real = RealVerdict::unknown(res.reason);
  }
  // strong reality in Sp itself: decided by the coset scan (the paper's
  // remark shows both outcomes occur)
  if (r.real.state == VerdictState::Yes) {
    auto zbasis = conjugator_space(t).centralizer;
    auto [definitive, found] =
        scan_group_involution(*r.real.conjugator, zbasis, spec, bound, seed);
    if (found) r.strongly_real = StrongVerdict::yes(*found, *found * t);
    else if (definitive)
      r.strongly_real = StrongVerdict::no(
          Obstruction{Obstruction::Kind::NoGroupConjugator, {}, {},
                      "exhaustive coset scan: every symplectic conjugator fails g^2 = 1"});
    else
      r.strongly_real = StrongVerdict::unknown("coset scan exceeded the bound");
  }
  verify_report(r);
  return r;
}

// ---------------- projective groups ----------------

RealityReport projective_reality(const GroupSpec& spec, const Mat& t0, uint64_t bound,
                                 uint64_t seed) {
  if (spec.kind != GroupKind::Projective)
    throw Error(Errc::BadInput, "projective_reality: spec is not projective");
  const GroupSpec& inner = *spec.inner;
  if (!contains(inner, t0)) throw Error(Errc::NotInGroup, "representative not in inner group");
  Field f = t0.field();
  int n = t0.rows();
  Mat id = Mat::identity(f, n);
  RealityReport r{spec, t0, RealVerdict::unknown(""), StrongVerdict::unknown(""), {}};

  if (t0.is_scalar()) {
    r.real = RealVerdict::yes(id);
    r.strongly_real = StrongVerdict::yes(id, t0);
    r.notes.push_back("central");
    verify_report(r);
    return r;
  }

  if (inner.kind == GroupKind::SL) {
    r.notes.push_back("Prop3.2.4");
    // t0 ~ t0^-1 or -t0^-1 in SL2
    Mat ti = inverse(t0);
    SlConjugacy c1 = sl_conjugate(t0, ti, bound);
    if (c1.state == VerdictState::Yes) {
      Mat g = *c1.witness;
      Mat g2 = g * g;
      if (!g2.is_scalar())
        throw Error(Errc::BadInput, "projective SL2: conjugator square not central");
      r.real = RealVerdict::yes(g);
      r.strongly_real = StrongVerdict::yes(g, g * t0);
      verify_report(r);
      return r;
    }
    SlConjugacy c2 = sl_conjugate(t0, -ti, bound);
    if (c2.state == VerdictState::Yes) {
      // in PSL2 the image of the conjugator works; when chi = X^2 + 1, t0
      // itself is an involution mod center
      Mat g = *c2.witness;
      r.real = RealVerdict::yes(g);
      Mat gt = g * t0;
      if (projectively_equal(gt * gt, id) && projectively_equal(g * g, id)) {
        r.strongly_real = StrongVerdict::yes(g, gt);
      } else if (projectively_equal(t0 * t0, id)) {
        r.strongly_real = StrongVerdict::yes(t0, id);
        r.notes.push_back("chi = X^2+1: t is an involution in PSL2");
      } else {
        throw Error(Errc::BadInput, "projective SL2: unexpected -t^-1 witness shape");
      }
      verify_report(r);
      return r;
    }
    if (c1.state == VerdictState::No && c2.state == VerdictState::No) {
      Obstruction o{Obstruction::Kind::NoGroupConjugator, {}, {},
                    "t is conjugate to neither t^-1 nor -t^-1 in SL2"};
      r.real = RealVerdict::no(o);
      r.strongly_real = StrongVerdict::no(o);
      return r;
    }
    r.real = RealVerdict::unknown(c1.reason + "; " + c2.reason);
    r.strongly_real = StrongVerdict::unknown(c1.reason + "; " + c2.reason);
    return r;
  }

  // PSp
  r.notes.push_back("Thm3.5.3");
  FormData jf{inner.form->gram, FormFlavor::Alternating};
  SpConjResult s1 = sp_conjugator(jf, t0, SpTarget::Inverse, seed);
  if (s1.state == VerdictState::Yes) {
    Mat s = *s1.s;
    r.real = RealVerdict::yes(s);
    r.strongly_real = StrongVerdict::yes(s, s * t0);
    verify_report(r);
    return r;
  }
  SpConjResult s2 = sp_conjugator(jf, t0, SpTarget::NegatedInverse, seed);
  if (s2.state == VerdictState::Yes) {
    Mat s = *s2.s;
    r.real = RealVerdict::yes(s);
    r.strongly_real = StrongVerdict::yes(s, s * t0);
    verify_report(r);
    return r;
  }
  if (s1.state == VerdictState::No && s2.state == VerdictState::No) {
    Obstruction o{Obstruction::Kind::NoGroupConjugator, {}, {},
                  "conjugate to neither t^-1 nor -t^-1 in Sp: " + s1.reason + "; " + s2.reason};
    r.real = RealVerdict::no(o);
    r.strongly_real = StrongVerdict::no(o);
    return r;
  }
  r.real = RealVerdict::unknown(s1.reason + "; " + s2.reason);
  r.strongly_real = StrongVerdict::unknown(s1.reason + "; " + s2.reason);
  return r;
}

// ---------------- Jordan route ----------------

namespace {

// F_i-matrix of an F_i-linear map u restricted to the primary piece of s with
// irreducible p; returns (matrix over Fi, the F-basis vectors).
std::pair<Mat, std::vector<Vector>> fi_matrix(const Mat& s, const Mat& u, const Poly& p,
                                              const Mat& piece_basis, const Field& Fi) {
  Field k = s.field();
  int d = p.degree();
  IsoCtx cdummy{k, s, s, Mat::identity(k, s.rows()), false};
  FAlgebra F(p);
  auto gens = f_basis(cdummy, F, piece_basis);
  int r = static_cast<int>(gens.size());
  // k-basis: t^i w_j; coordinates of u(w_j) give F_i-coefficients
  std::vector<Vector> cols;
  for (const auto& w : gens) {
    Vector cur = w;
    for (int i = 0; i < d; ++i) {
      cols.push_back(cur);
      cur = s * cur;
    }
  }
  Mat B = Mat::from_columns(k, cols);
  Mat Binv = inverse(B);
  Mat out(Fi, r, r);
  for (int jcol = 0; jcol < r; ++jcol) {
    Vector img = u * gens[static_cast<size_t>(jcol)];
    Vector coords = Binv * img;
    for (int irow = 0; irow < r; ++irow) {
      // coefficients d*irow .. d*irow+d-1 form the F_i element
      std::vector<FieldElement> ce;
      for (int e = 0; e < d; ++e) ce.push_back(coords[static_cast<size_t>(d * irow + e)]);
      // map k[X]/(p) coefficients into Fi
      if (d == 1) {
        out.at(irow, jcol) = ce[0];
      } else {
        // Fi is Field::quotient(k, p): coefficients map directly
        std::vector<FieldElement> coeffs(ce.begin(), ce.end());
        out.at(irow, jcol) = Fi.element(std::move(coeffs));
      }
    }
  }
  return {out, gens};
}

// Lift an Fi-matrix back to a k-linear map on the piece (in global coords).
std::vector<std::pair<Vector, Vector>> lift_fi_map(const Mat& s, const Poly& p,
                                                   const std::vector<Vector>& gens,
                                                   const Mat& hmat) {
  Field k = s.field();
  int d = p.degree();
  int r = static_cast<int>(gens.size());
  std::vector<std::pair<Vector, Vector>> actions;  // (basis vector, image)
  for (int j = 0; j < r; ++j) {
    // image of w_j: sum_i hmat(i,j)(s) applied to w_i
    Vector img(gens[0].size(), k.zero());
    for (int i = 0; i < r; ++i) {
      const FieldElement& he = hmat.at(i, j);
      Poly hp = d == 1 ? Poly::constant(he) : Poly(k, he.coords());
      Vector part = poly_apply_vec(hp, s, gens[static_cast<size_t>(i)]);
      for (size_t e = 0; e < img.size(); ++e) img[e] = img[e] + part[e];
    }
    // propagate over the Krylov chain: image of s^e w_j = s^e img
    Vector dom = gens[static_cast<size_t>(j)];
    Vector im = img;
    for (int e = 0; e < d; ++e) {
      actions.emplace_back(dom, im);
      dom = s * dom;
      im = s * im;
    }
  }
  return actions;
}

}  // namespace

RealityReport jordan_reality_gl(const Mat& g, uint64_t bound) {
  Field k = g.field();
  int n = g.rows();
  GroupSpec spec = GroupSpec::gl(k, n);
  if (!invertible(g)) throw Error(Errc::Singular, "jordan_reality_gl: singular");
  RealityReport r{spec, g, RealVerdict::unknown(""), StrongVerdict::unknown(""),
                  {"Lem2.2.1"}};
  auto jc = jordan_chevalley(g);
  RealityReport rs = gl_reality(jc.s);
  if (rs.real.state == VerdictState::No) {
    r.real = RealVerdict::no(*rs.real.obstruction);
    r.strongly_real = StrongVerdict::no(*rs.real.obstruction);
    return r;
  }
  Mat x = *rs.real.conjugator;
  Mat u1 = x * jc.u * inverse(x);     // x g_u x^-1
  Mat u2 = inverse(jc.u);             // g_u^-1
  // compare inside Z(g_s) via the primary decomposition of g_s
  Poly ms = minpoly(jc.s);
  auto fac = factor(ms, 0);
  if (!fac.complete()) {
    r.real = RealVerdict::unknown("semisimple part not factorable over " + k.name());
    r.strongly_real = StrongVerdict::unknown(r.real.reason);
    return r;
  }
  std::vector<std::pair<Vector, Vector>> actions;
  for (auto& [p, e] : fac.factors) {
    (void)e;
    Mat piece = kernel(poly_at(p, jc.s));
    Field Fi = k;
    if (p.degree() >= 2) Fi = Field::quotient(k, p.coeffs());
    auto [m2, gens] = fi_matrix(jc.s, u2, p, piece, Fi);
    auto [m1, gens1] = fi_matrix(jc.s, u1, p, piece, Fi);
    (void)gens1;
    auto h = are_conjugate(m2, m1);  // h m2 h^-1 = m1
    if (!h) {
      Obstruction o{Obstruction::Kind::NoGroupConjugator, {}, {},
                    "unipotent parts not conjugate in the centralizer of the semisimple "
                    "part (factor " + p.str() + ")"};
      r.real = RealVerdict::no(o);
      r.strongly_real = StrongVerdict::no(o);
      r.notes.push_back("Example1-pattern");
      return r;
    }
    auto piece_actions = lift_fi_map(jc.s, p, gens, *h);
    actions.insert(actions.end(), piece_actions.begin(), piece_actions.end());
  }
  std::vector<Vector> dom, img;
  for (auto& [d, i] : actions) {
    dom.push_back(d);
    img.push_back(i);
  }
  Mat B = Mat::from_columns(k, dom);
  Mat h = Mat::from_columns(k, img) * inverse(B);
  // h u2 h^-1 = u1 and h commutes with g_s
  if (!(h * u2 * inverse(h) == u1) || !(h * jc.s == jc.s * h))
    throw Error(Errc::BadInput, "jordan_reality_gl: centralizer conjugator check failed");
  Mat conj = inverse(h) * x;
  if (!(conj * g * inverse(conj) == inverse(g)))
    throw Error(Errc::BadInput, "jordan_reality_gl: assembled conjugator fails");
  r.real = RealVerdict::yes(conj);
  // GL strong reality coincides with reality (Wonenburger)
  auto [sigma, tau] = wonenburger_involutions(g, std::nullopt);
  r.strongly_real = StrongVerdict::yes(sigma, tau);
  r.notes.push_back("W66");
  verify_report(r);
  (void)bound;
  return r;
}

// ---------------- dispatch ----------------

RealityReport classify(const GroupSpec& spec, const Mat& t, const ClassifyOptions& opts) {
  switch (spec.kind) {
    case GroupKind::GL:
      return jordan_reality_gl(t, opts.bound);
    case GroupKind::SL:
      return sl_reality(t, opts.bound, opts.seed);
    case GroupKind::O:
      return o_reality(*spec.form, t, opts.seed);
    case GroupKind::SO:
      return so_reality(*spec.form, t, opts.seed);
    case GroupKind::Sp:
      return sp_reality(*spec.form, t, opts.bound, opts.seed);
    case GroupKind::U:
      return unitary_reality(*spec.form, spec.ext, t, std::nullopt, opts.height_bound);
    case GroupKind::SU:
      return su_reality(*spec.form, spec.ext, t, std::nullopt, opts.height_bound);
    case GroupKind::Projective:
      return projective_reality(spec, t, opts.bound, opts.seed);
    case GroupKind::G2:
      throw Error(Errc::BadInput, "classify: G2 elements are handled by the cayley module");
  }
  throw Error(Errc::BadInput, "classify: unknown group kind");
}

}  // namespace birefl
