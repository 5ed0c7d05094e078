#include "birefl/poly.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace birefl {

namespace {
void strip(std::vector<FieldElement>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}
}  // namespace

Poly::Poly(Field f, std::vector<FieldElement> coeffs) : f_(f), c_(std::move(coeffs)) {
  for (const auto& x : c_)
    if (x.ctx() != f_.ctx()) throw Error(Errc::FieldMismatch, "coefficient field mismatch");
  strip(c_);
}

Poly Poly::constant(const FieldElement& c) {
  Field f = c.field();
  if (c.is_zero()) return Poly(f, {});
  return Poly(f, {c});
}

Poly Poly::linear(const FieldElement& r) {
  Field f = r.field();
  return Poly(f, {-r, f.one()});
}

Poly Poly::from_ints(const Field& f, std::initializer_list<long long> coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.push_back(f.from_int(v));
  return Poly(f, std::move(c));
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return f_.zero();
  return c_[static_cast<size_t>(i)];
}

Poly Poly::operator+(const Poly& o) const {
  if (f_ != o.f_) throw Error(Errc::FieldMismatch, "poly add: field mismatch");
  std::vector<FieldElement> c(std::max(c_.size(), o.c_.size()), f_.zero());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
  return Poly(f_, std::move(c));
}

Poly Poly::operator-() const {
  std::vector<FieldElement> c(c_);
  for (auto& x : c) x = -x;
  return Poly(f_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (f_ != o.f_) throw Error(Errc::FieldMismatch, "poly mul: field mismatch");
  if (is_zero() || o.is_zero()) return Poly(f_, {});
  std::vector<FieldElement> c(c_.size() + o.c_.size() - 1, f_.zero());
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
  return Poly(f_, std::move(c));
}

Poly Poly::operator*(const FieldElement& s) const {
  std::vector<FieldElement> c(c_);
  for (auto& x : c) x = x * s;
  return Poly(f_, std::move(c));
}

bool Poly::operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_, {});
  std::vector<FieldElement> c(c_.size() - 1, f_.zero());
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * f_.from_int(static_cast<long long>(i));
  return Poly(f_, std::move(c));
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement r = f_.zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Poly Poly::conj() const {
  std::vector<FieldElement> c(c_);
  for (auto& x : c) x = x.conj();
  return Poly(f_, std::move(c));
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].str();
    if (i >= 1) os << "*x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "divmod: field mismatch");
  if (b.is_zero()) throw Error(Errc::DivisionByZeroPoly, "division by zero polynomial");
  Field f = a.field();
  std::vector<FieldElement> r(a.coeffs());
  int db = b.degree();
  FieldElement linv = b.lead().inv();
  if (static_cast<int>(r.size()) - 1 < db) return {Poly::zero(f), a};
  std::vector<FieldElement> q(r.size() - static_cast<size_t>(db), f.zero());
  while (static_cast<int>(r.size()) - 1 >= db) {
    FieldElement c = r.back() * linv;
    size_t off = r.size() - static_cast<size_t>(db) - 1;
    q[off] = c;
    for (int i = 0; i <= db; ++i)
      r[off + static_cast<size_t>(i)] =
          r[off + static_cast<size_t>(i)] - c * b.coeffs()[static_cast<size_t>(i)];
    strip(r);
    if (r.empty()) break;
  }
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  Field f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(f), s1 = Poly::zero(f);
  Poly t0 = Poly::zero(f), t1 = Poly::one(f);
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    r0 = r1;
    r1 = r2;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (!r0.is_zero()) {
    FieldElement c = r0.lead().inv();
    r0 = r0 * c;
    s0 = s0 * c;
    t0 = t0 * c;
  }
  return {r0, s0, t0};
}

namespace {

// p-th root of every coefficient exponent structure: input g with g' = 0 over
// a finite field of size q, char p; returns h with h(X)^p = g(X^?) shape,
// i.e. h(X) = sum c_i^(q/p-power) X^(i) for g = sum c_i X^(p i).
Poly char_p_descent(const Poly& g) {
  Field f = g.field();
  uint64_t p = f.characteristic();
  // coefficient p-th root: in F_q, x -> x^p is Frobenius; its inverse is
  // x -> x^(q/p)
  uint64_t q = f.size();
  mpz_class e(static_cast<unsigned long>(q / p));
  std::vector<FieldElement> c;
  for (int i = 0; i <= g.degree(); i += static_cast<int>(p))
    c.push_back(g.coeff(i).pow(e));
  return Poly(f, std::move(c));
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroInput, "squarefree decomposition of zero");
  Field f = p.field();
  std::vector<std::pair<Poly, int>> out;
  Poly g = p.monic();
  if (g.degree() == 0) return out;

  // Yun's algorithm, with the char-p descent for the derivative-zero part.
  std::function<void(const Poly&, int)> run = [&](const Poly& a, int mult) {
    Poly d = a.derivative();
    if (d.is_zero()) {
      // a = b(X^p); recurse with multiplicity * p
      if (f.characteristic() == 0)
        throw Error(Errc::ZeroInput, "constant derivative in char 0");
      Poly b = char_p_descent(a);
      run(b, mult * static_cast<int>(f.characteristic()));
      return;
    }
    Poly c = gcd(a, d);
    Poly w = a / c;  // product of squarefree parts with multiplicity not divisible by p
    int i = 1;
    while (w.degree() > 0) {
      Poly y = gcd(w, c);
      Poly fac = w / y;
      if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
      w = y;
      c = c / y;
      ++i;
    }
    if (c.degree() > 0) run(c, mult);  // leftover: p-th powers
  };
  run(g, 1);
  // merge equal factors (can appear after char-p descent)
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.degree() < b.first.degree();
  });
  std::vector<std::pair<Poly, int>> merged;
  for (auto& [fac, e] : out) {
    bool found = false;
    for (auto& [mf, me] : merged)
      if (mf == fac) {
        me += e;
        found = true;
        break;
      }
    if (!found) merged.emplace_back(fac, e);
  }
  return merged;
}

Poly reciprocal(const Poly& p) {
  if (!p.is_monic()) throw Error(Errc::NonMonic, "reciprocal: polynomial must be monic");
  if (p.constant_term().is_zero())
    throw Error(Errc::ZeroConstantTerm, "reciprocal: p(0) = 0");
  std::vector<FieldElement> c(p.coeffs());
  std::reverse(c.begin(), c.end());
  Poly r(p.field(), std::move(c));
  return r.monic();
}

bool is_self_reciprocal(const Poly& p) { return reciprocal(p) == p; }

std::pair<int, Poly> root_multiplicity(const Poly& p, const FieldElement& r) {
  Poly lin = Poly::linear(r);
  Poly rest = p;
  int mult = 0;
  while (rest.degree() > 0) {
    auto [q, rem] = divmod(rest, lin);
    if (!rem.is_zero()) break;
    ++mult;
    rest = q;
  }
  return {mult, rest};
}

namespace {

// Cantor-Zassenhaus equal-degree splitting over a finite field of odd size.
void equal_degree_split(const Poly& p, int d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  Field f = p.field();
  if (p.degree() == d) {
    out.push_back(p.monic());
    return;
  }
  mpz_class q(static_cast<unsigned long>(f.size()));
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  while (true) {
    // random poly of degree < deg p
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i)
      c.push_back(f.nth_element(rng() % f.size()));
    Poly a(f, std::move(c));
    if (a.degree() < 1) continue;
    Poly g = gcd(a, p);
    if (g.degree() > 0 && g.degree() < p.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split((p / g).monic(), d, rng, out);
      return;
    }
    Poly b = a.pow_mod(e, p) - Poly::one(f);
    g = gcd(b, p);
    if (g.degree() > 0 && g.degree() < p.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split((p / g).monic(), d, rng, out);
      return;
    }
  }
}

void factor_squarefree_finite(const Poly& p, std::mt19937_64& rng,
                              std::vector<Poly>& out) {
  Field f = p.field();
  mpz_class q(static_cast<unsigned long>(f.size()));
  Poly rest = p.monic();
  Poly x = Poly::x(f);
  Poly h = x;  // x^(q^d) mod rest, updated per distinct degree d
  int d = 0;
  while (rest.degree() > 0) {
    ++d;
    if (rest.degree() < 2 * d) {
      out.push_back(rest.monic());
      break;
    }
    h = h.pow_mod(q, rest);
    Poly g = gcd(h - x, rest);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      rest = (rest / g).monic();
      h = h % rest;
    }
  }
}

}  // namespace

Poly Poly::pow_mod(mpz_class e, const Poly& m) const {
  Poly r = Poly::one(f_);
  Poly b = *this % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

Poly compose_mod(const Poly& p, const Poly& a, const Poly& m) {
  Field f = p.field();
  Poly r = Poly::zero(f);
  for (int i = p.degree(); i >= 0; --i) {
    r = (r * a) % m;
    r = r + Poly::constant(p.coeff(i));
  }
  return r;
}

Factorization factor(const Poly& p, uint64_t seed) {
  if (p.is_zero()) throw Error(Errc::ZeroInput, "factor(0)");
  Field f = p.field();
  Factorization out;
  out.unfactored = Poly::one(f);
  auto sqf = squarefree_decomposition(p);

  std::mt19937_64 rng(seed);
  for (auto& [part, mult] : sqf) {
    if (f.finite()) {
      std::vector<Poly> irr;
      factor_squarefree_finite(part, rng, irr);
      std::sort(irr.begin(), irr.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.str() < b.str();
      });
      for (auto& g : irr) out.factors.emplace_back(g, mult);
      continue;
    }
    // Q-towers: linear factors via bounded rational root search (base Q) or
    // is_square-driven splitting of quadratics; deeper cofactors stay intact.
    Poly rest = part;
    if (f.kind() == FieldKind::Rationals) {
      // rational root theorem on the integer-cleared polynomial
      mpz_class den(1);
      for (const auto& c : rest.coeffs()) den = lcm(den, mpz_class(c.rat().get_den()));
      std::vector<FieldElement> ci;
      for (const auto& c : rest.coeffs()) {
        mpq_class v = c.rat() * mpq_class(den);
        v.canonicalize();
        ci.push_back(f.from_rat(v));
      }
      Poly zp(f, ci);
      mpz_class a0 = zp.coeff(0).rat().get_num();
      mpz_class an = zp.lead().rat().get_num();
      auto divisors = [](mpz_class n) {
        std::vector<mpz_class> ds;
        n = abs(n);
        if (n == 0) return ds;
        for (mpz_class i = 1; i * i <= n && i < 100000; ++i)
          if (mpz_divisible_p(n.get_mpz_t(), i.get_mpz_t())) {
            ds.push_back(i);
            ds.push_back(n / i);
          }
        return ds;
      };
      for (const auto& nu : divisors(a0)) {
        for (const auto& de : divisors(an)) {
          for (int sgn = 0; sgn < 2; ++sgn) {
            if (rest.degree() < 1) break;
            mpq_class cand(sgn ? -nu : nu, de);
            cand.canonicalize();
            FieldElement r = f.from_rat(cand);
            auto [m2, rest2] = root_multiplicity(rest, r);
            if (m2 > 0) {
              out.factors.emplace_back(Poly::linear(r), mult * m2);
              rest = rest2;
            }
          }
        }
      }
    } else {
      // extension of Q: peel roots found via the quadratic-formula helper on
      // degree-2 cofactors only (below); no generic root search
    }
    if (rest.degree() == 2) {
      // split by discriminant in this field
      FieldElement a = rest.coeff(2), b = rest.coeff(1), c = rest.coeff(0);
      FieldElement disc = b * b - f.from_int(4) * a * c;
      if (auto sd = is_square(disc)) {
        FieldElement inv2a = (f.from_int(2) * a).inv();
        FieldElement r1 = (-b + *sd) * inv2a;
        FieldElement r2 = (-b - *sd) * inv2a;
        out.factors.emplace_back(Poly::linear(r1), mult);
        out.factors.emplace_back(Poly::linear(r2), mult);
      } else {
        out.factors.emplace_back(rest.monic(), mult);  // irreducible quadratic
      }
    } else if (rest.degree() == 1) {
      out.factors.emplace_back(rest.monic(), mult);
    } else if (rest.degree() > 2) {
      for (int i = 0; i < mult; ++i) out.unfactored = out.unfactored * rest.monic();
    }
  }
  return out;
}

}  // namespace birefl
