#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "birefl/field.hpp"

namespace birefl {

/// Dense univariate polynomial over an exact field. Coefficients are stored
/// low degree first with trailing zeros stripped; the zero polynomial has an
/// empty coefficient list and degree -1.
class Poly {
 public:
  Poly() = default;
  Poly(Field f, std::vector<FieldElement> coeffs);
  static Poly zero(const Field& f) { return Poly(f, {}); }
  static Poly one(const Field& f) { return constant(f.one()); }
  static Poly constant(const FieldElement& c);
  static Poly x(const Field& f) { return Poly(f, {f.zero(), f.one()}); }
  /// X - r
  static Poly linear(const FieldElement& r);
  static Poly from_ints(const Field& f, std::initializer_list<long long> coeffs);

  const Field& field() const { return f_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  const FieldElement& lead() const { return c_.back(); }
  FieldElement coeff(int i) const;
  FieldElement constant_term() const { return coeff(0); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElement& c) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly monic() const;
  Poly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  Poly pow_mod(mpz_class e, const Poly& m) const;
  /// Entrywise Galois conjugation of the coefficients.
  Poly conj() const;

  std::string str() const;

 private:
  Field f_;
  std::vector<FieldElement> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);

/// Monic greatest common divisor.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

/// (g, s, t) with s*a + t*b = g, g monic gcd.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

/// Pairwise-coprime squarefree parts: input = prod g_i^{e_i}.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

/// Monic normalization of X^deg p(1/X); requires p monic with p(0) != 0.
Poly reciprocal(const Poly& p);
bool is_self_reciprocal(const Poly& p);

struct Factorization {
  std::vector<std::pair<Poly, int>> factors;  // irreducible (or certified) parts
  Poly unfactored;  // nontrivial only over Q-towers; is_one() when complete
  bool complete() const { return unfactored.is_one() || unfactored.is_zero(); }
};

/// Complete factorization over finite fields (squarefree / distinct-degree /
/// seeded equal-degree splitting). Over Q-towers extracts linear factors by
/// bounded root search and splits quadratics by discriminant; a cofactor of
/// degree > 2 is returned in `unfactored`.
Factorization factor(const Poly& p, uint64_t seed = 0);

/// Multiplicity of the factor (X - r) in p, plus the deflated cofactor.
std::pair<int, Poly> root_multiplicity(const Poly& p, const FieldElement& r);

/// p(a(X)) mod m.
Poly compose_mod(const Poly& p, const Poly& a, const Poly& m);

}  // namespace birefl
