#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace birefl {

enum class Errc {
  EvenCharacteristic,
  ReducibleModulus,
  SquareD,
  NotAnExtensionElement,
  ZeroInput,
  FieldMismatch,
  DivisionByZeroPoly,
  ShapeMismatch,
  Singular,
  NotSquare,
  NotCyclic,
  DetUnadjustable,
  ZeroConstantTerm,
  NonMonic,
  OddSymplecticDim,
  Unenumerable,
  NotReal,
  DeterminantUnachievable,
  DetNotOne,
  NotInGroup,
  NotSemisimple,
  NotInvertible,
  DetNotOneSL3,
  NotAutomorphism,
  BoundExceeded,
  InfiniteField,
  NotMember,
  BadInput,
};

/// Library error: carries a machine-checkable code plus a message.
class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc c);

enum class FieldKind { Rationals, Prime, Quotient, QuadExt };

struct FieldCtx;
class Field;

/// An element of an exact field. The representation is canonical, so
/// structural equality coincides with field equality. Values are immutable
/// once built; all operations return fresh elements.
class FieldElement {
 public:
  FieldElement() : ctx_(nullptr) {}

  const FieldCtx* ctx() const { return ctx_; }
  Field field() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement conj() const;  // identity on non-QuadExt kinds
  FieldElement pow(const mpz_class& e) const;
  FieldElement pow(long e) const { return pow(mpz_class(e)); }

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_one() const;

  std::string str() const;

  // Payload access (one of the three, depending on the field kind).
  const mpq_class& rat() const { return std::get<mpq_class>(v_); }
  uint64_t residue() const { return std::get<uint64_t>(v_); }
  const std::vector<FieldElement>& coords() const {
    return std::get<std::vector<FieldElement>>(v_);
  }

 private:
  friend struct FieldCtx;
  friend class Field;
  using Value = std::variant<mpq_class, uint64_t, std::vector<FieldElement>>;
  FieldElement(const FieldCtx* c, Value v) : ctx_(c), v_(std::move(v)) {}

  const FieldCtx* ctx_;
  Value v_;
};

/// Immutable field context. Instances are interned: handles to equal
/// descriptors share one context, so fields compare by pointer.
struct FieldCtx {
  FieldKind kind;
  uint64_t p = 0;                        // Prime
  const FieldCtx* base = nullptr;        // Quotient / QuadExt
  std::vector<FieldElement> modulus;     // Quotient: monic, low degree first
  std::vector<FieldElement> quad_d;      // QuadExt: the nonsquare d (size 1)
  uint64_t characteristic = 0;           // 0 for char 0
  uint64_t size = 0;                     // 0 for infinite fields
  int ext_degree = 1;                    // degree over base
  std::string name;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long n) const;
  FieldElement from_rat(const mpq_class& q) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement conj(const FieldElement& a) const;
  bool eq(const FieldElement& a, const FieldElement& b) const;
  bool is_zero(const FieldElement& a) const;

  FieldElement make_ext(std::vector<FieldElement> coords) const;

  // Element with index i in the canonical enumeration of a finite field.
  FieldElement nth_element(uint64_t i) const;

  std::string elem_str(const FieldElement& a) const;
  std::string descriptor_key() const;
};

/// Value-semantics handle to an interned field context.
class Field {
 public:
  Field() = default;

  static Field rationals();
  static Field prime(uint64_t p);
  /// Quadratic extension base(u), u^2 = d; d must be a nonsquare in base.
  static Field quadratic(const Field& base, const FieldElement& d);
  /// Quotient field base[x]/(modulus); modulus monic irreducible, low first.
  static Field quotient(const Field& base, const std::vector<FieldElement>& modulus);

  const FieldCtx* ctx() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }
  bool operator==(const Field& o) const { return ctx_ == o.ctx_; }
  bool operator!=(const Field& o) const { return ctx_ != o.ctx_; }

  FieldKind kind() const { return ctx_->kind; }
  uint64_t characteristic() const { return ctx_->characteristic; }
  /// Number of elements, 0 if infinite.
  uint64_t size() const { return ctx_->size; }
  bool finite() const { return ctx_->size != 0; }
  Field base() const;
  const std::string& name() const { return ctx_->name; }

  FieldElement zero() const { return ctx_->zero(); }
  FieldElement one() const { return ctx_->one(); }
  FieldElement from_int(long long n) const { return ctx_->from_int(n); }
  FieldElement from_rat(const mpq_class& q) const { return ctx_->from_rat(q); }
  /// Parse "p/q" decimal value strings (base kinds only).
  FieldElement parse(const std::string& s) const;
  /// Element of an extension field from base-field coordinates.
  FieldElement element(std::vector<FieldElement> coords) const {
    return ctx_->make_ext(std::move(coords));
  }
  FieldElement nth_element(uint64_t i) const { return ctx_->nth_element(i); }

  /// Generator u of a QuadExt (u^2 = d).
  FieldElement gen() const;
  FieldElement quad_d() const;

  /// Rewrap an interned context (contexts are immortal once interned).
  static Field wrap(const FieldCtx* c) { return Field(c); }

 private:
  explicit Field(const FieldCtx* c) : ctx_(c) {}
  const FieldCtx* ctx_ = nullptr;
};

/// Square root in the element's field, when one exists. Deterministic.
std::optional<FieldElement> is_square(const FieldElement& c);

/// Norm x * conj(x) of a QuadExt element, landing in the base field.
FieldElement norm(const FieldElement& x);

/// Trace x + conj(x) of a QuadExt element, landing in the base field.
FieldElement trace(const FieldElement& x);

struct NormResult {
  enum State { Found, None, Unknown } state;
  FieldElement preimage;  // valid iff state == Found
  std::string note;
};

/// Search for b in K with norm(b) = c, where K is a QuadExt and c a nonzero
/// base-field element. Definite over finite fields; over Q-towers runs local
/// obstruction tests plus a height-bounded search and may report Unknown.
NormResult is_norm(const FieldElement& c, const Field& K, uint64_t height_bound = 10000);

/// n-th root in the field, when one exists (deterministic).
std::optional<FieldElement> nth_root(const FieldElement& c, unsigned n);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);
bool is_prime_u64(uint64_t n);

}  // namespace birefl
