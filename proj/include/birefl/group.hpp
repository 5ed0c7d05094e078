#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "birefl/mat.hpp"

namespace birefl {

enum class GroupKind { GL, SL, O, SO, Sp, U, SU, Projective, G2 };

enum class FormFlavor { Symmetric, Alternating, Hermitian };

/// A bilinear/sesquilinear form given by its Gram matrix.
struct FormData {
  Mat gram;
  FormFlavor flavor;
};

/// Which classical group over which form. For U/SU the gram lives over the
/// quadratic extension `ext` and `field` is its base; for the other matrix
/// kinds entries live in `field`. Projective wraps an inner spec (SL(2) or
/// Sp(2n)), with elements represented by inner-group matrices modulo +-1.
struct GroupSpec {
  GroupKind kind;
  int n = 0;
  Field field;
  std::optional<FormData> form;
  Field ext;  // U/SU only
  std::shared_ptr<GroupSpec> inner;

  static GroupSpec gl(const Field& f, int n);
  static GroupSpec sl(const Field& f, int n);
  static GroupSpec orth(const Mat& gram);      // O(gram)
  static GroupSpec special_orth(const Mat& gram);
  static GroupSpec symplectic(const Mat& gram);
  static GroupSpec unitary(const Mat& gram, const Field& ext);
  static GroupSpec special_unitary(const Mat& gram, const Field& ext);
  static GroupSpec projective(GroupSpec inner_spec);
  static GroupSpec g2(const Field& f);

  int dim() const { return kind == GroupKind::Projective ? inner->dim() : n; }
  /// Field the matrix entries live in (ext for U/SU).
  Field entry_field() const;
  std::string name() const;
};

/// Group membership test (for Projective: membership of a representative).
bool contains(const GroupSpec& spec, const Mat& a);

/// Projective equality: a = +-b.
bool projectively_equal(const Mat& a, const Mat& b);

/// The paper's standard block forms: alternating diag(N, ..., N); split
/// symmetric [[0, S], [S, 0]] with S the anti-identity (odd n gets a 1-block
/// appended); hermitian diag(1, ..., 1, -1) over the extension field.
FormData standard_form(const Field& f, FormFlavor flavor, int n);
FormData split_symmetric_form(const Field& f, int n);
Mat standard_symplectic_gram(const Field& f, int n);  // diag(N, ..., N)

struct ConjugatorSpaces {
  /// Basis of {X : X t = t^-1 X}.
  std::vector<Mat> reversers;
  /// Basis of the centralizer {X : X t = t X}.
  std::vector<Mat> centralizer;
};

/// Solve the two linear systems exactly.
ConjugatorSpaces conjugator_space(const Mat& t);

/// Basis of {X : X t = s X} for arbitrary target s.
std::vector<Mat> intertwiner_space(const Mat& t, const Mat& s);

struct RestrictedConjugators {
  bool enumerated = false;
  /// Explicit list (only when enumerated).
  std::vector<Mat> members;
  /// Parametric description: the linear space basis; members are the
  /// invertible combinations that satisfy the group predicate.
  std::vector<Mat> space;
  std::function<bool(const Mat&)> predicate;
  uint64_t space_size = 0;  // |field|^dim when finite
};

/// Intersect the conjugator space of t with the group. Over finite fields
/// with at most `bound` candidate combinations, returns the explicit list;
/// otherwise returns the parametric description with a membership predicate.
RestrictedConjugators restrict_conjugators(const GroupSpec& spec, const Mat& t,
                                           uint64_t bound = 1000000);

/// Enumerate all F-linear combinations of `basis` (finite field), calling
/// visit(X) for each; stops early if visit returns false. Returns false when
/// the space is too large for the bound.
bool for_each_combination(const std::vector<Mat>& basis, uint64_t bound,
                          const std::function<bool(const Mat&)>& visit);

}  // namespace birefl
