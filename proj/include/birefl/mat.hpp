#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "birefl/poly.hpp"

namespace birefl {

using Vector = std::vector<FieldElement>;

/// Dense matrix over an exact field, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(Field f, int rows, int cols);
  Mat(Field f, int rows, int cols, std::vector<FieldElement> entries);
  static Mat identity(const Field& f, int n);
  static Mat zero(const Field& f, int rows, int cols) { return Mat(f, rows, cols); }
  static Mat from_ints(const Field& f, std::initializer_list<std::initializer_list<long long>> rows);
  static Mat diag(const Field& f, const Vector& d);
  static Mat block_diag(const std::vector<Mat>& blocks);
  static Mat from_columns(const Field& f, const std::vector<Vector>& cols);
  static Mat companion(const Poly& p);  // monic p

  const Field& field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  FieldElement& at(int i, int j) { return e_[static_cast<size_t>(i * cols_ + j)]; }
  const FieldElement& at(int i, int j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }
  const std::vector<FieldElement>& entries() const { return e_; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const FieldElement& c) const;
  Mat operator-() const;
  Vector operator*(const Vector& v) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat conj() const;  // entrywise Galois conjugation
  Mat pow(long e) const;
  Mat submatrix(int r0, int c0, int nr, int nc) const;
  Vector column(int j) const;
  Vector row(int i) const;
  Mat with_column(int j, const Vector& v) const;
  Mat hstack(const Mat& o) const;

  bool is_identity() const;
  bool is_symmetric() const { return *this == transpose(); }
  bool is_scalar() const;

  std::string str() const;

 private:
  Field f_;
  int rows_ = 0, cols_ = 0;
  std::vector<FieldElement> e_;
};

// ---- exact Gaussian elimination contracts ----

FieldElement det(const Mat& a);
int rank(const Mat& a);
Mat inverse(const Mat& a);  // throws Singular
bool invertible(const Mat& a);
/// Basis of the right kernel, as columns (n x k; k = nullity).
Mat kernel(const Mat& a);
/// One solution of a x = b, if any.
std::optional<Vector> solve(const Mat& a, const Vector& b);
/// One solution of a X = B (columnwise), if all columns are consistent.
std::optional<Mat> solve_matrix(const Mat& a, const Mat& b);

/// Evaluate a polynomial at a square matrix.
Mat poly_at(const Poly& p, const Mat& t);

/// Minimal polynomial (monic) via Krylov chains.
Poly minpoly(const Mat& t);
/// Characteristic and minimal polynomial (degree n resp. divisor).
std::pair<Poly, Poly> charpoly_minpoly(const Mat& t);
/// Minimal polynomial squarefree?
bool is_semisimple(const Mat& t);
bool is_unipotent(const Mat& t);

struct CyclicBlock {
  Vector generator;
  Poly invariant_factor;
};

/// Frobenius (rational canonical) data: invariant factors in ascending
/// divisibility order delta_1 | delta_2 | ... with the largest equal to the
/// minimal polynomial; transition * t * transition^-1 is block-diagonal with
/// the corresponding companion blocks.
struct CyclicDecomposition {
  std::vector<CyclicBlock> blocks;
  Mat transition;
  std::vector<Poly> chain() const {
    std::vector<Poly> c;
    for (const auto& b : blocks) c.push_back(b.invariant_factor);
    return c;
  }
};

CyclicDecomposition invariant_factors(const Mat& t);

/// Conjugator g with g a g^-1 = b, when the invariant factor chains agree.
std::optional<Mat> are_conjugate(const Mat& a, const Mat& b);

struct JordanChevalley {
  Mat s;  // semisimple part (a polynomial in the input)
  Mat u;  // unipotent part, input = s u = u s
};

JordanChevalley jordan_chevalley(const Mat& g);

struct SymmetricFactorization {
  Mat s1, s2;          // symmetric, s1 * s2 = input
  bool in_sl = false;  // both determinants 1
};

/// Factor a cyclic invertible matrix as a product of two symmetric matrices,
/// rescaling into SL(n) when an n-th root of det(S1) exists in the field.
SymmetricFactorization symmetric_factorization(const Mat& a);

/// P with P a P^-1 = a^T (always exists).
Mat transpose_similarity(const Mat& a);

/// Matrix of t restricted to the column space of basis (t * basis = basis * R).
Mat restrict_to(const Mat& t, const Mat& basis);

}  // namespace birefl
