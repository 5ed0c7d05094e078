#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "birefl/mat.hpp"

namespace birefl {

/// Dense square matrix over F_p with raw residue arithmetic. Used on the hot
/// enumeration paths (coset scans, group closures, censuses); converted back
/// to Mat at the boundaries.
struct FpMat {
  uint64_t p = 0;
  int n = 0;
  std::vector<uint64_t> a;  // row-major

  FpMat() = default;
  FpMat(uint64_t p_, int n_) : p(p_), n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
  uint64_t& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
  uint64_t at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

  static FpMat identity(uint64_t p, int n);
  static FpMat from(const Mat& m);  // field must be a prime field
  Mat to_mat(const Field& f) const;

  FpMat mul(const FpMat& o) const;
  FpMat add(const FpMat& o) const;
  void add_in_place(const FpMat& o);
  FpMat neg() const;
  FpMat transpose() const;
  std::optional<FpMat> inverse() const;
  uint64_t det() const;
  bool is_identity() const;
  bool operator==(const FpMat& o) const { return p == o.p && n == o.n && a == o.a; }

  /// Bytewise key for hashing (entries fit a byte iff p < 256; otherwise
  /// 2 bytes little-endian per entry).
  std::string key() const;
};

/// Enumerate g0 * (all F_p-combinations of zbasis) when p^|zbasis| <= bound.
/// Calls visit(g) for every coset member (including singular ones); visit
/// returning false stops early. Returns true iff the enumeration was complete
/// (i.e. within bound), false if it did not run.
bool fp_coset_scan(const FpMat& g0, const std::vector<FpMat>& zbasis, uint64_t bound,
                   const std::function<bool(const FpMat&)>& visit);

}  // namespace birefl
