#include "birefl/fp.hpp"

namespace birefl {

FpMat FpMat::identity(uint64_t p, int n) {
  FpMat m(p, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::from(const Mat& m) {
  if (m.field().kind() != FieldKind::Prime)
    throw Error(Errc::FieldMismatch, "FpMat::from: not a prime field matrix");
  FpMat r(m.field().size(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).residue();
  return r;
}

Mat FpMat::to_mat(const Field& f) const {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = f.from_int(static_cast<long long>(at(i, j)));
  return m;
}

FpMat FpMat::mul(const FpMat& o) const {
  FpMat r(p, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      uint64_t aik = at(i, k);
      if (!aik) continue;
      const uint64_t* orow = &o.a[static_cast<size_t>(k * n)];
      uint64_t* rrow = &r.a[static_cast<size_t>(i * n)];
      for (int j = 0; j < n; ++j) rrow[j] = (rrow[j] + aik * orow[j]) % p;
    }
  return r;
}

FpMat FpMat::add(const FpMat& o) const {
  FpMat r = *this;
  r.add_in_place(o);
  return r;
}

void FpMat::add_in_place(const FpMat& o) {
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] += o.a[i];
    if (a[i] >= p) a[i] -= p;
  }
}

FpMat FpMat::neg() const {
  FpMat r(p, n);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] ? p - a[i] : 0;
  return r;
}

FpMat FpMat::transpose() const {
  FpMat r(p, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
  return r;
}

namespace {
uint64_t inv_mod(uint64_t a, uint64_t p) { return powmod_u64(a, p - 2, p); }
}  // namespace

std::optional<FpMat> FpMat::inverse() const {
  FpMat m = *this;
  FpMat inv = identity(p, n);
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c)) { sel = i; break; }
    if (sel < 0) return std::nullopt;
    if (sel != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(sel, j), m.at(c, j));
        std::swap(inv.at(sel, j), inv.at(c, j));
      }
    uint64_t piv = inv_mod(m.at(c, c), p);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) = m.at(c, j) * piv % p;
      inv.at(c, j) = inv.at(c, j) * piv % p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      uint64_t f = m.at(i, c);
      if (!f) continue;
      uint64_t fm = p - f;
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) + fm * m.at(c, j)) % p;
        inv.at(i, j) = (inv.at(i, j) + fm * inv.at(c, j)) % p;
      }
    }
  }
  return inv;
}

uint64_t FpMat::det() const {
  FpMat m = *this;
  uint64_t d = 1;
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c)) { sel = i; break; }
    if (sel < 0) return 0;
    if (sel != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(c, j));
      d = p - d;
      if (d == p) d = 0;
    }
    d = d * m.at(c, c) % p;
    uint64_t piv = inv_mod(m.at(c, c), p);
    for (int i = c + 1; i < n; ++i) {
      uint64_t f = m.at(i, c);
      if (!f) continue;
      uint64_t fm = p - f * piv % p;
      for (int j = c; j < n; ++j) m.at(i, j) = (m.at(i, j) + fm * m.at(c, j)) % p;
    }
  }
  return d % p;
}

bool FpMat::is_identity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string FpMat::key() const {
  std::string s;
  if (p < 256) {
    s.reserve(a.size());
    for (uint64_t v : a) s.push_back(static_cast<char>(v));
  } else {
    s.reserve(2 * a.size());
    for (uint64_t v : a) {
      s.push_back(static_cast<char>(v & 0xff));
      s.push_back(static_cast<char>((v >> 8) & 0xff));
    }
  }
  return s;
}

bool fp_coset_scan(const FpMat& g0, const std::vector<FpMat>& zbasis, uint64_t bound,
                   const std::function<bool(const FpMat&)>& visit) {
  uint64_t p = g0.p;
  uint64_t total = 1;
  for (size_t i = 0; i < zbasis.size(); ++i) {
    if (total > bound / p + 1) return false;
    total *= p;
    if (total > bound) return false;
  }
  if (zbasis.empty()) {
    visit(g0);
    return true;
  }
  // incremental odometer over z = sum c_i B_i; wrapping a digit adds B_i p
  // times in total, which is 0 mod p, so the accumulator stays consistent
  std::vector<uint64_t> digits(zbasis.size(), 0);
  FpMat z(p, g0.n);
  while (true) {
    if (!visit(g0.mul(z))) return true;
    size_t d = 0;
    while (d < digits.size()) {
      digits[d]++;
      z.add_in_place(zbasis[d]);
      if (digits[d] < p) break;
      digits[d] = 0;
      ++d;
    }
    if (d == digits.size()) return true;
  }
}

}  // namespace birefl
