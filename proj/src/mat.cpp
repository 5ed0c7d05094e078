#include "birefl/mat.hpp"

#include <algorithm>
#include <sstream>

namespace birefl {

Mat::Mat(Field f, int rows, int cols)
    : f_(f), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * static_cast<size_t>(cols), f.zero()) {}

Mat::Mat(Field f, int rows, int cols, std::vector<FieldElement> entries)
    : f_(f), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw Error(Errc::ShapeMismatch, "entry count does not match shape");
  for (const auto& x : e_)
    if (x.ctx() != f_.ctx()) throw Error(Errc::FieldMismatch, "entry field mismatch");
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::from_ints(const Field& f,
                   std::initializer_list<std::initializer_list<long long>> rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows.begin()->size()) : 0;
  Mat m(f, nr, nc);
  int i = 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != nc)
      throw Error(Errc::ShapeMismatch, "ragged initializer");
    int j = 0;
    for (long long v : r) m.at(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

Mat Mat::diag(const Field& f, const Vector& d) {
  Mat m(f, static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Mat Mat::block_diag(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw Error(Errc::ShapeMismatch, "block_diag of nothing");
  Field f = blocks[0].field();
  int n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw Error(Errc::ShapeMismatch, "block_diag: non-square block");
    n += b.rows();
  }
  Mat m(f, n, n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return m;
}

Mat Mat::from_columns(const Field& f, const std::vector<Vector>& cols) {
  if (cols.empty()) return Mat(f, 0, 0);
  int n = static_cast<int>(cols[0].size());
  Mat m(f, n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != n)
      throw Error(Errc::ShapeMismatch, "ragged columns");
    for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(j)) = cols[j][static_cast<size_t>(i)];
  }
  return m;
}

Mat Mat::companion(const Poly& p) {
  if (!p.is_monic()) throw Error(Errc::NonMonic, "companion of non-monic polynomial");
  int n = p.degree();
  Field f = p.field();
  Mat m(f, n, n);
  for (int i = 1; i < n; ++i) m.at(i, i - 1) = f.one();
  for (int i = 0; i < n; ++i) m.at(i, n - 1) = -p.coeff(i);
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_)
    throw Error(Errc::ShapeMismatch, "matrix add shape/field mismatch");
  Mat m = *this;
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = m.e_[i] + o.e_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& x : m.e_) x = -x;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_ || f_ != o.f_)
    throw Error(Errc::ShapeMismatch, "matrix mul shape/field mismatch");
  Mat m(f_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElement& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        m.at(i, j) = m.at(i, j) + aik * o.at(k, j);
    }
  return m;
}

Mat Mat::operator*(const FieldElement& c) const {
  Mat m = *this;
  for (auto& x : m.e_) x = x * c;
  return m;
}

Vector Mat::operator*(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(Errc::ShapeMismatch, "matrix-vector shape mismatch");
  Vector r(static_cast<size_t>(rows_), f_.zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] + at(i, j) * v[static_cast<size_t>(j)];
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Mat Mat::transpose() const {
  Mat m(f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::conj() const {
  Mat m = *this;
  for (auto& x : m.e_) x = x.conj();
  return m;
}

Mat Mat::pow(long e) const {
  if (!is_square()) throw Error(Errc::NotSquare, "pow of non-square matrix");
  if (e < 0) return inverse(*this).pow(-e);
  Mat r = identity(f_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Mat Mat::submatrix(int r0, int c0, int nr, int nc) const {
  Mat m(f_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

Vector Mat::column(int j) const {
  Vector v;
  v.reserve(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Vector Mat::row(int i) const {
  Vector v;
  v.reserve(static_cast<size_t>(cols_));
  for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

Mat Mat::with_column(int j, const Vector& v) const {
  Mat m = *this;
  for (int i = 0; i < rows_; ++i) m.at(i, j) = v[static_cast<size_t>(i)];
  return m;
}

Mat Mat::hstack(const Mat& o) const {
  if (rows_ != o.rows_ || f_ != o.f_) throw Error(Errc::ShapeMismatch, "hstack");
  Mat m(f_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
  }
  return m;
}

bool Mat::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

bool Mat::is_scalar() const {
  if (!is_square() || rows_ == 0) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i != j && !at(i, j).is_zero()) return false;
      if (i == j && !(at(i, j) == at(0, 0))) return false;
    }
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

// ---------------- elimination core ----------------

namespace {

struct Echelon {
  Mat r;                    // reduced row echelon form
  std::vector<int> pivots;  // pivot column per pivot row
  FieldElement det;         // determinant of the square part tracked
  bool det_valid;
};

Echelon rref(const Mat& a, bool track_det = false) {
  Field f = a.field();
  Mat r = a;
  std::vector<int> pivots;
  FieldElement d = f.one();
  bool dv = track_det && a.is_square();
  int pr = 0;
  for (int c = 0; c < r.cols() && pr < r.rows(); ++c) {
    int sel = -1;
    for (int i = pr; i < r.rows(); ++i)
      if (!r.at(i, c).is_zero()) { sel = i; break; }
    if (sel < 0) { if (dv) d = f.zero(); continue; }
    if (sel != pr) {
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(pr, j));
      if (dv) d = -d;
    }
    FieldElement inv = r.at(pr, c).inv();
    if (dv) d = d * r.at(pr, c);
    for (int j = c; j < r.cols(); ++j) r.at(pr, j) = r.at(pr, j) * inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == pr || r.at(i, c).is_zero()) continue;
      FieldElement m = r.at(i, c);
      for (int j = c; j < r.cols(); ++j) r.at(i, j) = r.at(i, j) - m * r.at(pr, j);
    }
    pivots.push_back(c);
    ++pr;
  }
  if (dv && pr < r.rows()) d = f.zero();
  return {std::move(r), std::move(pivots), d, dv};
}

}  // namespace

FieldElement det(const Mat& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "det of non-square matrix");
  if (a.rows() == 0) return a.field().one();
  return rref(a, true).det;
}

int rank(const Mat& a) { return static_cast<int>(rref(a).pivots.size()); }

bool invertible(const Mat& a) { return a.is_square() && rank(a) == a.rows(); }

Mat inverse(const Mat& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "inverse of non-square matrix");
  Field f = a.field();
  int n = a.rows();
  Echelon e = rref(a.hstack(Mat::identity(f, n)));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[static_cast<size_t>(n - 1)] != n - 1)
    throw Error(Errc::Singular, "matrix is singular");
  return e.r.submatrix(0, n, n, n);
}

Mat kernel(const Mat& a) {
  Field f = a.field();
  Echelon e = rref(a);
  int n = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int c : e.pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<Vector> cols;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    Vector v(static_cast<size_t>(n), f.zero());
    v[static_cast<size_t>(c)] = f.one();
    for (size_t pi = 0; pi < e.pivots.size(); ++pi)
      v[static_cast<size_t>(e.pivots[pi])] = -e.r.at(static_cast<int>(pi), c);
    cols.push_back(std::move(v));
  }
  if (cols.empty()) return Mat(f, n, 0);
  return Mat::from_columns(f, cols);
}

std::optional<Mat> solve_matrix(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeMismatch, "solve: row mismatch");
  Field f = a.field();
  Echelon e = rref(a.hstack(b));
  // consistency: no pivot may fall in the RHS block
  for (int c : e.pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat x(f, a.cols(), b.cols());
  for (size_t pi = 0; pi < e.pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.at(e.pivots[pi], j) = e.r.at(static_cast<int>(pi), a.cols() + j);
  return x;
}

std::optional<Vector> solve(const Mat& a, const Vector& b) {
  auto x = solve_matrix(a, Mat::from_columns(a.field(), {b}));
  if (!x) return std::nullopt;
  return x->column(0);
}

Mat poly_at(const Poly& p, const Mat& t) {
  if (!t.is_square()) throw Error(Errc::NotSquare, "poly_at non-square");
  Field f = t.field();
  Mat r = Mat(f, t.rows(), t.rows());
  for (int i = p.degree(); i >= 0; --i) {
    r = r * t;
    FieldElement c = p.coeff(i);
    if (!c.is_zero())
      for (int d = 0; d < t.rows(); ++d) r.at(d, d) = r.at(d, d) + c;
  }
  return r;
}

// ---------------- Krylov machinery ----------------

namespace {

// Incremental eliminator with coefficient tracking for "foreground" vectors.
// Background vectors are absorbed without tracking.
struct Tracker {
  Field f;
  int n;
  // reduced rows: (row vector, pivot index, coeffs over foreground sequence)
  struct Row {
    Vector v;
    int pivot;
    Vector coeffs;  // in terms of inserted foreground vectors
  };
  std::vector<Row> rows;
  int fg_count = 0;

  explicit Tracker(Field field, int dim) : f(field), n(dim) {}

  // Reduce v (with its fg coefficient vector); returns remaining v and coeffs.
  std::pair<Vector, Vector> reduce(Vector v, Vector coeffs) const {
    for (const auto& r : rows) {
      const FieldElement& x = v[static_cast<size_t>(r.pivot)];
      if (x.is_zero()) continue;
      FieldElement m = x;
      for (int j = 0; j < n; ++j)
        v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] - m * r.v[static_cast<size_t>(j)];
      for (size_t j = 0; j < r.coeffs.size() && j < coeffs.size(); ++j)
        coeffs[j] = coeffs[j] - m * r.coeffs[j];
    }
    return {std::move(v), std::move(coeffs)};
  }

  bool insert_background(const Vector& v0) {
    auto [v, c] = reduce(v0, Vector(static_cast<size_t>(fg_count), f.zero()));
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (!v[static_cast<size_t>(j)].is_zero()) { p = j; break; }
    if (p < 0) return false;
    FieldElement inv = v[static_cast<size_t>(p)].inv();
    for (auto& x : v) x = x * inv;
    for (auto& x : c) x = x * inv;
    rows.push_back({std::move(v), p, std::move(c)});
    return true;
  }

  // Insert a foreground vector; if dependent, returns the coefficients
  // expressing it over previously inserted foreground vectors (mod background).
  std::optional<Vector> insert_foreground(const Vector& v0) {
    Vector c(static_cast<size_t>(fg_count) + 1, f.zero());
    c[static_cast<size_t>(fg_count)] = f.one();
    // extend the stored coeff vectors lazily by treating missing tail as zero
    auto [v, cr] = reduce(v0, c);
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (!v[static_cast<size_t>(j)].is_zero()) { p = j; break; }
    if (p < 0) {
      // dependent: v0 = -sum_{i<fg_count} cr[i]/cr[fg] * fg_i  (cr[fg] == 1)
      Vector out(static_cast<size_t>(fg_count), f.zero());
      for (int i = 0; i < fg_count; ++i) out[static_cast<size_t>(i)] = -cr[static_cast<size_t>(i)];
      return out;
    }
    FieldElement inv = v[static_cast<size_t>(p)].inv();
    for (auto& x : v) x = x * inv;
    for (auto& x : cr) x = x * inv;
    rows.push_back({std::move(v), p, std::move(cr)});
    ++fg_count;
    return std::nullopt;
  }
};

// Least monic s with s(t)w in U (the span of `background`); also reports the
// Krylov chain w, tw, ..., t^{deg-1} w.
struct Conductor {
  Poly s;
  std::vector<Vector> chain;
};

Conductor conductor(const Mat& t, const Vector& w, const std::vector<Vector>& background) {
  Field f = t.field();
  int n = t.rows();
  Tracker trk(f, n);
  for (const auto& b : background) trk.insert_background(b);
  std::vector<Vector> chain;
  Vector cur = w;
  for (int k = 0; k <= n; ++k) {
    auto dep = trk.insert_foreground(cur);
    if (dep) {
      std::vector<FieldElement> coeffs;
      for (int i = 0; i < k; ++i) coeffs.push_back(-(*dep)[static_cast<size_t>(i)]);
      coeffs.push_back(f.one());
      return {Poly(f, std::move(coeffs)), std::move(chain)};
    }
    chain.push_back(cur);
    cur = t * cur;
  }
  throw Error(Errc::BadInput, "conductor: no dependence within dimension bound");
}

Vector unit_vector(const Field& f, int n, int i) {
  Vector v(static_cast<size_t>(n), f.zero());
  v[static_cast<size_t>(i)] = f.one();
  return v;
}

Vector poly_apply(const Poly& p, const Mat& t, const Vector& v) {
  Field f = t.field();
  Vector r(v.size(), f.zero());
  // Horner: r = (((c_d v) t + c_{d-1} v) ...) evaluated as r = p(t) v
  for (int i = p.degree(); i >= 0; --i) {
    r = t * r;
    FieldElement c = p.coeff(i);
    if (!c.is_zero())
      for (size_t j = 0; j < v.size(); ++j) r[j] = r[j] + c * v[j];
  }
  return r;
}

}  // namespace

Poly minpoly(const Mat& t) {
  if (!t.is_square()) throw Error(Errc::NotSquare, "minpoly of non-square matrix");
  Field f = t.field();
  int n = t.rows();
  Poly m = Poly::one(f);
  for (int i = 0; i < n; ++i) {
    if (m.degree() >= n) break;
    Conductor c = conductor(t, unit_vector(f, n, i), {});
    m = lcm(m, c.s);
  }
  return m;
}

bool is_semisimple(const Mat& t) {
  Poly m = minpoly(t);
  return gcd(m, m.derivative()).degree() == 0;
}

bool is_unipotent(const Mat& t) {
  Mat u = t - Mat::identity(t.field(), t.rows());
  return u.pow(t.rows()) == Mat::zero(t.field(), t.rows(), t.rows());
}

namespace {

// Vector whose conductor into U equals the order of t on V/U. Deterministic
// over infinite fields via lambda search; over finite fields falls back to a
// factorization-based merge.
std::pair<Vector, Poly> maximal_vector(const Mat& t, const std::vector<Vector>& background) {
  Field f = t.field();
  int n = t.rows();
  Poly target = Poly::one(f);
  std::vector<std::pair<Vector, Poly>> cands;
  for (int i = 0; i < n; ++i) {
    Vector e = unit_vector(f, n, i);
    Conductor c = conductor(t, e, background);
    if (c.s.degree() > 0) cands.emplace_back(e, c.s);
    target = lcm(target, c.s);
  }
  if (target.degree() == 0) return {Vector(static_cast<size_t>(n), f.zero()), target};
  // best single candidate
  std::pair<Vector, Poly> best = cands[0];
  for (auto& c : cands)
    if (c.second.degree() > best.second.degree()) best = c;
  auto order_of = [&](const Vector& v) { return conductor(t, v, background).s; };
  while (best.second != target) {
    // pick a candidate whose conductor enlarges the lcm
    const std::pair<Vector, Poly>* other = nullptr;
    for (const auto& c : cands)
      if (lcm(best.second, c.second).degree() > best.second.degree()) {
        other = &c;
        break;
      }
    if (!other) throw Error(Errc::BadInput, "maximal_vector: stuck");
    const Vector& u = best.first;
    const Poly& su = best.second;
    const Vector& v = other->first;
    const Poly& sv = other->second;
    Poly l = lcm(su, sv);
    if (!f.finite()) {
      // u + lambda v has order l for all but finitely many lambda
      for (long lam = 0;; ++lam) {
        Vector w(u);
        FieldElement lf = f.from_int(lam);
        for (size_t i = 0; i < w.size(); ++i) w[i] = w[i] + lf * v[i];
        Poly s = order_of(w);
        if (s == l) { best = {std::move(w), s}; break; }
        if (lam > 4 * n + 16) throw Error(Errc::BadInput, "maximal_vector: lambda search failed");
      }
    } else {
      // coprime split l = a*b with a | su, b | sv, gcd(a,b) = 1 via factoring
      auto fac = factor(l, 0);
      Poly a = Poly::one(f), b = Poly::one(f);
      for (auto& [p, e] : fac.factors) {
        Poly pe = Poly::one(f);
        for (int i = 0; i < e; ++i) pe = pe * p;
        if (divmod(su, pe).second.is_zero()) a = a * pe;
        else b = b * pe;
      }
      Vector u2 = poly_apply(su / a, t, u);
      Vector v2 = poly_apply(sv / b, t, v);
      Vector w(u2);
      for (size_t i = 0; i < w.size(); ++i) w[i] = w[i] + v2[i];
      Poly s = order_of(w);
      if (!divmod(l, s).second.is_zero() || s.degree() != l.degree())
        throw Error(Errc::BadInput, "maximal_vector: merge failed");
      best = {std::move(w), s};
    }
  }
  return best;
}

}  // namespace

CyclicDecomposition invariant_factors(const Mat& t) {
  if (!t.is_square()) throw Error(Errc::NotSquare, "invariant_factors of non-square");
  Field f = t.field();
  int n = t.rows();
  std::vector<CyclicBlock> blocks;  // built in descending divisibility
  std::vector<Vector> background;   // accumulated cyclic bases
  std::vector<std::vector<Vector>> chains;

  while (static_cast<int>(background.size()) < n) {
    auto [w, s] = maximal_vector(t, background);
    if (s.degree() == 0) throw Error(Errc::BadInput, "invariant_factors: stalled");
    // correction: s(t) w = sum f_i(t) v_i with s | f_i; subtract (f_i/s)(t) v_i
    if (!blocks.empty()) {
      Vector target = poly_apply(s, t, w);
      bool zero = true;
      for (const auto& x : target)
        if (!x.is_zero()) { zero = false; break; }
      if (!zero) {
        // express target in the accumulated chain basis
        std::vector<Vector> basis_cols = background;
        Mat B = Mat::from_columns(f, basis_cols);
        auto sol = solve(B, target);
        if (!sol) throw Error(Errc::BadInput, "invariant_factors: inconsistent correction");
        size_t off = 0;
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
          int deg = blocks[bi].invariant_factor.degree();
          std::vector<FieldElement> fc;
          for (int j = 0; j < deg; ++j) fc.push_back((*sol)[off + static_cast<size_t>(j)]);
          Poly fi(f, std::move(fc));
          auto [qi, ri] = divmod(fi, s);
          if (!ri.is_zero())
            throw Error(Errc::BadInput, "invariant_factors: divisibility violated");
          Vector corr = poly_apply(qi, t, blocks[bi].generator);
          for (size_t j = 0; j < w.size(); ++j) w[j] = w[j] - corr[j];
          off += static_cast<size_t>(deg);
        }
      }
    }
    // recompute the pure chain of w (annihilated exactly by s now)
    Conductor c = conductor(t, w, {});
    if (c.s != s) throw Error(Errc::BadInput, "invariant_factors: correction changed order");
    blocks.push_back({w, s});
    chains.push_back(c.chain);
    for (const auto& v : c.chain) background.push_back(v);
  }

  // ascending order for the public chain
  std::reverse(blocks.begin(), blocks.end());
  std::reverse(chains.begin(), chains.end());
  std::vector<Vector> cols;
  for (const auto& ch : chains)
    for (const auto& v : ch) cols.push_back(v);
  Mat T = Mat::from_columns(f, cols);
  Mat Tinv = inverse(T);
  CyclicDecomposition out{std::move(blocks), Tinv};

  // self-check: transition conjugates t to the companion block form
  Mat F = Tinv * t * T;
  std::vector<Mat> comps;
  for (const auto& b : out.blocks) comps.push_back(Mat::companion(b.invariant_factor));
  if (F != Mat::block_diag(comps))
    throw Error(Errc::BadInput, "invariant_factors: verification failed");
  return out;
}

std::pair<Poly, Poly> charpoly_minpoly(const Mat& t) {
  CyclicDecomposition d = invariant_factors(t);
  Field f = t.field();
  Poly chi = Poly::one(f);
  for (const auto& b : d.blocks) chi = chi * b.invariant_factor;
  return {chi, d.blocks.back().invariant_factor};
}

std::optional<Mat> are_conjugate(const Mat& a, const Mat& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows() || a.field() != b.field())
    throw Error(Errc::ShapeMismatch, "are_conjugate: incompatible inputs");
  CyclicDecomposition da = invariant_factors(a), db = invariant_factors(b);
  if (da.blocks.size() != db.blocks.size()) return std::nullopt;
  for (size_t i = 0; i < da.blocks.size(); ++i)
    if (da.blocks[i].invariant_factor != db.blocks[i].invariant_factor) return std::nullopt;
  // da.transition * a * da.transition^-1 = F = db.transition * b * db.transition^-1
  Mat g = inverse(db.transition) * da.transition;
  return g;  // g a g^-1 = b
}

JordanChevalley jordan_chevalley(const Mat& g) {
  if (!g.is_square()) throw Error(Errc::NotSquare, "jordan_chevalley");
  Field f = g.field();
  int n = g.rows();
  if (!invertible(g)) throw Error(Errc::Singular, "jordan_chevalley: singular input");
  Poly m = minpoly(g);
  Poly rad = Poly::one(f);
  for (const auto& [fac, e] : squarefree_decomposition(m)) {
    (void)e;
    rad = rad * fac;
  }
  rad = rad.monic();
  if (rad == m) return {g, Mat::identity(f, n)};

  // Newton iteration on a(X) with rad(a) -> 0 (mod m): a <- a - rad(a)/rad'(a)
  Poly a = Poly::x(f);
  for (int iter = 0; iter <= n + 2; ++iter) {
    Poly val = compose_mod(rad, a, m);
    if (val.is_zero()) break;
    Poly dval = compose_mod(rad.derivative(), a, m);
    auto [gg, ss, tt] = xgcd(dval, m);
    if (gg.degree() != 0)
      throw Error(Errc::BadInput, "jordan_chevalley: derivative not invertible");
    Poly dinv = ss * Poly::constant(gg.coeff(0).inv());
    a = (a - val * dinv) % m;
  }
  if (!compose_mod(rad, a, m).is_zero())
    throw Error(Errc::BadInput, "jordan_chevalley: Newton iteration did not converge");
  Mat s = poly_at(a, g);
  Mat u = inverse(s) * g;
  return {s, u};
}

SymmetricFactorization symmetric_factorization(const Mat& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "symmetric_factorization");
  if (!invertible(a)) throw Error(Errc::Singular, "symmetric_factorization: singular");
  Field f = a.field();
  int n = a.rows();
  CyclicDecomposition d = invariant_factors(a);
  if (d.blocks.size() != 1)
    throw Error(Errc::NotCyclic, "symmetric_factorization requires a cyclic matrix");
  Poly p = d.blocks[0].invariant_factor;
  // T^-1 a T = companion(p) where T has the Krylov columns
  Mat T = inverse(d.transition);

  // Hankel pair for the companion matrix C of p = x^n + a_{n-1} x^{n-1} + ...:
  // S2 = [a_{i+j-1}] (a_n = 1, zero beyond), K1 = C * S2 symmetric.
  Mat S2h(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = i + j + 1;
      if (k < n) S2h.at(i, j) = p.coeff(k);
      else if (k == n) S2h.at(i, j) = f.one();
    }
  Mat C = Mat::companion(p);
  Mat K1 = C * S2h;
  Mat K2 = inverse(S2h);

  Mat S1 = T * K1 * T.transpose();
  Mat Tinv = d.transition;
  Mat S2 = Tinv.transpose() * K2 * Tinv;

  SymmetricFactorization out{S1, S2, false};
  FieldElement d1 = det(out.s1);
  if (d1.is_one() && det(a).is_one()) {
    out.in_sl = true;
    return out;
  }
  if (det(a).is_one()) {
    auto c = nth_root(d1.inv(), static_cast<unsigned>(n));
    if (c) {
      out.s1 = out.s1 * (*c);
      out.s2 = out.s2 * c->inv();
      out.in_sl = det(out.s1).is_one() && det(out.s2).is_one();
    }
  }
  return out;
}

Mat transpose_similarity(const Mat& a) {
  if (!a.is_square()) throw Error(Errc::NotSquare, "transpose_similarity");
  if (invertible(a)) {
    CyclicDecomposition d = invariant_factors(a);
    if (d.blocks.size() == 1) {
      SymmetricFactorization sf = symmetric_factorization(a);
      return inverse(sf.s1);  // S1^-1 a S1 = a^T
    }
  }
  auto g = are_conjugate(a, a.transpose());
  if (!g) throw Error(Errc::BadInput, "transpose_similarity: impossible");
  return *g;
}

Mat restrict_to(const Mat& t, const Mat& basis) {
  auto r = solve_matrix(basis, t * basis);
  if (!r) throw Error(Errc::BadInput, "restrict_to: space not invariant");
  return *r;
}

}  // namespace birefl
