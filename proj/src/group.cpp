#include "birefl/group.hpp"

namespace birefl {

GroupSpec GroupSpec::gl(const Field& f, int n) { return {GroupKind::GL, n, f, {}, {}, {}}; }
GroupSpec GroupSpec::sl(const Field& f, int n) { return {GroupKind::SL, n, f, {}, {}, {}}; }

GroupSpec GroupSpec::orth(const Mat& gram) {
  if (!gram.is_square() || !gram.is_symmetric() || !invertible(gram))
    throw Error(Errc::BadInput, "O: gram must be symmetric nondegenerate");
  return {GroupKind::O, gram.rows(), gram.field(), FormData{gram, FormFlavor::Symmetric}, {}, {}};
}

GroupSpec GroupSpec::special_orth(const Mat& gram) {
  GroupSpec s = orth(gram);
  s.kind = GroupKind::SO;
  return s;
}

GroupSpec GroupSpec::symplectic(const Mat& gram) {
  if (!gram.is_square() || gram.rows() % 2 != 0)
    throw Error(Errc::OddSymplecticDim, "Sp: even dimension required");
  if (!(gram.transpose() == -gram) || !invertible(gram))
    throw Error(Errc::BadInput, "Sp: gram must be skew-symmetric nondegenerate");
  return {GroupKind::Sp, gram.rows(), gram.field(), FormData{gram, FormFlavor::Alternating}, {}, {}};
}

GroupSpec GroupSpec::unitary(const Mat& gram, const Field& ext) {
  if (ext.kind() != FieldKind::QuadExt)
    throw Error(Errc::BadInput, "U: ext must be a quadratic extension");
  if (gram.field() != ext) throw Error(Errc::FieldMismatch, "U: gram must live over ext");
  if (!(gram.transpose() == gram.conj()) || !invertible(gram))
    throw Error(Errc::BadInput, "U: gram must be hermitian nondegenerate");
  return {GroupKind::U, gram.rows(), ext.base(), FormData{gram, FormFlavor::Hermitian}, ext, {}};
}

GroupSpec GroupSpec::special_unitary(const Mat& gram, const Field& ext) {
  GroupSpec s = unitary(gram, ext);
  s.kind = GroupKind::SU;
  return s;
}

GroupSpec GroupSpec::projective(GroupSpec inner_spec) {
  bool ok = (inner_spec.kind == GroupKind::SL && inner_spec.n == 2) ||
            inner_spec.kind == GroupKind::Sp;
  if (!ok)
    throw Error(Errc::BadInput, "Projective supports SL(2) and Sp(2n) inner groups");
  GroupSpec s;
  s.kind = GroupKind::Projective;
  s.n = inner_spec.n;
  s.field = inner_spec.field;
  s.inner = std::make_shared<GroupSpec>(std::move(inner_spec));
  return s;
}

GroupSpec GroupSpec::g2(const Field& f) { return {GroupKind::G2, 8, f, {}, {}, {}}; }

Field GroupSpec::entry_field() const {
  if (kind == GroupKind::U || kind == GroupKind::SU) return ext;
  if (kind == GroupKind::Projective) return inner->entry_field();
  return field;
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::GL: return "GL(" + std::to_string(n) + "," + field.name() + ")";
    case GroupKind::SL: return "SL(" + std::to_string(n) + "," + field.name() + ")";
    case GroupKind::O: return "O(" + std::to_string(n) + "," + field.name() + ")";
    case GroupKind::SO: return "SO(" + std::to_string(n) + "," + field.name() + ")";
    case GroupKind::Sp: return "Sp(" + std::to_string(n) + "," + field.name() + ")";
    case GroupKind::U: return "U(" + std::to_string(n) + "," + ext.name() + ")";
    case GroupKind::SU: return "SU(" + std::to_string(n) + "," + ext.name() + ")";
    case GroupKind::Projective: return "P" + inner->name();
    case GroupKind::G2: return "G2(" + field.name() + ")";
  }
  return "?";
}

bool contains(const GroupSpec& spec, const Mat& a) {
  if (!a.is_square()) throw Error(Errc::ShapeMismatch, "contains: non-square");
  if (spec.kind == GroupKind::Projective) return contains(*spec.inner, a);
  if (a.rows() != spec.dim()) throw Error(Errc::ShapeMismatch, "contains: dimension mismatch");
  if (a.field() != spec.entry_field())
    throw Error(Errc::FieldMismatch, "contains: entries in the wrong field");
  switch (spec.kind) {
    case GroupKind::GL:
      return invertible(a);
    case GroupKind::SL:
      return det(a).is_one();
    case GroupKind::O:
    case GroupKind::SO: {
      const Mat& g = spec.form->gram;
      if (!(a.transpose() * g * a == g)) return false;
      return spec.kind == GroupKind::O || det(a).is_one();
    }
    case GroupKind::Sp: {
      const Mat& g = spec.form->gram;
      return a.transpose() * g * a == g;
    }
    case GroupKind::U:
    case GroupKind::SU: {
      const Mat& g = spec.form->gram;
      if (!(a.transpose() * g * a.conj() == g)) return false;
      return spec.kind == GroupKind::U || det(a).is_one();
    }
    case GroupKind::G2:
      // handled by the cayley module (is_automorphism); a bare matrix cannot
      // be checked here without the algebra structure
      throw Error(Errc::BadInput, "contains: use g2 automorphism check");
    case GroupKind::Projective:
      break;
  }
  return false;
}

bool projectively_equal(const Mat& a, const Mat& b) { return a == b || a == -b; }

Mat standard_symplectic_gram(const Field& f, int n) {
  if (n % 2) throw Error(Errc::OddSymplecticDim, "symplectic gram needs even n");
  Mat nb = Mat::from_ints(f, {{0, -1}, {1, 0}});
  std::vector<Mat> blocks(static_cast<size_t>(n / 2), nb);
  return Mat::block_diag(blocks);
}

FormData split_symmetric_form(const Field& f, int n) {
  int m = n / 2;
  Mat g(f, n, n);
  for (int i = 0; i < m; ++i) {
    // S = anti-identity: [[0, S], [S, 0]]
    g.at(i, 2 * m - 1 - i) = f.one();
    g.at(2 * m - 1 - i, i) = f.one();
  }
  if (n % 2) g.at(n - 1, n - 1) = f.one();
  return {g, FormFlavor::Symmetric};
}

FormData standard_form(const Field& f, FormFlavor flavor, int n) {
  switch (flavor) {
    case FormFlavor::Alternating:
      return {standard_symplectic_gram(f, n), FormFlavor::Alternating};
    case FormFlavor::Symmetric:
      return split_symmetric_form(f, n);
    case FormFlavor::Hermitian: {
      if (f.kind() != FieldKind::QuadExt)
        throw Error(Errc::BadInput, "hermitian form needs a quadratic extension field");
      Mat g = Mat::identity(f, n);
      if (n >= 2) g.at(n - 1, n - 1) = -f.one();
      return {g, FormFlavor::Hermitian};
    }
  }
  throw Error(Errc::BadInput, "unknown form flavor");
}

ConjugatorSpaces conjugator_space(const Mat& t) {
  if (!invertible(t)) throw Error(Errc::Singular, "conjugator_space: t not invertible");
  Mat tinv = inverse(t);
  return {intertwiner_space(t, tinv), intertwiner_space(t, t)};
}

std::vector<Mat> intertwiner_space(const Mat& t, const Mat& s) {
  // X t = s X as a linear system in the n^2 entries of X
  Field f = t.field();
  int n = t.rows();
  Mat sys(f, n * n, n * n);
  // row index: equation (i,j); column index: unknown X_{a,b}
  // (X t)_{ij} = sum_b X_{i b} t_{b j}; (s X)_{ij} = sum_a s_{i a} X_{a j}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int r = i * n + j;
      for (int b = 0; b < n; ++b)
        sys.at(r, i * n + b) = sys.at(r, i * n + b) + t.at(b, j);
      for (int a = 0; a < n; ++a)
        sys.at(r, a * n + j) = sys.at(r, a * n + j) - s.at(i, a);
    }
  Mat k = kernel(sys);
  std::vector<Mat> basis;
  for (int c = 0; c < k.cols(); ++c) {
    Mat x(f, n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) x.at(a, b) = k.at(a * n + b, c);
    basis.push_back(std::move(x));
  }
  return basis;
}

bool for_each_combination(const std::vector<Mat>& basis, uint64_t bound,
                          const std::function<bool(const Mat&)>& visit) {
  if (basis.empty()) return true;
  Field f = basis[0].field();
  if (!f.finite()) return false;
  uint64_t q = f.size();
  uint64_t total = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (total > bound / q + 1) return false;
    total *= q;
    if (total > bound) return false;
  }
  int n = basis[0].rows(), m = basis[0].cols();
  std::vector<uint64_t> idx(basis.size(), 0);
  Mat cur = Mat::zero(f, n, m);
  // odometer enumeration with incremental updates on the lowest digit
  std::vector<FieldElement> elems;
  for (uint64_t i = 0; i < q; ++i) elems.push_back(f.nth_element(i));
  while (true) {
    if (!visit(cur)) return true;
    // increment
    size_t d = 0;
    while (d < idx.size()) {
      idx[d]++;
      if (idx[d] < q) break;
      idx[d] = 0;
      ++d;
    }
    if (d == idx.size()) return true;
    // rebuild (simple and exact; hot paths use the fp fast path elsewhere)
    cur = Mat::zero(f, n, m);
    for (size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] == 0) continue;
      cur = cur + basis[i] * elems[idx[i]];
    }
  }
}

RestrictedConjugators restrict_conjugators(const GroupSpec& spec, const Mat& t,
                                           uint64_t bound) {
  if (!contains(spec, t)) throw Error(Errc::NotInGroup, "restrict_conjugators: t not in group");
  RestrictedConjugators out;
  out.space = conjugator_space(t).reversers;
  GroupSpec s = spec;
  out.predicate = [s](const Mat& x) { return invertible(x) && contains(s, x); };
  Field f = t.field();
  if (f.finite()) {
    uint64_t q = f.size();
    uint64_t total = 1;
    bool fits = true;
    for (size_t i = 0; i < out.space.size(); ++i) {
      if (total > bound / q + 1) { fits = false; break; }
      total *= q;
      if (total > bound) { fits = false; break; }
    }
    out.space_size = fits ? total : 0;
    if (fits) {
      out.enumerated = true;
      for_each_combination(out.space, bound, [&](const Mat& x) {
        if (out.predicate(x)) out.members.push_back(x);
        return true;
      });
    }
  }
  return out;
}

}  // namespace birefl
