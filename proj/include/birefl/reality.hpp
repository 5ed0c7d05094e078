#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "birefl/group.hpp"

namespace birefl {

enum class VerdictState { Yes, No, Unknown };

struct Obstruction {
  enum class Kind {
    NonReciprocalInvariantFactor,
    DeterminantParity,
    NormObstruction,
    MinusOneNotSquare,
    NoGroupConjugator,
    CentralizerDetObstruction,
  };
  Kind kind;
  std::optional<Poly> factor;        // NonReciprocalInvariantFactor
  std::optional<FieldElement> value; // NormObstruction
  std::string detail;

  std::string name() const;
};

struct RealVerdict {
  VerdictState state;
  std::optional<Mat> conjugator;      // Yes
  std::optional<Obstruction> obstruction;  // No
  std::string reason;                 // Unknown

  static RealVerdict yes(Mat g) { return {VerdictState::Yes, std::move(g), {}, {}}; }
  static RealVerdict no(Obstruction o) { return {VerdictState::No, {}, std::move(o), {}}; }
  static RealVerdict unknown(std::string r) { return {VerdictState::Unknown, {}, {}, std::move(r)}; }
};

struct StrongVerdict {
  VerdictState state;
  std::optional<Mat> sigma, tau;      // Yes: sigma * tau = t, both involutions
  std::optional<Obstruction> obstruction;
  std::string reason;

  static StrongVerdict yes(Mat s, Mat t) {
    return {VerdictState::Yes, std::move(s), std::move(t), {}, {}};
  }
  static StrongVerdict no(Obstruction o) { return {VerdictState::No, {}, {}, std::move(o), {}}; }
  static StrongVerdict unknown(std::string r) {
    return {VerdictState::Unknown, {}, {}, {}, std::move(r)};
  }
};

struct RealityReport {
  GroupSpec spec;
  Mat element;
  RealVerdict real;
  StrongVerdict strongly_real;
  std::vector<std::string> notes;
};

bool is_involution(const Mat& m);

/// Re-verify every Yes witness by exact multiplication (group membership,
/// involution law, product law, conjugation law). Throws on any violation.
/// For projective specs the laws hold modulo +-1.
void verify_report(const RealityReport& r);

// ---- GL(n) ----

/// Wonenburger's criterion: real iff every invariant factor is
/// self-reciprocal iff strongly real. Witnesses always constructed.
RealityReport gl_reality(const Mat& t);

/// Involution pair (sigma, tau) with sigma t sigma^-1 = t^-1, tau = sigma t,
/// per-block determinants controlled: pass +1 or -1 to force det(sigma).
/// Throws NotReal / DeterminantUnachievable.
std::pair<Mat, Mat> wonenburger_involutions(const Mat& t, std::optional<int> det_target);

// ---- SL(n) ----

RealityReport sl_reality(const Mat& t, uint64_t bound = 1000000, uint64_t seed = 0);

/// Conjugator with det 1 between a and b inside SL, when decidable.
/// (Helper used by the projective machinery; definite over finite fields
/// below the bound.)
struct SlConjugacy {
  VerdictState state;
  std::optional<Mat> witness;
  std::string reason;
};
SlConjugacy sl_conjugate(const Mat& a, const Mat& b, uint64_t bound = 1000000);

// ---- SO(Q) / O(Q), semisimple ----

RealityReport so_reality(const FormData& q, const Mat& t, uint64_t seed = 0);
/// Same construction without any determinant constraint (O(Q) is
/// bireflectional; exposed as a test property).
RealityReport o_reality(const FormData& q, const Mat& t, uint64_t seed = 0);

// ---- Sp(2n), semisimple ----

enum class SpTarget { Inverse, NegatedInverse };

struct SpConjResult {
  VerdictState state;          // Yes: s found; No: definitely unreachable
  std::optional<Mat> s;        // s in Sp, s^2 = -I, s t s^-1 = target
  std::string reason;
};

SpConjResult sp_conjugator(const FormData& j, const Mat& t, SpTarget target,
                           uint64_t seed = 0);

RealityReport sp_reality(const FormData& j, const Mat& t, uint64_t bound = 1000000,
                         uint64_t seed = 0);

// ---- projective groups ----

RealityReport projective_reality(const GroupSpec& spec, const Mat& t0,
                                 uint64_t bound = 1000000, uint64_t seed = 0);

// ---- unitary groups (implemented in unitary.cpp) ----

RealityReport unitary_reality(const FormData& h, const Field& ext, const Mat& t,
                              std::optional<Mat> hint = std::nullopt,
                              uint64_t height_bound = 10000);
RealityReport su_reality(const FormData& h, const Field& ext, const Mat& t,
                         std::optional<Mat> hint = std::nullopt,
                         uint64_t height_bound = 10000);

// ---- Jordan decomposition route ----

RealityReport jordan_reality_gl(const Mat& g, uint64_t bound = 1000000);

// ---- dispatch ----

struct ClassifyOptions {
  uint64_t bound = 1000000;
  uint64_t seed = 0;
  uint64_t height_bound = 10000;
};

/// Dispatch on the group kind. G2 is handled by the cayley module.
RealityReport classify(const GroupSpec& spec, const Mat& t,
                       const ClassifyOptions& opts = {});

}  // namespace birefl
