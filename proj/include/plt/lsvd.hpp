#pragma once

#include <array>

#include "plt/four_vector.hpp"
#include "plt/qubit_map.hpp"

namespace plt {

enum class StateType { TypeI, TypeII, TypeII0a, TypeII0b, TypeII0c };
enum class SignClass { Positive, Negative, Boundary };

std::string_view to_string(StateType t);
std::string_view to_string(SignClass s);

// Left/right basis attached to an LSVD.
//  - Tetrad: (e0 timelike, e1..e3 spacelike), proper orthochronous.
//  - NullFrame: (X+, X-, Y, Z) with X+.X- = 1, Y, Z unit spacelike.
//  - Rank1: only v[0] is meaningful (the Type-II0 factor on this side).
struct Frame {
  enum class Kind { Tetrad, NullFrame, Rank1 };
  Kind kind = Kind::Tetrad;
  std::array<FourVector, 4> v{};

  // max deviation from the frame relations of `kind` (0 for Rank1).
  double defect() const;
};

struct LsvdResult {
  StateType state_type = StateType::TypeI;
  // Singular values. Type-I: mu[0] >= 0 and |mu1| >= |mu2| >= |mu3|.
  // Type-II: (mu0, mu0, mu2, mu3). Type-II0: all zero.
  std::array<double, 4> mu{};
  // Jordan coupling for Type-II; rank-1 strength for Type-II0.
  double jordan_x = 0.0;
  // Eigenvalues of B, descending; lambda[a] = mu[a]^2.
  std::array<double, 4> lambda{};
  Frame left;   // e_a, contracted with A's lower index: A e_a = mu_a E_a
  Frame right;  // E_a
  SignClass sign_class = SignClass::Boundary;

  struct Diagnostics {
    double recon_residual = 0.0;    // ||reconstruct - A|| / ||A||, Frobenius
    double quartic_mismatch = 0.0;  // pipeline vs closed-form eigenvalues
    bool ill_conditioned = false;   // quartic_mismatch beyond tolerance
    int power_iterations = 0;
  } diag;
};

// B^mu_nu = A_alpha^mu A^alpha_nu (mixed index). Its eigenvectors form the
// left frame; the eigenvalues are the squared singular values of A.
MinkowskiMap compute_B(const MinkowskiMap& A);
// D: the companion composite acting on the right frame.
MinkowskiMap compute_D(const MinkowskiMap& A);

enum class DominantKind { Timelike, RepeatedLightlike, Null };

struct LorentzEigen {
  std::array<double, 4> eigenvalues{};  // descending
  // Timelike: full eigenbasis (e0, e1, e2, e3).
  // RepeatedLightlike: (X+, X-, Y, Z) with X- the generalized leg.
  // Null: unset.
  std::array<FourVector, 4> vectors{};
  DominantKind dominant_kind = DominantKind::Null;
  int power_iterations = 0;
};

// Eigen decomposition of a B-like map (g-self-adjoint with non-negative real
// spectrum). Throws std::invalid_argument when the spectrum has a complex
// pair beyond tolerance, which signals a DEC violation in the input.
LorentzEigen lorentz_eigendecompose(const MinkowskiMap& B,
                                    const Tolerances& tol = {});

// The Lorentzian singular value decomposition of A. Requires A to satisfy
// the dominant energy condition within tolerance.
LsvdResult lsvd(const MinkowskiMap& A, const Tolerances& tol = {});

// Assembles A back from frames and singular data (diagonal, Jordan or
// rank-1 form). Returns a mixed-index map.
MinkowskiMap reconstruct_A(const LsvdResult& r);

// Applies pi-rotation sign flips (absorbed into the right frame) so that
// mu1..mu3 share the sign selected by sign_class, sorted |mu1|>=|mu2|>=|mu3|.
// With normalize_scale, mu is rescaled so mu0 = 1 (frames untouched; the
// scale is returned through *scale_out when given).
LsvdResult canonicalize_signs(const LsvdResult& r, bool normalize_scale = false,
                              double* scale_out = nullptr,
                              const Tolerances& tol = {});

}  // namespace plt
