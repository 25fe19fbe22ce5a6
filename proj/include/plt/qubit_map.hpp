#pragma once

#include <array>
#include <complex>

#include "plt/lorentz.hpp"

namespace plt {

using cplx = std::complex<double>;
using CMat2 = std::array<std::array<cplx, 2>, 2>;
using CMat4 = std::array<std::array<cplx, 4>, 4>;

// sigma_mu = (1, sigma_x, sigma_y, sigma_z)
const CMat2& pauli(int mu);

CMat4 kron(const CMat2& a, const CMat2& b);

CMat4 cmat_add(const CMat4& a, const CMat4& b);
CMat4 cmat_scale(cplx s, const CMat4& a);
CMat4 cmat_mul(const CMat4& a, const CMat4& b);
CMat4 cmat_adjoint(const CMat4& a);
double cmat_frobenius(const CMat4& a);
cplx cmat_trace(const CMat4& a);

// Real 4x4 spacetime tensor of a two-qubit state, tagged with its index
// position. BothLower holds A_{mu nu} = Tr(rho sigma_mu x sigma_nu); Mixed
// holds A^mu_nu, one metric contraction away (spatial rows flip sign).
struct MinkowskiMap {
  enum class IndexPosition { BothLower, Mixed };

  Mat4 m;
  IndexPosition pos = IndexPosition::BothLower;

  static MinkowskiMap lower(const Mat4& m) {
    return {m, IndexPosition::BothLower};
  }
  static MinkowskiMap mixed(const Mat4& m) { return {m, IndexPosition::Mixed}; }

  Mat4 as_mixed() const {
    return pos == IndexPosition::Mixed ? m : metric_flip_rows(m);
  }
  Mat4 as_lower() const {
    return pos == IndexPosition::BothLower ? m : metric_flip_rows(m);
  }
};

// 4x4 Hermitian non-negative matrix of a two-qubit state, basis order
// |00>, |01>, |10>, |11> with the first factor being qubit 1. Normalization
// is not required; trace must be positive.
class DensityMatrix {
 public:
  enum class Validation {
    Strict,   // reject any eigenvalue below -psd_tol * trace
    Lenient,  // accept indefinite matrices (analysis pipelines report them)
  };

  // Symmetrizes within tolerance and, in Strict mode, floors eigenvalues in
  // (-psd_tol * trace, 0) to zero, recording the adjustment. Throws
  // std::invalid_argument on hard violations.
  static DensityMatrix from_matrix(const CMat4& m,
                                   Validation v = Validation::Strict,
                                   double psd_tol = 1e-9);

  const CMat4& matrix() const { return m_; }
  double trace() const { return trace_; }
  bool clipped() const { return clipped_; }
  double clip_adjustment() const { return clip_adjustment_; }

 private:
  CMat4 m_{};
  double trace_ = 0.0;
  bool clipped_ = false;
  double clip_adjustment_ = 0.0;
};

// u^mu = Tr(tau sigma_mu) / 2 for a Hermitian 2x2 tau. tau is non-negative
// exactly when u is future-pointing causal.
FourVector single_qubit_to_vector(const CMat2& tau, double tol = 1e-9);

// tau = u^mu sigma_mu.
CMat2 vector_to_single_qubit(const FourVector& u);

// A_{mu nu} = Tr(rho sigma_mu x sigma_nu).
MinkowskiMap rho_to_A(const DensityMatrix& rho);

// Inverse of rho_to_A; the output Hermitian matrix need not be non-negative.
CMat4 A_to_rho(const MinkowskiMap& A);

// Lorentz action on qubit 1: A'^mu_nu = L^mu_alpha A^alpha_nu.
MinkowskiMap apply_plt_left(const MinkowskiMap& A, const LorentzTransform& L);
// Lorentz action on qubit 2: A''^{mu nu} = A^{mu alpha} R^nu_alpha.
MinkowskiMap apply_plt_right(const MinkowskiMap& A, const LorentzTransform& R);

// Eigenvalues of a 4x4 complex Hermitian matrix, ascending. Throws
// std::invalid_argument when the matrix is not Hermitian within `tol`
// relative to its Frobenius norm.
std::array<double, 4> hermitian_eigenvalues(const CMat4& h, double tol = 1e-9);

// Eigen decomposition used by the PSD clip and the PPT oracle: returns
// ascending eigenvalues and matching orthonormal eigenvectors (columns).
struct HermitianEigen {
  std::array<double, 4> values{};
  std::array<std::array<cplx, 4>, 4> vectors{};  // vectors[i][k]: component i of eigvec k
};
HermitianEigen hermitian_eigensystem(const CMat4& h, double tol = 1e-9);

}  // namespace plt
