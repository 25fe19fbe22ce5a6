#include "plt/qubit_map.hpp"

#include <cmath>
#include <stdexcept>

#include "plt/numerics.hpp"

namespace plt {

const CMat2& pauli(int mu) {
  static const std::array<CMat2, 4> s = {
      CMat2{{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}}},
      CMat2{{{cplx(0, 0), cplx(1, 0)}, {cplx(1, 0), cplx(0, 0)}}},
      CMat2{{{cplx(0, 0), cplx(0, -1)}, {cplx(0, 1), cplx(0, 0)}}},
      CMat2{{{cplx(1, 0), cplx(0, 0)}, {cplx(0, 0), cplx(-1, 0)}}},
  };
  return s[mu];
}

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 k{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) k[2 * i + p][2 * j + q] = a[i][j] * b[p][q];
  return k;
}

CMat4 cmat_add(const CMat4& a, const CMat4& b) {
  CMat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + b[i][j];
  return c;
}

CMat4 cmat_scale(cplx s, const CMat4& a) {
  CMat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = s * a[i][j];
  return c;
}

CMat4 cmat_mul(const CMat4& a, const CMat4& b) {
  CMat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[i][k];
      for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

CMat4 cmat_adjoint(const CMat4& a) {
  CMat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

double cmat_frobenius(const CMat4& a) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::norm(a[i][j]);
  return std::sqrt(s);
}

cplx cmat_trace(const CMat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

HermitianEigen hermitian_eigensystem(const CMat4& h, double tol) {
  const double fro = cmat_frobenius(h);
  double herm_defect = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      herm_defect = std::max(herm_defect, std::abs(h[i][j] - std::conj(h[j][i])));
  if (herm_defect > tol * std::max(1.0, fro))
    throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");

  // Embed H = X + iY as the real symmetric [[X, -Y], [Y, X]]; every
  // eigenvalue of H shows up twice.
  std::array<std::array<double, 8>, 8> e{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx sym = 0.5 * (h[i][j] + std::conj(h[j][i]));
      e[i][j] = sym.real();
      e[i + 4][j + 4] = sym.real();
      e[i][j + 4] = -sym.imag();
      e[i + 4][j] = sym.imag();
    }
  std::array<double, 8> w{};
  std::array<std::array<double, 8>, 8> v{};
  num::jacobi_symmetric<8>(e, w, v);
  num::sort_eigen_ascending<8>(w, v);

  HermitianEigen out;
  for (int k = 0; k < 4; ++k) {
    out.values[k] = 0.5 * (w[2 * k] + w[2 * k + 1]);
    // One member of the doubled pair yields the complex eigenvector.
    for (int i = 0; i < 4; ++i)
      out.vectors[i][k] = cplx(v[i][2 * k], v[i + 4][2 * k]);
    double n = 0.0;
    for (int i = 0; i < 4; ++i) n += std::norm(out.vectors[i][k]);
    n = std::sqrt(n);
    if (n > 0.0)
      for (int i = 0; i < 4; ++i) out.vectors[i][k] /= n;
  }
  return out;
}

std::array<double, 4> hermitian_eigenvalues(const CMat4& h, double tol) {
  return hermitian_eigensystem(h, tol).values;
}

DensityMatrix DensityMatrix::from_matrix(const CMat4& m, Validation v,
                                         double psd_tol) {
  const double fro = cmat_frobenius(m);
  double herm_defect = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      herm_defect = std::max(herm_defect, std::abs(m[i][j] - std::conj(m[j][i])));
  if (herm_defect > 1e-9 * std::max(1.0, fro))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");

  DensityMatrix rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.m_[i][j] = 0.5 * (m[i][j] + std::conj(m[j][i]));
  const double tr = cmat_trace(rho.m_).real();
  if (!(tr > 0.0)) throw std::invalid_argument("DensityMatrix: trace must be positive");
  rho.trace_ = tr;

  if (v == Validation::Strict) {
    const auto eig = hermitian_eigensystem(rho.m_);
    if (eig.values[0] < -psd_tol * tr)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    if (eig.values[0] < 0.0) {
      // Tomography-style input: floor the slightly negative eigenvalues.
      CMat4 fixed{};
      for (int k = 0; k < 4; ++k) {
        const double lam = std::max(eig.values[k], 0.0);
        if (lam == 0.0 && eig.values[k] == 0.0) continue;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            fixed[i][j] += lam * eig.vectors[i][k] * std::conj(eig.vectors[j][k]);
      }
      rho.clipped_ = true;
      rho.clip_adjustment_ = -eig.values[0];
      rho.m_ = fixed;
      rho.trace_ = cmat_trace(fixed).real();
    }
  }
  return rho;
}

FourVector single_qubit_to_vector(const CMat2& tau, double tol) {
  double fro = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) fro += std::norm(tau[i][j]);
  fro = std::sqrt(fro);
  double herm = std::max(std::abs(tau[0][0].imag()), std::abs(tau[1][1].imag()));
  herm = std::max(herm, std::abs(tau[0][1] - std::conj(tau[1][0])));
  if (herm > tol * std::max(1.0, fro))
    throw std::invalid_argument("single_qubit_to_vector: matrix is not Hermitian");

  FourVector u;
  for (int mu = 0; mu < 4; ++mu) {
    const CMat2& s = pauli(mu);
    cplx tr = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) tr += tau[i][j] * s[j][i];
    u[mu] = 0.5 * tr.real();
  }
  return u;
}

CMat2 vector_to_single_qubit(const FourVector& u) {
  CMat2 tau{};
  for (int mu = 0; mu < 4; ++mu) {
    const CMat2& s = pauli(mu);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) tau[i][j] += u[mu] * s[i][j];
  }
  return tau;
}

MinkowskiMap rho_to_A(const DensityMatrix& rho) {
  Mat4 a;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const CMat4 op = kron(pauli(mu), pauli(nu));
      cplx tr = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) tr += rho.matrix()[i][j] * op[j][i];
      a(mu, nu) = tr.real();
    }
  return MinkowskiMap::lower(a);
}

CMat4 A_to_rho(const MinkowskiMap& A) {
  const Mat4 a = A.as_lower();
  CMat4 rho{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (a(mu, nu) == 0.0) continue;
      const CMat4 op = kron(pauli(mu), pauli(nu));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho[i][j] += 0.25 * a(mu, nu) * op[i][j];
    }
  return rho;
}

MinkowskiMap apply_plt_left(const MinkowskiMap& A, const LorentzTransform& L) {
  return MinkowskiMap::mixed(L.matrix() * A.as_mixed());
}

MinkowskiMap apply_plt_right(const MinkowskiMap& A, const LorentzTransform& R) {
  // A''^{mu nu} = A^{mu alpha} R^nu_alpha, which in mixed form is a right
  // multiplication by R^{-1} = G R^T G.
  return MinkowskiMap::mixed(A.as_mixed() * minkowski_adjoint(R.matrix()));
}

}  // namespace plt
