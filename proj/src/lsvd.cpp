#include "plt/lsvd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "plt/numerics.hpp"

namespace plt {

std::string_view to_string(StateType t) {
  switch (t) {
    case StateType::TypeI: return "type-I";
    case StateType::TypeII: return "type-II";
    case StateType::TypeII0a: return "type-II0a";
    case StateType::TypeII0b: return "type-II0b";
    case StateType::TypeII0c: return "type-II0c";
  }
  return "unknown";
}

std::string_view to_string(SignClass s) {
  switch (s) {
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
    case SignClass::Boundary: return "boundary";
  }
  return "unknown";
}

double Frame::defect() const {
  double worst = 0.0;
  auto check = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  switch (kind) {
    case Kind::Tetrad:
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
          check(minkowski_dot(v[a], v[b]), a == b ? metric_diag[a] : 0.0);
      break;
    case Kind::NullFrame:
      check(minkowski_dot(v[0], v[0]), 0.0);
      check(minkowski_dot(v[1], v[1]), 0.0);
      check(minkowski_dot(v[0], v[1]), 1.0);
      for (int k = 2; k < 4; ++k) {
        check(minkowski_dot(v[0], v[k]), 0.0);
        check(minkowski_dot(v[1], v[k]), 0.0);
        for (int l = k; l < 4; ++l)
          check(minkowski_dot(v[k], v[l]), k == l ? -1.0 : 0.0);
      }
      break;
    case Kind::Rank1:
      break;
  }
  return worst;
}

MinkowskiMap compute_B(const MinkowskiMap& A) {
  const Mat4 m = A.as_mixed();
  return MinkowskiMap::mixed(minkowski_adjoint(m) * m);
}

MinkowskiMap compute_D(const MinkowskiMap& A) {
  const Mat4 m = A.as_mixed();
  return MinkowskiMap::mixed(m * minkowski_adjoint(m));
}

namespace {

double dot_e(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

struct PowerResult {
  FourVector v;
  double lambda = 0.0;
  int iters = 0;
  bool converged = false;
};

// Shifted power iteration for the dominant eigenpair of B. The trace shift
// keeps the iterated operator's spectrum non-negative.
PowerResult power_iteration(const Mat4& b, double scale2) {
  const double shift = std::max(b.trace(), 0.0);
  const Mat4 p = b + shift * Mat4::identity();
  PowerResult res;
  FourVector v{1, 0, 0, 0};
  for (int it = 0; it < 400; ++it) {
    FourVector w = p * v;
    const double n = euclidean_norm(w);
    if (n < 1e-280) {
      v = FourVector{0, 1, 0, 0};  // restart off a dead direction
      continue;
    }
    w = (1.0 / n) * w;
    const FourVector bw = b * w;
    const double lam = dot_e(bw, w);
    const FourVector r = bw - lam * w;
    res.iters = it + 1;
    v = w;
    if (euclidean_norm(r) <= 1e-13 * std::max(std::abs(lam), scale2)) {
      res.v = w;
      res.lambda = lam;
      res.converged = true;
      return res;
    }
  }
  res.v = v;
  return res;
}

// Euclid-orthonormal near-kernel basis of a symmetric matrix: eigenvectors
// whose |eigenvalue| falls below abs_threshold (scaled by the caller to the
// parent operator, since ||S|| itself vanishes under full degeneracy).
// Always returns at least `min_count` vectors.
std::vector<FourVector> sym_kernel(const Mat4& s, double abs_threshold,
                                   int min_count) {
  std::array<std::array<double, 4>, 4> n{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) n[i][j] = 0.5 * (s.a[i][j] + s.a[j][i]);
  std::array<double, 4> w{};
  std::array<std::array<double, 4>, 4> v{};
  num::jacobi_symmetric<4>(n, w, v);
  std::array<int, 4> idx{0, 1, 2, 3};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(w[a]) < std::abs(w[b]); });
  const double thr = abs_threshold;
  std::vector<FourVector> out;
  for (int k = 0; k < 4; ++k) {
    const int c = idx[k];
    if (k < min_count || std::abs(w[c]) <= thr)
      out.push_back({v[0][c], v[1][c], v[2][c], v[3][c]});
    else
      break;
  }
  return out;
}

// Kernel basis of the g-self-adjoint mixed-index operator C. Working on the
// symmetric G C avoids the conditioning loss of forming C^T C, which matters
// for strongly boosted frames where ||C|| dwarfs the eigenvalue gaps.
std::vector<FourVector> gsa_kernel(const Mat4& c_mixed, double abs_threshold,
                                   int min_count) {
  return sym_kernel(metric_flip_rows(c_mixed), abs_threshold, min_count);
}

struct EigenspaceShape {
  bool has_timelike = false;
  FourVector timelike;  // unit, future
  bool has_null = false;
  FourVector null_dir;  // future, Euclid-normalized
  std::vector<FourVector> spacelike;
};

// Classifies the causal content of a subspace through the eigenvalues of its
// Minkowski Gram matrix. The Gram kernel vector, when present, is the unique
// lightlike direction orthogonal to the whole subspace.
EigenspaceShape analyze_subspace(const std::vector<FourVector>& basis,
                                 double tol) {
  const int k = static_cast<int>(basis.size());
  std::array<std::array<double, 4>, 4> g{};
  for (int i = 0; i < 4; ++i) g[i][i] = -1e6 * (1.0 + i);  // inert padding
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g[i][j] = minkowski_dot(basis[i], basis[j]);
  std::array<double, 4> w{};
  std::array<std::array<double, 4>, 4> v{};
  num::jacobi_symmetric<4>(g, w, v);
  num::sort_eigen_ascending<4>(w, v);

  auto combo = [&](int col) {
    FourVector u;
    for (int i = 0; i < k; ++i) u = u + v[i][col] * basis[i];
    return u;
  };

  EigenspaceShape shape;
  for (int col = 0; col < 4; ++col) {
    if (w[col] < -1e5) continue;  // padding
    if (w[col] > tol) {
      FourVector t = combo(col);
      const double n2 = minkowski_dot(t, t);
      if (n2 > 0.0) {
        t = (1.0 / std::sqrt(n2)) * t;
        if (t[0] < 0.0) t = -t;
        shape.has_timelike = true;
        shape.timelike = t;
      }
    } else if (std::abs(w[col]) <= tol) {
      FourVector l = combo(col);
      const double n = euclidean_norm(l);
      if (n > 1e-150) {
        l = (1.0 / n) * l;
        if (l[0] < 0.0) l = -l;
        shape.has_null = true;
        shape.null_dir = l;
      }
    } else {
      shape.spacelike.push_back(combo(col));
    }
  }
  return shape;
}

// Minkowski Gram-Schmidt within the spacelike sector; returns a unit
// spacelike vector or a zero vector when the seed degenerates.
FourVector orthonormalize_spacelike(FourVector u,
                                    const std::vector<FourVector>& against) {
  for (const FourVector& f : against) {
    const double ff = minkowski_dot(f, f);
    if (std::abs(ff) < 1e-300) continue;
    u = u - (minkowski_dot(u, f) / ff) * f;
  }
  const double n2 = -minkowski_dot(u, u);
  if (n2 <= 1e-24) return FourVector{};
  return (1.0 / std::sqrt(n2)) * u;
}

double frame_det(const std::array<FourVector, 4>& f) {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) m(mu, a) = f[a][mu];
  return m.det();
}

// Completes missing right-frame legs (zero singular values) with unit
// spacelike vectors orthogonal to the existing ones.
void complete_legs(std::array<FourVector, 4>& legs,
                   const std::array<bool, 4>& present) {
  std::vector<FourVector> have;
  for (int a = 0; a < 4; ++a)
    if (present[a]) have.push_back(legs[a]);
  const FourVector seeds[6] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                               {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}};
  for (int a = 0; a < 4; ++a) {
    if (present[a]) continue;
    FourVector leg{};
    for (const FourVector& s : seeds) {
      // Project off the timelike leg with the metric-aware coefficient.
      FourVector u = s;
      for (const FourVector& f : have) {
        const double ff = minkowski_dot(f, f);
        if (std::abs(ff) < 1e-300) continue;
        u = u - (minkowski_dot(u, f) / ff) * f;
      }
      const double n2 = -minkowski_dot(u, u);
      if (n2 > 1e-12) {
        leg = (1.0 / std::sqrt(n2)) * u;
        break;
      }
    }
    if (euclidean_norm(leg) == 0.0)
      throw std::runtime_error("lsvd: frame completion failure");
    legs[a] = leg;
    have.push_back(leg);
  }
}

LsvdResult build_type_I(const Mat4& m, const Mat4& b, double lam0,
                        FourVector e0, const std::array<double, 4>& lam_q,
                        int power_iters, const Tolerances& tol);
LsvdResult build_type_II(const Mat4& m, const Mat4& b,
                         const std::array<double, 4>& lam_q, FourVector xplus,
                         int power_iters, const Tolerances& tol);
LsvdResult build_type_II0(const Mat4& m, const std::array<double, 4>& lam_q,
                          const Tolerances& tol);

LsvdResult build_type_I(const Mat4& m, const Mat4& b, double lam0,
                        FourVector e0, const std::array<double, 4>& lam_q,
                        int power_iters, const Tolerances& tol) {
  const double n2 = minkowski_dot(e0, e0);
  if (n2 <= 0.0) throw std::runtime_error("lsvd: timelike leg degenerated");
  e0 = (1.0 / std::sqrt(n2)) * e0;
  if (e0[0] < 0.0) e0 = -e0;

  // The closed-form quartic root degrades as ||B|| grows (boosted frames);
  // the Rayleigh quotient on the computed eigenvector does not.
  lam0 = minkowski_dot(e0, b * e0);

  // Spacelike triad orthogonal to e0, seeded from the coordinate axes.
  std::vector<FourVector> triad;
  const FourVector axes[3] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (const FourVector& ax : axes) {
    FourVector u = ax - minkowski_dot(ax, e0) * e0;
    const FourVector f = orthonormalize_spacelike(u, triad);
    if (euclidean_norm(f) > 0.0) triad.push_back(f);
  }
  if (triad.size() != 3) throw std::runtime_error("lsvd: triad construction failed");

  // b = B - lam0 e0 e0 restricted to the triad; the minus sign gives the
  // non-negative spatial eigenvalues directly.
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i) {
    const FourVector bf = b * triad[i];
    for (int j = 0; j < 3; ++j) s[i][j] = -minkowski_dot(triad[j], bf);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double sym = 0.5 * (s[i][j] + s[j][i]);
      s[i][j] = sym;
      s[j][i] = sym;
    }
  std::array<double, 3> w{};
  std::array<std::array<double, 3>, 3> rot{};
  num::jacobi_symmetric<3>(s, w, rot);
  num::sort_eigen_ascending<3>(w, rot);

  LsvdResult res;
  res.state_type = StateType::TypeI;
  res.diag.power_iterations = power_iters;
  res.lambda[0] = lam0;
  std::array<FourVector, 4> left{};
  left[0] = e0;
  for (int k = 0; k < 3; ++k) {
    const int col = 2 - k;  // descending
    res.lambda[k + 1] = w[col];
    FourVector ek;
    for (int i = 0; i < 3; ++i) ek = ek + rot[i][col] * triad[i];
    left[k + 1] = ek;
  }

  const double lam_scale = std::max(lam0, 1e-300);
  for (double& l : res.lambda) {
    if (l < -1e-7 * lam_scale)
      throw std::invalid_argument("lsvd: negative eigenvalue of B (DEC violation)");
    l = std::max(l, 0.0);
  }

  if (frame_det(left) < 0.0) left[3] = -left[3];

  std::array<double, 4> mu{};
  for (int a = 0; a < 4; ++a) mu[a] = std::sqrt(res.lambda[a]);
  const double mu0 = mu[0];

  std::array<FourVector, 4> right{};
  std::array<bool, 4> present{};
  const double mu_floor =
      std::max(tol.rank * mu0, std::sqrt(1e-14 * b.frobenius()));
  for (int a = 0; a < 4; ++a) {
    if (mu[a] > mu_floor) {
      right[a] = (1.0 / mu[a]) * (m * left[a]);
      present[a] = true;
    } else {
      mu[a] = 0.0;
    }
  }
  if (!present[0]) throw std::runtime_error("lsvd: vanishing dominant leg in Type-I");
  complete_legs(right, present);

  if (frame_det(right) < 0.0) {
    int flip = -1;
    for (int a = 3; a >= 1; --a)
      if (!present[a]) {
        flip = a;
        break;
      }
    if (flip < 0) {
      // Absorb the improper orientation into the weakest genuine leg.
      for (int a = 3; a >= 1; --a)
        if (present[a]) {
          flip = a;
          break;
        }
      mu[flip] = -mu[flip];
    }
    right[flip] = -right[flip];
  }

  res.mu = mu;
  res.left = Frame{Frame::Kind::Tetrad, left};
  res.right = Frame{Frame::Kind::Tetrad, right};

  const double det = m.det();
  if (std::abs(det) <= tol.det_boundary * mu0 * mu0 * mu0 * mu0)
    res.sign_class = SignClass::Boundary;
  else
    res.sign_class = det > 0.0 ? SignClass::Positive : SignClass::Negative;

  // Cross-validate pipeline eigenvalues against the closed-form quartic.
  // The quartic roots carry noise ~1e-16 ||B||^2 / gap, so a mismatch only
  // signals trouble when it also clears that floor.
  double mism = 0.0;
  for (int a = 0; a < 4; ++a)
    mism = std::max(mism, std::abs(res.lambda[a] - lam_q[a]));
  res.diag.quartic_mismatch = mism / lam_scale;
  res.diag.ill_conditioned =
      res.diag.quartic_mismatch > tol.quartic_crossval &&
      mism > 1e-7 * b.frobenius();
  return res;
}

LsvdResult build_type_II(const Mat4& m, const Mat4& b,
                         const std::array<double, 4>& lam_q, FourVector xplus,
                         int power_iters, const Tolerances& tol) {
  const double lam0q = lam_q[0];
  const double lam2q = std::max(lam_q[2], 0.0);
  const double lam3q = std::max(lam_q[3], 0.0);
  const double lam_scale = std::max(lam0q, 1e-300);
  const double bfro = b.frobenius();
  // Kernel and clustering widths must absorb the quartic's noise floor,
  // which grows with ||B|| for boosted frames.
  const double kthr = std::max(1e-9 * (bfro + lam0q), 3e-7 * bfro);

  // The Y/Z legs are the spacelike eigenvectors of the lower spectral block.
  // The null eigenvector is g-null, so it shows up as a near-zero eigenvalue
  // of the shifted symmetric form at ANY shift; over-collect and keep the
  // spacelike combinations only.
  auto spacelike_legs = [&](double sigma, int want) {
    const auto basis =
        gsa_kernel(b - sigma * Mat4::identity(), kthr, want + 1);
    const auto shape = analyze_subspace(basis, tol.lightlike);
    return shape.spacelike;
  };
  std::vector<FourVector> yz;
  if ((lam0q - lam2q) <= std::max(tol.degenerate * lam_scale * 10.0, kthr)) {
    // Lower block merged with the dominant eigenvalue.
    yz = spacelike_legs(lam0q, 3);
  } else if (std::abs(lam2q - lam3q) <=
             std::max(tol.degenerate * lam_scale * 10.0, kthr)) {
    yz = spacelike_legs(0.5 * (lam2q + lam3q), 2);
  } else {
    auto y = spacelike_legs(lam2q, 1);
    auto z = spacelike_legs(lam3q, 1);
    if (y.empty() || z.empty())
      throw std::runtime_error("lsvd: Type-II spacelike legs missing");
    yz = {y[0], z[0]};
  }
  if (yz.size() < 2) throw std::runtime_error("lsvd: Type-II spacelike legs missing");

  std::vector<FourVector> sp;
  for (const FourVector& u : yz) {
    const FourVector f = orthonormalize_spacelike(u, sp);
    if (euclidean_norm(f) > 0.0) sp.push_back(f);
    if (sp.size() == 2) break;
  }
  if (sp.size() != 2) throw std::runtime_error("lsvd: Type-II spacelike legs degenerate");
  FourVector Y = sp[0], Z = sp[1];

  // Diagonalize B within span{Y, Z}: a merged extraction can hand back
  // mixtures of legs with distinct eigenvalues.
  {
    const FourVector by = b * Y, bz = b * Z;
    const double syy = -minkowski_dot(Y, by);
    const double szz = -minkowski_dot(Z, bz);
    const double syz = -0.5 * (minkowski_dot(Y, bz) + minkowski_dot(Z, by));
    if (std::abs(syz) > 1e-14 * (std::abs(syy) + std::abs(szz) + 1e-300)) {
      const double theta = 0.5 * std::atan2(2.0 * syz, syy - szz);
      const double c = std::cos(theta), s = std::sin(theta);
      const FourVector y2 = c * Y + s * Z;
      const FourVector z2 = -1.0 * s * Y + c * Z;
      Y = y2;
      Z = z2;
    }
  }

  // The Jordan block lives on the Lorentzian plane orthogonal to {Y,Z}.
  // Identify its null rays directly; the passed-in eigenvector estimate only
  // breaks the tie between them. This keeps a weakly coupled Jordan block
  // accurate where a kernel shifted by the noisy quartic root would not be.
  Mat4 n{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const FourVector yl = flip_spatial(Y), zl = flip_spatial(Z);
      n.a[i][j] = yl[i] * yl[j] + zl[i] * zl[j];
    }
  const auto plane = sym_kernel(n, 1e-9 * (n.frobenius() + 1.0), 2);
  const FourVector p1 = plane[0];
  FourVector p2 = plane[1] - dot_e(plane[1], p1) * p1;
  const double p2n = euclidean_norm(p2);
  if (p2n < 1e-8) throw std::runtime_error("lsvd: null frame completion failed");
  p2 = (1.0 / p2n) * p2;

  // lambda0 is half the trace of B on the plane, exact for a Jordan block.
  const FourVector bp1 = b * p1, bp2 = b * p2;
  const double lam0 = 0.5 * (dot_e(p1, bp1) + dot_e(p2, bp2));
  if (lam0 <= 0.0)
    throw std::invalid_argument("lsvd: non-positive dominant eigenvalue in Jordan branch");
  const double mu0 = std::sqrt(lam0);

  // Null directions of the plane: g(a p1 + b p2) = 0 as a quadratic in b/a.
  const double g11 = minkowski_dot(p1, p1);
  const double g12 = minkowski_dot(p1, p2);
  const double g22 = minkowski_dot(p2, p2);
  const double disc = g12 * g12 - g11 * g22;
  if (disc <= 0.0) throw std::runtime_error("lsvd: Jordan plane is not Lorentzian");
  const double sq = std::sqrt(disc);
  FourVector n1, n2;
  if (std::abs(g11) >= std::abs(g22)) {
    n1 = g11 * p2 + (-g12 + sq) * p1;
    n2 = g11 * p2 + (-g12 - sq) * p1;
  } else {
    n1 = g22 * p1 + (-g12 + sq) * p2;
    n2 = g22 * p1 + (-g12 - sq) * p2;
  }
  for (FourVector* nv : {&n1, &n2}) {
    const double nn = euclidean_norm(*nv);
    if (nn < 1e-12) throw std::runtime_error("lsvd: null ray extraction failed");
    *nv = (1.0 / nn) * *nv;
    if ((*nv)[0] < 0.0) *nv = -1.0 * *nv;
  }
  // The eigenvector ray has the smaller eigen-residual.
  auto eig_residual = [&](const FourVector& v) {
    return euclidean_norm((b * v) - lam0 * v);
  };
  if (eig_residual(n2) < eig_residual(n1)) std::swap(n1, n2);
  xplus = n1;
  xplus = (1.0 / (std::sqrt(2.0) * xplus[0])) * xplus;
  FourVector xminus = n2;
  xminus = (1.0 / minkowski_dot(xplus, xminus)) * xminus;

  // Clean up the spacelike legs against the exact null pair.
  auto polish = [&](FourVector u, const std::vector<FourVector>& prev) {
    u = u - minkowski_dot(u, xminus) * xplus - minkowski_dot(u, xplus) * xminus;
    return orthonormalize_spacelike(u, prev);
  };
  Y = polish(Y, {});
  Z = polish(Z, {Y});
  if (euclidean_norm(Y) == 0.0 || euclidean_norm(Z) == 0.0)
    throw std::runtime_error("lsvd: Type-II frame polish failed");
  double lam2 = std::max(-minkowski_dot(Y, b * Y), 0.0);
  double lam3 = std::max(-minkowski_dot(Z, b * Z), 0.0);
  if (lam2 < lam3) {
    std::swap(lam2, lam3);
    std::swap(Y, Z);
  }

  // B X- = lam0 X- + 2 mu0 x X+, so the Jordan coupling is read off X-.
  const double coupling = minkowski_dot(b * xminus, xminus);
  const double x = coupling / (2.0 * mu0);
  if (x <= tol.jordan * mu0) {
    // Vanishing coupling: B has two distinct null eigenvectors, hence Type-I.
    const FourVector e0 = (1.0 / std::sqrt(2.0)) * (xplus + xminus);
    return build_type_I(m, b, lam0, e0, lam_q, power_iters, tol);
  }

  double mu2 = std::sqrt(lam2);
  double mu3 = std::sqrt(lam3);

  LsvdResult res;
  res.state_type = StateType::TypeII;
  res.diag.power_iterations = power_iters;
  res.lambda = {lam0, lam0, lam2, lam3};
  res.jordan_x = x;

  std::array<FourVector, 4> left{xplus, xminus, Y, Z};
  std::array<FourVector, 4> right{};
  std::array<bool, 4> present{true, true, false, false};
  right[0] = (1.0 / mu0) * (m * xplus);
  right[1] = (1.0 / mu0) * ((m * xminus) - x * right[0]);
  // Eigenvalue noise is ~eps ||B||; its square root dominates tiny legs.
  const double mu_floor = std::max(tol.rank * mu0, std::sqrt(1e-14 * bfro));
  if (mu2 > mu_floor) {
    right[2] = (1.0 / mu2) * (m * Y);
    present[2] = true;
  } else {
    mu2 = 0.0;
  }
  if (mu3 > mu_floor) {
    right[3] = (1.0 / mu3) * (m * Z);
    present[3] = true;
  } else {
    mu3 = 0.0;
  }

  // Right-frame completion of zero legs: spacelike, orthogonal to the plane
  // of the image null pair.
  if (!present[2] || !present[3]) {
    std::array<FourVector, 4> tmp{
        (1.0 / std::sqrt(2.0)) * (right[0] + right[1]),
        (1.0 / std::sqrt(2.0)) * (right[0] - right[1]), right[2], right[3]};
    std::array<bool, 4> tpresent{true, true, present[2], present[3]};
    complete_legs(tmp, tpresent);
    right[2] = tmp[2];
    right[3] = tmp[3];
  }

  // Proper orientation, applied to both sides so the mu stay fixed.
  auto tetradized = [](const std::array<FourVector, 4>& f) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return std::array<FourVector, 4>{inv_sqrt2 * (f[0] + f[1]),
                                     inv_sqrt2 * (f[0] - f[1]), f[2], f[3]};
  };
  if (frame_det(tetradized(left)) < 0.0) {
    left[3] = -left[3];
    if (present[3]) right[3] = -right[3];
  }
  if (frame_det(tetradized(right)) < 0.0) {
    if (!present[3]) {
      right[3] = -right[3];
    } else if (!present[2]) {
      right[2] = -right[2];
    } else {
      right[3] = -right[3];
      mu3 = -mu3;  // non-state Type-II tensors can need a signed leg
    }
  }

  res.mu = {mu0, mu0, mu2, mu3};
  res.left = Frame{Frame::Kind::NullFrame, left};
  res.right = Frame{Frame::Kind::NullFrame, right};

  const double det = m.det();
  if (std::abs(det) <= tol.det_boundary * mu0 * mu0 * mu0 * mu0)
    res.sign_class = SignClass::Boundary;
  else
    res.sign_class = det > 0.0 ? SignClass::Positive : SignClass::Negative;

  double mism = 0.0;
  for (int a = 0; a < 4; ++a)
    mism = std::max(mism, std::abs(res.lambda[a] - lam_q[a]));
  res.diag.quartic_mismatch = mism / lam_scale;
  res.diag.ill_conditioned =
      res.diag.quartic_mismatch > tol.quartic_crossval && mism > 1e-7 * bfro;
  return res;
}

LsvdResult build_type_II0(const Mat4& m, const std::array<double, 4>& lam_q,
                          const Tolerances& tol) {
  const double scale = m.frobenius();
  // lambda0 = 0 under the DEC forces rank one; factor M = sigma a b^T.
  std::array<std::array<double, 4>, 4> mtm{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m.a[k][i] * m.a[k][j];
      mtm[i][j] = s;
    }
  std::array<double, 4> w{};
  std::array<std::array<double, 4>, 4> v{};
  num::jacobi_symmetric<4>(mtm, w, v);
  num::sort_eigen_ascending<4>(w, v);
  const FourVector bvec{v[0][3], v[1][3], v[2][3], v[3][3]};
  FourVector avec = m * bvec;
  const double sigma = euclidean_norm(avec);
  if (sigma <= 1e-15 * std::max(scale, 1.0))
    throw std::invalid_argument("lsvd: zero tensor has no decomposition");
  avec = (1.0 / sigma) * avec;

  Mat4 resid = m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) resid.a[i][j] -= sigma * avec[i] * bvec[j];
  if (resid.frobenius() > 1e-6 * scale)
    throw std::invalid_argument(
        "lsvd: vanishing dominant eigenvalue with rank > 1 (DEC violation)");

  // Output-side vector U and input-side vector V (upper components); the row
  // covector of the factorization is V with its index lowered.
  FourVector U = avec;
  FourVector V = flip_spatial(bvec);
  double strength = sigma;
  if (U[0] < 0.0) {
    U = -U;
    V = -V;
  }
  if (V[0] <= 0.0)
    throw std::invalid_argument("lsvd: rank-1 tensor is not future-causal");

  const CausalClass cu = causal_class(U, tol.lightlike);
  const CausalClass cv = causal_class(V, tol.lightlike);
  const bool u_time = cu == CausalClass::FutureTimelike;
  const bool u_null = cu == CausalClass::FutureLightlike;
  const bool v_time = cv == CausalClass::FutureTimelike;
  const bool v_null = cv == CausalClass::FutureLightlike;
  if (!(u_time || u_null) || !(v_time || v_null))
    throw std::invalid_argument("lsvd: rank-1 factor is not causal (DEC violation)");

  LsvdResult res;
  res.lambda = lam_q;
  for (double& l : res.lambda) l = std::max(l, 0.0);
  res.sign_class = SignClass::Boundary;

  FourVector out_leg, in_leg;
  if (u_time && v_null) {
    // A = x t^mu l_nu with t.t = 1 and l.t = 1.
    res.state_type = StateType::TypeII0a;
    out_leg = (1.0 / std::sqrt(minkowski_dot(U, U))) * U;
    in_leg = (1.0 / minkowski_dot(V, out_leg)) * V;
  } else if (u_null && v_time) {
    res.state_type = StateType::TypeII0b;
    in_leg = (1.0 / std::sqrt(minkowski_dot(V, V))) * V;
    out_leg = (1.0 / minkowski_dot(U, in_leg)) * U;
  } else if (u_null && v_null) {
    // A = x l2^mu l1_nu; l1.l2 = 1 unless the rays are parallel, in which
    // case both factors take time component 1/sqrt(2).
    res.state_type = StateType::TypeII0c;
    FourVector l1 = (1.0 / V[0]) * V;
    FourVector l2 = (1.0 / U[0]) * U;
    const double c = minkowski_dot(l1, l2);
    const double s = (c > tol.lightlike) ? 1.0 / std::sqrt(c) : 1.0 / std::sqrt(2.0);
    in_leg = s * l1;
    out_leg = s * l2;
  } else {
    throw std::runtime_error("lsvd: timelike x timelike factor with zero spectrum");
  }

  // Strength from matching the factorization scales.
  const Mat4 model = Mat4::outer_mixed(out_leg, in_leg);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      num += m.a[i][j] * model.a[i][j];
      den += model.a[i][j] * model.a[i][j];
    }
  res.jordan_x = num / den;
  if (res.jordan_x <= 0.0)
    throw std::invalid_argument("lsvd: non-positive rank-1 strength");
  (void)strength;

  res.left = Frame{Frame::Kind::Rank1, {in_leg}};
  res.right = Frame{Frame::Kind::Rank1, {out_leg}};
  return res;
}

}  // namespace

LorentzEigen lorentz_eigendecompose(const MinkowskiMap& B,
                                    const Tolerances& tol) {
  const Mat4 b = B.as_mixed();
  const double scale2 = std::max(b.frobenius(), 1e-300);
  double imag = 0.0;
  const auto lam_q = num::eigenvalues_via_quartic(b, &imag);
  if (imag > 1e-3 * std::max(std::abs(lam_q[0]), 1e-9 * scale2))
    throw std::invalid_argument(
        "lorentz_eigendecompose: complex eigenvalue pair (DEC violation)");

  LorentzEigen out;
  out.eigenvalues = lam_q;
  const double lam0 = lam_q[0];
  const double qfloor = 1e-7 * scale2;
  if (lam0 <= std::max(3.0 * qfloor, 1e-13 * scale2)) {
    out.dominant_kind = DominantKind::Null;
    for (double& l : out.eigenvalues) l = std::max(l, 0.0);
    return out;
  }

  const bool degenerate =
      (lam_q[0] - lam_q[1]) <= std::max(tol.degenerate * lam0, 3.0 * qfloor);
  FourVector e0{};
  bool have_timelike = false;
  FourVector xplus{};
  bool have_null = false;

  if (!degenerate) {
    const auto pw = power_iteration(b, scale2);
    out.power_iterations = pw.iters;
    if (pw.converged) {
      const double n2 = minkowski_dot(pw.v, pw.v);
      if (std::abs(n2) <= tol.lightlike * pw.v[0] * pw.v[0]) {
        xplus = pw.v;
        have_null = true;
      } else if (n2 > 0.0) {
        e0 = pw.v;
        have_timelike = true;
      } else {
        throw std::invalid_argument(
            "lorentz_eigendecompose: spacelike dominant eigenvector (DEC violation)");
      }
    }
  }
  if (!have_timelike && !have_null) {
    const auto basis = gsa_kernel(b - lam0 * Mat4::identity(),
                                  1e-9 * (b.frobenius() + lam0), 1);
    const auto shape = analyze_subspace(basis, tol.lightlike);
    if (shape.has_timelike) {
      e0 = shape.timelike;
      have_timelike = true;
    } else if (shape.has_null) {
      xplus = shape.null_dir;
      have_null = true;
    } else {
      throw std::invalid_argument(
          "lorentz_eigendecompose: dominant eigenspace has no causal vector");
    }
  }

  // Reuse the full LSVD frame machinery on B itself: B is its own Type-I /
  // Type-II decomposition since it is g-self-adjoint with B = left T left^-1.
  if (have_timelike) {
    const auto r = build_type_I(b, b, lam0, e0, lam_q, out.power_iterations, tol);
    out.dominant_kind = DominantKind::Timelike;
    out.eigenvalues = r.lambda;
    out.vectors = r.left.v;
  } else {
    const auto r = build_type_II(b, compute_B(MinkowskiMap::mixed(b)).m, lam_q,
                                 xplus, out.power_iterations, tol);
    // The null frame of b itself: recompute directly for the B operator.
    out.dominant_kind = r.state_type == StateType::TypeII
                            ? DominantKind::RepeatedLightlike
                            : DominantKind::Timelike;
    out.eigenvalues = r.lambda;
    out.vectors = r.left.v;
  }
  return out;
}

LsvdResult lsvd(const MinkowskiMap& A, const Tolerances& tol) {
  const Mat4 m = A.as_mixed();
  const double scale = m.frobenius();
  if (scale <= 0.0) throw std::invalid_argument("lsvd: zero tensor");

  const Mat4 b = compute_B(A).m;
  double imag = 0.0;
  const auto lam_q = num::eigenvalues_via_quartic(b, &imag);
  // Repeated-root extraction leaves an eps^(1/2)-level imaginary defect even
  // for genuinely real spectra, so only a gross defect signals a violation;
  // milder ones are caught by the spacelike/negative eigenvalue checks below.
  const double lam_scale = std::max(std::abs(lam_q[0]), 1e-9 * scale * scale);
  if (imag > 1e-3 * lam_scale)
    throw std::invalid_argument("lsvd: complex eigenvalues of B (DEC violation)");

  LsvdResult res;
  const double bfro = b.frobenius();
  // Quartic roots carry noise ~1e-7 ||B|| once frames are boosted; routing
  // thresholds must sit above that floor.
  const double qfloor = 1e-7 * bfro;
  if (lam_q[0] <= std::max(3.0 * qfloor, 1e-13 * scale * scale)) {
    res = build_type_II0(m, lam_q, tol);
  } else {
    const double lam0 = lam_q[0];
    const bool degenerate =
        (lam_q[0] - lam_q[1]) <= std::max(tol.degenerate * lam0, 3.0 * qfloor);
    bool built = false;
    int iters = 0;
    if (!degenerate) {
      const auto pw = power_iteration(b, scale * scale);
      iters = pw.iters;
      if (pw.converged) {
        const double n2 = minkowski_dot(pw.v, pw.v);
        if (std::abs(n2) <= tol.lightlike * pw.v[0] * pw.v[0]) {
          res = build_type_II(m, b, lam_q, pw.v, iters, tol);
        } else if (n2 > 0.0) {
          res = build_type_I(m, b, lam0, pw.v, lam_q, iters, tol);
        } else {
          throw std::invalid_argument(
              "lsvd: spacelike dominant eigenvector (DEC violation)");
        }
        built = true;
      }
    }
    if (!built) {
      const auto basis = gsa_kernel(b - lam0 * Mat4::identity(),
                                    std::max(1e-9 * (bfro + lam0), 3.0 * qfloor), 1);
      const auto shape = analyze_subspace(basis, tol.lightlike);
      // A weakly coupled Jordan block contaminates the kernel vector towards
      // X- and makes it look timelike, so the reconstruction residual gets
      // the final say between the two strata.
      auto recon_rel = [&](const LsvdResult& r) {
        return (reconstruct_A(r).as_mixed() - m).frobenius() / scale;
      };
      double best = std::numeric_limits<double>::infinity();
      bool have = false;
      if (shape.has_timelike) {
        try {
          LsvdResult cand =
              build_type_I(m, b, lam0, shape.timelike, lam_q, iters, tol);
          best = recon_rel(cand);
          res = cand;
          have = true;
        } catch (const std::runtime_error&) {
        }
      }
      if (!have || best > 1e-10) {
        const FourVector seed =
            shape.has_null ? shape.null_dir : FourVector{1, 0, 0, 0};
        try {
          LsvdResult cand = build_type_II(m, b, lam_q, seed, iters, tol);
          const double rr = recon_rel(cand);
          if (!have || rr < best) {
            best = rr;
            res = cand;
            have = true;
          }
        } catch (const std::exception&) {
        }
      }
      if (!have)
        throw std::invalid_argument(
            "lsvd: dominant eigenspace carries no causal vector (DEC violation)");
    }
  }

  const Mat4 recon = reconstruct_A(res).as_mixed();
  res.diag.recon_residual = (recon - m).frobenius() / scale;
  if (res.diag.recon_residual > 1e-6)
    throw std::runtime_error("lsvd: reconstruction residual too large");
  return res;
}

MinkowskiMap reconstruct_A(const LsvdResult& r) {
  Mat4 m{};
  switch (r.state_type) {
    case StateType::TypeI: {
      const auto& e = r.left.v;
      const auto& E = r.right.v;
      m = r.mu[0] * Mat4::outer_mixed(E[0], e[0]) -
          r.mu[1] * Mat4::outer_mixed(E[1], e[1]) -
          r.mu[2] * Mat4::outer_mixed(E[2], e[2]) -
          r.mu[3] * Mat4::outer_mixed(E[3], e[3]);
      break;
    }
    case StateType::TypeII: {
      const auto& e = r.left.v;
      const auto& E = r.right.v;
      m = r.mu[0] * (Mat4::outer_mixed(E[0], e[1]) + Mat4::outer_mixed(E[1], e[0])) +
          r.jordan_x * Mat4::outer_mixed(E[0], e[0]) -
          r.mu[2] * Mat4::outer_mixed(E[2], e[2]) -
          r.mu[3] * Mat4::outer_mixed(E[3], e[3]);
      break;
    }
    case StateType::TypeII0a:
    case StateType::TypeII0b:
    case StateType::TypeII0c:
      m = r.jordan_x * Mat4::outer_mixed(r.right.v[0], r.left.v[0]);
      break;
  }
  return MinkowskiMap::mixed(m);
}

LsvdResult canonicalize_signs(const LsvdResult& r, bool normalize_scale,
                              double* scale_out, const Tolerances& tol) {
  LsvdResult out = r;
  if (scale_out) *scale_out = 1.0;

  if (r.state_type == StateType::TypeI) {
    const double mu0 = out.mu[0];
    const double target =
        out.sign_class == SignClass::Negative ? -1.0 : 1.0;
    std::array<bool, 4> genuine{};
    for (int a = 1; a < 4; ++a)
      genuine[a] = std::abs(out.mu[a]) > tol.rank * std::max(mu0, 1e-300);

    int flips = 0;
    for (int a = 1; a < 4; ++a) {
      if (!genuine[a]) continue;
      if (out.mu[a] * target < 0.0) {
        out.mu[a] = -out.mu[a];
        out.right.v[a] = -out.right.v[a];
        ++flips;
      }
    }
    if (flips % 2 == 1) {
      // Pair the odd flip with a zero leg to stay inside the proper group.
      int zero = -1;
      for (int a = 3; a >= 1; --a)
        if (!genuine[a]) {
          zero = a;
          break;
        }
      if (zero >= 0) {
        out.right.v[zero] = -out.right.v[zero];
      } else {
        // Only reachable when the det-based class sits on its threshold;
        // surface it instead of silently leaving an improper frame.
        out.diag.ill_conditioned = true;
        int a = 3;
        out.mu[a] = -out.mu[a];
        out.right.v[a] = -out.right.v[a];
      }
    }

    // Order by magnitude, keeping the frames aligned. A swap is a rotation
    // by pi combined with a leg sign flip on both sides, so properness and
    // the mu signs survive.
    for (int i = 1; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (std::abs(out.mu[j]) > std::abs(out.mu[i])) {
          std::swap(out.mu[i], out.mu[j]);
          std::swap(out.lambda[i], out.lambda[j]);
          std::swap(out.left.v[i], out.left.v[j]);
          std::swap(out.right.v[i], out.right.v[j]);
          out.left.v[j] = -out.left.v[j];
          out.right.v[j] = -out.right.v[j];
        }
  } else if (r.state_type == StateType::TypeII) {
    if (std::abs(out.mu[3]) > std::abs(out.mu[2])) {
      std::swap(out.mu[2], out.mu[3]);
      std::swap(out.lambda[2], out.lambda[3]);
      std::swap(out.left.v[2], out.left.v[3]);
      std::swap(out.right.v[2], out.right.v[3]);
      out.left.v[3] = -out.left.v[3];
      out.right.v[3] = -out.right.v[3];
    }
  }

  if (normalize_scale && out.mu[0] > 0.0) {
    const double s = out.mu[0];
    if (scale_out) *scale_out = s;
    for (double& v : out.mu) v /= s;
    for (double& l : out.lambda) l /= (s * s);
    out.jordan_x /= s;
  }
  return out;
}

}  // namespace plt
