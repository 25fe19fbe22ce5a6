#include "plt/lorentz.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace plt {

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
  return m;
}

Mat4 Mat4::diag(double d0, double d1, double d2, double d3) {
  Mat4 m;
  m.a[0][0] = d0;
  m.a[1][1] = d1;
  m.a[2][2] = d2;
  m.a[3][3] = d3;
  return m;
}

Mat4 Mat4::outer_mixed(const FourVector& u, const FourVector& v) {
  Mat4 m;
  const FourVector vl = flip_spatial(v);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.a[i][j] = u[i] * vl[j];
  return m;
}

Mat4 Mat4::transpose() const {
  Mat4 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.a[i][j] = a[j][i];
  return t;
}

double Mat4::trace() const { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

double Mat4::det() const {
  // Cofactor expansion over the first row via 3x3 minors.
  auto minor3 = [this](int r, int c) {
    double m[3][3];
    int mi = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == r) continue;
      int mj = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == c) continue;
        m[mi][mj++] = a[i][j];
      }
      ++mi;
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  double d = 0.0;
  double sign = 1.0;
  for (int j = 0; j < 4; ++j) {
    d += sign * a[0][j] * minor3(0, j);
    sign = -sign;
  }
  return d;
}

double Mat4::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

double Mat4::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j]));
  return m;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = a.a[i][k];
      for (int j = 0; j < 4; ++j) c.a[i][j] += aik * b.a[k][j];
    }
  return c;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.a[i][j] = a.a[i][j] + b.a[i][j];
  return c;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.a[i][j] = a.a[i][j] - b.a[i][j];
  return c;
}

Mat4 operator*(double s, const Mat4& m) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c.a[i][j] = s * m.a[i][j];
  return c;
}

FourVector operator*(const Mat4& m, const FourVector& v) {
  FourVector r;
  for (int i = 0; i < 4; ++i) {
    r[i] = m.a[i][0] * v[0] + m.a[i][1] * v[1] + m.a[i][2] * v[2] +
           m.a[i][3] * v[3];
  }
  return r;
}

Mat4 minkowski_adjoint(const Mat4& m) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.a[i][j] = metric_diag[i] * m.a[j][i] * metric_diag[j];
  return r;
}

Mat4 metric_flip_rows(const Mat4& m) {
  Mat4 r = m;
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.a[i][j] = -r.a[i][j];
  return r;
}

double LorentzTransform::orthogonality_defect(const Mat4& m) {
  const Mat4 g = Mat4::diag(1, -1, -1, -1);
  return (m.transpose() * g * m - g).frobenius();
}

LorentzTransform::LorentzTransform(const Mat4& m, double tol) : m_(m) {
  if (orthogonality_defect(m) > tol * 16.0 * std::max(1.0, m.frobenius()))
    throw std::invalid_argument("LorentzTransform: S^T g S != g");
  if (std::abs(m.det() - 1.0) > 1e-6)
    throw std::invalid_argument("LorentzTransform: det S != +1");
  if (m.a[0][0] < 1.0 - 1e-9)
    throw std::invalid_argument("LorentzTransform: not orthochronous");
}

LorentzTransform LorentzTransform::identity() {
  return LorentzTransform(Mat4::identity(), unchecked_tag{});
}

LorentzTransform LorentzTransform::inverse() const {
  return LorentzTransform(minkowski_adjoint(m_), unchecked_tag{});
}

namespace {

void require_unit(const std::array<double, 3>& n) {
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(len - 1.0) > 1e-9)
    throw std::invalid_argument("direction must be a unit 3-vector");
}

}  // namespace

LorentzTransform boost(const std::array<double, 3>& n, double rapidity) {
  require_unit(n);
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  Mat4 m = Mat4::identity();
  m(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = sh * n[i];
    m(i + 1, 0) = sh * n[i];
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = (i == j) + (ch - 1.0) * n[i] * n[j];
  }
  return LorentzTransform(m);
}

LorentzTransform rotation(const std::array<double, 3>& axis, double angle) {
  require_unit(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat4 m = Mat4::identity();
  // Rodrigues formula in the spatial block.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = c * (i == j) + (1.0 - c) * axis[i] * axis[j];
  m(1, 2) += -s * axis[2];
  m(1, 3) += s * axis[1];
  m(2, 1) += s * axis[2];
  m(2, 3) += -s * axis[0];
  m(3, 1) += -s * axis[1];
  m(3, 2) += s * axis[0];
  return LorentzTransform(m);
}

LorentzTransform random_lorentz(std::uint64_t seed, double max_rapidity) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Uniform rotation from a random unit quaternion.
  double q[4];
  double qn = 0.0;
  do {
    qn = 0.0;
    for (double& qi : q) {
      qi = gauss(rng);
      qn += qi * qi;
    }
  } while (qn < 1e-30);
  qn = std::sqrt(qn);
  for (double& qi : q) qi /= qn;
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Mat4 r = Mat4::identity();
  r(1, 1) = 1 - 2 * (y * y + z * z);
  r(1, 2) = 2 * (x * y - w * z);
  r(1, 3) = 2 * (x * z + w * y);
  r(2, 1) = 2 * (x * y + w * z);
  r(2, 2) = 1 - 2 * (x * x + z * z);
  r(2, 3) = 2 * (y * z - w * x);
  r(3, 1) = 2 * (x * z - w * y);
  r(3, 2) = 2 * (y * z + w * x);
  r(3, 3) = 1 - 2 * (x * x + y * y);

  std::array<double, 3> dir{};
  double dn = 0.0;
  do {
    dn = 0.0;
    for (double& di : dir) {
      di = gauss(rng);
      dn += di * di;
    }
  } while (dn < 1e-30);
  dn = std::sqrt(dn);
  for (double& di : dir) di /= dn;
  const double eta = max_rapidity * unif(rng);

  if (eta == 0.0) return LorentzTransform(r);
  return LorentzTransform(boost(dir, eta).matrix() * r);
}

Tetrad::Tetrad(const FourVector& e0, const FourVector& e1, const FourVector& e2,
               const FourVector& e3, double tol)
    : e_{e0, e1, e2, e3} {
  if (gram_defect() > tol)
    throw std::invalid_argument("Tetrad: legs are not Minkowski-orthonormal");
  if (e_[0][0] <= 0.0)
    throw std::invalid_argument("Tetrad: e0 must be future-pointing");
  if (as_matrix().det() < 0.0) std::swap(e_[2], e_[3]);
}

Tetrad Tetrad::standard() {
  return Tetrad({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1});
}

Mat4 Tetrad::as_matrix() const {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) m(mu, a) = e_[a][mu];
  return m;
}

double Tetrad::gram_defect() const {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double want = (a == b) ? metric_diag[a] : 0.0;
      worst = std::max(worst, std::abs(minkowski_dot(e_[a], e_[b]) - want));
    }
  return worst;
}

}  // namespace plt
