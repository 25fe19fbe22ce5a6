#include "plt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plt::num {

template <std::size_t N>
void jacobi_symmetric(std::array<std::array<double, N>, N> a,
                      std::array<double, N>& w,
                      std::array<std::array<double, N>, N>& v,
                      int max_sweeps) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

  double fro = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) fro += a[i][j] * a[i][j];
  fro = std::sqrt(fro);
  const double stop = 1e-14 * std::max(fro, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) <= stop / (N * N)) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double h = t * apq;
        a[p][p] -= h;
        a[q][q] += h;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          if (k != p && k != q) {
            const double akp = a[k][p];
            const double akq = a[k][q];
            a[k][p] = akp - s * (akq + tau * akp);
            a[k][q] = akq + s * (akp - tau * akq);
            a[p][k] = a[k][p];
            a[q][k] = a[k][q];
          }
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = vkp - s * (vkq + tau * vkp);
          v[k][q] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  for (std::size_t i = 0; i < N; ++i) w[i] = a[i][i];
}

template <std::size_t N>
void sort_eigen_ascending(std::array<double, N>& w,
                          std::array<std::array<double, N>, N>& v) {
  std::array<std::size_t, N> idx{};
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  std::array<double, N> ws{};
  std::array<std::array<double, N>, N> vs{};
  for (std::size_t k = 0; k < N; ++k) {
    ws[k] = w[idx[k]];
    for (std::size_t i = 0; i < N; ++i) vs[i][k] = v[i][idx[k]];
  }
  w = ws;
  v = vs;
}

template void jacobi_symmetric<3>(std::array<std::array<double, 3>, 3>,
                                  std::array<double, 3>&,
                                  std::array<std::array<double, 3>, 3>&, int);
template void jacobi_symmetric<4>(std::array<std::array<double, 4>, 4>,
                                  std::array<double, 4>&,
                                  std::array<std::array<double, 4>, 4>&, int);
template void jacobi_symmetric<8>(std::array<std::array<double, 8>, 8>,
                                  std::array<double, 8>&,
                                  std::array<std::array<double, 8>, 8>&, int);
template void sort_eigen_ascending<3>(std::array<double, 3>&,
                                      std::array<std::array<double, 3>, 3>&);
template void sort_eigen_ascending<4>(std::array<double, 4>&,
                                      std::array<std::array<double, 4>, 4>&);
template void sort_eigen_ascending<8>(std::array<double, 8>&,
                                      std::array<std::array<double, 8>, 8>&);

int solve_cubic_real(double b2, double b1, double b0,
                     std::array<double, 3>& r) {
  // Depress: x = y - b2/3.
  const double s = b2 / 3.0;
  const double p = b1 - b2 * b2 / 3.0;
  const double q = b0 - b1 * b2 / 3.0 + 2.0 * b2 * b2 * b2 / 27.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  // Near-zero discriminant means a repeated root; the trigonometric branch
  // handles that stably, so reserve Cardano for clearly positive values.
  const double disc_scale = q * q / 4.0 + std::abs(p * p * p) / 27.0;
  if (disc > 1e-12 * disc_scale) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    r[0] = u + v - s;
    return 1;
  }
  // Three real roots: trigonometric form.
  const double m = std::sqrt(std::max(-p / 3.0, 0.0));
  if (m == 0.0) {
    r[0] = r[1] = r[2] = -s;
    return 3;
  }
  double cosphi = -q / (2.0 * m * m * m);
  cosphi = std::clamp(cosphi, -1.0, 1.0);
  const double phi = std::acos(cosphi) / 3.0;
  for (int k = 0; k < 3; ++k)
    r[k] = 2.0 * m * std::cos(phi - 2.0 * M_PI * k / 3.0) - s;
  return 3;
}

namespace {

double poly4(double x, double a3, double a2, double a1, double a0) {
  return (((x + a3) * x + a2) * x + a1) * x + a0;
}
double poly4d(double x, double a3, double a2, double a1) {
  return ((4.0 * x + 3.0 * a3) * x + 2.0 * a2) * x + a1;
}
double poly4dd(double x, double a3, double a2) {
  return (12.0 * x + 6.0 * a3) * x + 2.0 * a2;
}

// Roots of the derivative p^(k-1) pin an exact k-fold root to machine
// precision, which plain Newton cannot do from p values alone.
double derivative_root_near(int k, double x0, double a3, double a2, double a1) {
  if (k >= 4) return -a3 / 4.0;
  if (k == 3) {
    // p''/2 = 6 x^2 + 3 a3 x + a2, solved in the cancellation-free form.
    const double disc = 9.0 * a3 * a3 - 24.0 * a2;
    if (disc < 0.0) return x0;
    const double s = std::sqrt(disc);
    const double qq = -0.5 * (3.0 * a3 + (a3 >= 0.0 ? s : -s));
    const double r1 = qq / 6.0;
    const double r2 = std::abs(qq) > 1e-300 ? a2 / qq : x0;
    return std::abs(r1 - x0) < std::abs(r2 - x0) ? r1 : r2;
  }
  // k == 2: p' = 4 x^3 + 3 a3 x^2 + 2 a2 x + a1
  std::array<double, 3> r{};
  const int n = solve_cubic_real(3.0 * a3 / 4.0, a2 / 2.0, a1 / 4.0, r);
  double best = r[0];
  for (int i = 1; i < n; ++i)
    if (std::abs(r[i] - x0) < std::abs(best - x0)) best = r[i];
  // A couple of Newton steps on p' sharpen the cubic solve.
  for (int it = 0; it < 3; ++it) {
    const double f = ((4.0 * best + 3.0 * a3) * best + 2.0 * a2) * best + a1;
    const double fp = (12.0 * best + 6.0 * a3) * best + 2.0 * a2;
    if (std::abs(fp) < 1e-300) break;
    best -= f / fp;
  }
  return best;
}

// Noise floor of evaluating the quartic at x.
double eval_noise(double x, double a3, double a2, double a1, double a0) {
  const double ax = std::abs(x);
  return 8e-16 * ((((ax + std::abs(a3)) * ax + std::abs(a2)) * ax +
                   std::abs(a1)) * ax + std::abs(a0)) + 1e-300;
}

// Newton with a multiplicity estimate, so clusters like (x - r)^4 converge to
// full precision instead of stalling at ~eps^(1/4). Steps are safeguarded:
// near a repeated root f and f' are both noise and an unguarded quotient can
// throw an already-exact root away.
double polish_root(double x, double a3, double a2, double a1, double a0) {
  double fx = poly4(x, a3, a2, a1, a0);
  for (int it = 0; it < 12; ++it) {
    if (std::abs(fx) <= eval_noise(x, a3, a2, a1, a0)) break;
    const double fp = poly4d(x, a3, a2, a1);
    const double fpp = poly4dd(x, a3, a2);
    if (std::abs(fp) < 1e-300) break;
    const double denom = fp * fp - fx * fpp;
    double mult = 1.0;
    if (denom > 1e-300) {
      mult = fp * fp / denom;
      if (!std::isfinite(mult) || mult < 1.0) mult = 1.0;
      if (mult > 4.0) mult = 4.0;
    }
    double step = mult * fx / fp;
    const double cap = 0.25 * (1.0 + std::abs(x));
    if (!std::isfinite(step)) break;
    if (std::abs(step) > cap) step = step > 0 ? cap : -cap;
    double xn = x - step;
    double fn = poly4(xn, a3, a2, a1, a0);
    if (std::abs(fn) > std::abs(fx) && mult > 1.0) {
      // Fall back to the plain Newton step before giving up.
      xn = x - fx / fp;
      fn = poly4(xn, a3, a2, a1, a0);
    }
    if (std::abs(fn) > std::abs(fx)) break;
    if (xn == x) break;
    x = xn;
    fx = fn;
  }
  return x;
}

}  // namespace

std::array<double, 4> solve_quartic_real(double a3, double a2, double a1,
                                         double a0, double* imag_defect) {
  double imag = 0.0;
  // Scale so coefficients are O(1); keeps the resolvent well conditioned.
  double scale = std::max({std::abs(a3), std::sqrt(std::abs(a2)),
                           std::cbrt(std::abs(a1)),
                           std::sqrt(std::sqrt(std::abs(a0)))});
  if (scale < 1e-150) scale = 1.0;

  // Deflate exact zero roots: Ferrari can lose the remaining simple root
  // when the depressed quartic has a triple root.
  if (std::abs(a0) <= 1e-280 * std::max(1.0, scale * scale * scale * scale)) {
    std::array<double, 4> roots{};
    std::array<double, 3> r{};
    if (std::abs(a1) <= 1e-280 * std::max(1.0, scale * scale * scale)) {
      const double disc = a3 * a3 / 4.0 - a2;
      const double s = disc >= 0.0 ? std::sqrt(disc) : 0.0;
      if (disc < 0.0) imag = std::sqrt(-disc);
      roots = {-a3 / 2.0 + s, -a3 / 2.0 - s, 0.0, 0.0};
    } else {
      const int n = solve_cubic_real(a3, a2, a1, r);
      roots = {r[0], n > 1 ? r[1] : r[0], n > 2 ? r[2] : r[0], 0.0};
      if (n == 1) roots[1] = roots[2] = 0.0;  // complex pair dropped
      if (n == 1) imag = std::max(imag, 1.0);
    }
    for (double& x : roots) x = polish_root(x, a3, a2, a1, a0);
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    if (imag_defect) *imag_defect = imag * scale;
    return roots;
  }

  const double b3 = a3 / scale;
  const double b2 = a2 / (scale * scale);
  const double b1 = a1 / (scale * scale * scale);
  const double b0 = a0 / (scale * scale * scale * scale);

  // Depress: x = y - b3/4.
  const double sh = b3 / 4.0;
  const double p = b2 - 3.0 * b3 * b3 / 8.0;
  const double q = b1 - b2 * b3 / 2.0 + b3 * b3 * b3 / 8.0;
  const double r = b0 - b1 * b3 / 4.0 + b2 * b3 * b3 / 16.0 -
                   3.0 * b3 * b3 * b3 * b3 / 256.0;

  // Score a candidate multiset by rebuilding the depressed coefficients from
  // it (Vieta); pointwise residuals cannot tell a lost root pair apart.
  const double yscale =
      std::max({1e-150, std::sqrt(std::abs(p)), std::cbrt(std::abs(q)),
                std::sqrt(std::sqrt(std::abs(r)))});
  auto score = [&](const std::array<double, 4>& y) {
    const double s1 = y[0] + y[1] + y[2] + y[3];
    const double s2 = y[0] * y[1] + y[0] * y[2] + y[0] * y[3] + y[1] * y[2] +
                      y[1] * y[3] + y[2] * y[3];
    const double s3 = y[0] * y[1] * y[2] + y[0] * y[1] * y[3] +
                      y[0] * y[2] * y[3] + y[1] * y[2] * y[3];
    const double s4 = y[0] * y[1] * y[2] * y[3];
    return std::abs(s1) / yscale + std::abs(s2 - p) / (yscale * yscale) +
           std::abs(s3 + q) / (yscale * yscale * yscale) +
           std::abs(s4 - r) / (yscale * yscale * yscale * yscale);
  };

  std::array<double, 4> best{};
  double best_score = std::numeric_limits<double>::infinity();
  double best_imag = 0.0;

  auto consider = [&](const std::array<double, 4>& y, double im) {
    const double s = score(y);
    if (s < best_score) {
      best_score = s;
      best = y;
      best_imag = im;
    }
  };

  {
    // Biquadratic candidate: exact when q = 0 and still a good seed nearby.
    double im = 0.0;
    auto sq = [&im](double v) {
      if (v < 0.0) {
        im = std::max(im, std::sqrt(-v));
        return 0.0;
      }
      return std::sqrt(v);
    };
    const double disc = sq(p * p / 4.0 - r);
    const double s1 = sq(-p / 2.0 + disc);
    const double s2 = sq(-p / 2.0 - disc);
    consider({s1, -s1, s2, -s2}, im);
  }

  // Ferrari candidates from every real resolvent root: when roots repeat the
  // "largest root" rule can pick a factorization that loses a pair, so score
  // them all by backward error instead.
  std::array<double, 3> cr{};
  const int n = solve_cubic_real(p, p * p / 4.0 - r, -q * q / 8.0, cr);
  for (int k = 0; k < n; ++k) {
    double im = 0.0;
    auto sq = [&im](double v) {
      if (v < 0.0) {
        im = std::max(im, std::sqrt(-v));
        return 0.0;
      }
      return std::sqrt(v);
    };
    double m = cr[k];
    if (m < 0.0) {
      im = std::max(im, std::sqrt(-m));
      m = 0.0;
    }
    const double t = sq(2.0 * m);
    // y^4 + p y^2 + q y + r =
    //   (y^2 - t y + (p/2 + m + q/(2t))) (y^2 + t y + (p/2 + m - q/(2t)))
    double c1, c2;
    if (t > 1e-150) {
      c1 = p / 2.0 + m + q / (2.0 * t);
      c2 = p / 2.0 + m - q / (2.0 * t);
    } else {
      c1 = p / 2.0;
      c2 = p / 2.0;
    }
    const double d1 = sq(t * t / 4.0 - c1);
    const double d2 = sq(t * t / 4.0 - c2);
    consider({t / 2.0 + d1, t / 2.0 - d1, -t / 2.0 + d2, -t / 2.0 - d2}, im);
  }
  imag = std::max(imag, best_imag);

  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    roots[k] = polish_root((best[k] - sh) * scale, a3, a2, a1, a0);
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());

  // Repeated roots stall at ~eps^(1/mult); collapse clusters onto the
  // matching derivative root, which is simple there.
  const double span = std::max({scale, std::abs(roots[0]), std::abs(roots[3])});
  int i = 0;
  while (i < 4) {
    int j = i;
    while (j + 1 < 4 && roots[j] - roots[j + 1] <= 1e-4 * span) ++j;
    const int k = j - i + 1;
    if (k >= 2) {
      double mean = 0.0;
      for (int t2 = i; t2 <= j; ++t2) mean += roots[t2];
      mean /= k;
      const double c = derivative_root_near(k, mean, a3, a2, a1);
      // A genuine k-fold root nulls the quartic at the derivative root up to
      // the splitting induced by coefficient rounding (~eps^(1/k) wide, so
      // |p| there is ~eps^2-level); a cluster of merely close roots leaves a
      // much larger residual and is kept as-is.
      if (std::isfinite(c) && std::abs(c - mean) <= 1e-3 * span &&
          std::abs(poly4(c, a3, a2, a1, a0)) <=
              1e4 * eval_noise(c, a3, a2, a1, a0)) {
        for (int t2 = i; t2 <= j; ++t2) roots[t2] = c;
      }
    }
    i = j + 1;
  }

  if (imag_defect) *imag_defect = imag * scale;
  return roots;
}

std::array<double, 4> char_poly(const Mat4& m) {
  // Faddeev-LeVerrier.
  Mat4 mk = m;
  double c3 = -mk.trace();
  mk = m * (mk + c3 * Mat4::identity());
  double c2 = -mk.trace() / 2.0;
  mk = m * (mk + c2 * Mat4::identity());
  double c1 = -mk.trace() / 3.0;
  mk = m * (mk + c1 * Mat4::identity());
  double c0 = -mk.trace() / 4.0;
  return {c0, c1, c2, c3};
}

std::array<double, 4> eigenvalues_via_quartic(const Mat4& m,
                                              double* imag_defect) {
  const auto c = char_poly(m);
  return solve_quartic_real(c[3], c[2], c[1], c[0], imag_defect);
}

bool solve4(const Mat4& m, const FourVector& rhs, FourVector& x) {
  double a[4][5];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a[i][j] = m.a[i][j];
    a[i][4] = rhs[i];
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return false;
    if (piv != col)
      for (int j = col; j < 5; ++j) std::swap(a[piv][j], a[col][j]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 5; ++j) a[r][j] -= f * a[col][j];
    }
  }
  for (int i = 3; i >= 0; --i) {
    double s = a[i][4];
    for (int j = i + 1; j < 4; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  for (int i = 0; i < 4; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace plt::num
