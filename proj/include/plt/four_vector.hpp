#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

namespace plt {

// Metric signature (+,-,-,-); index 0 is time.
inline constexpr std::array<double, 4> metric_diag{1.0, -1.0, -1.0, -1.0};

// Default tolerances used across the library. Each one is relative to the
// natural scale of the quantity it guards; see the field comments.
struct Tolerances {
  double causal = 1e-9;           // causal classification, vs max(1, (v0)^2)
  double psd = 1e-9;              // density-matrix positivity, vs trace
  double lightlike = 1e-8;        // |e.e| <= lightlike * (e0)^2
  double degenerate = 1e-8;       // |l0 - l1| <= degenerate * l0
  double jordan = 1e-8;           // x > jordan * mu0 keeps Type-II
  double rank = 1e-10;            // |mu_a| > rank * mu0 keeps an LSVD leg
  double det_boundary = 1e-9;     // |det A| <= det_boundary * mu0^4 -> Boundary
  double boundary_band = 1e-8;    // verdict margin band, vs mu0
  double oracle_band = 1e-8;      // PPT min-eigenvalue band, vs trace
  double quartic_crossval = 1e-7; // eigenvalue cross-validation mismatch
};

enum class CausalClass {
  FutureTimelike,
  FutureLightlike,
  PastTimelike,
  PastLightlike,
  Spacelike,
  Zero,
};

std::string_view to_string(CausalClass c);

// Real 4-vector in contravariant components.
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  FourVector() = default;
  FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
};

inline FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline FourVector operator-(const FourVector& a, const FourVector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline FourVector operator*(double s, const FourVector& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}
inline FourVector operator-(const FourVector& v) {
  return {-v[0], -v[1], -v[2], -v[3]};
}

// g_{mu nu} u^mu v^nu = u0 v0 - u1 v1 - u2 v2 - u3 v3.
inline double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

inline double euclidean_norm(const FourVector& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

// Index lowering/raising both flip the sign of the spatial components.
inline FourVector flip_spatial(const FourVector& v) {
  return {v[0], -v[1], -v[2], -v[3]};
}

CausalClass causal_class(const FourVector& v, double tol = Tolerances{}.causal);

inline bool is_future_causal(const FourVector& v,
                             double tol = Tolerances{}.causal) {
  const CausalClass c = causal_class(v, tol);
  return c == CausalClass::FutureTimelike || c == CausalClass::FutureLightlike;
}

}  // namespace plt
