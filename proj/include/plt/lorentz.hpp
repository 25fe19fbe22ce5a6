#pragma once

#include <array>
#include <cstdint>

#include "plt/four_vector.hpp"

namespace plt {

// Dense real 4x4 matrix. Used both for Lorentz transforms (mixed index
// S^mu_nu) and for the spacetime tensor of a two-qubit state.
struct Mat4 {
  std::array<std::array<double, 4>, 4> a{};

  double& operator()(std::size_t i, std::size_t j) { return a[i][j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i][j]; }

  static Mat4 identity();
  static Mat4 zero() { return Mat4{}; }
  static Mat4 diag(double d0, double d1, double d2, double d3);
  // u^mu v_nu: outer product of u with the lowered index version of v.
  static Mat4 outer_mixed(const FourVector& u, const FourVector& v);

  Mat4 transpose() const;
  double trace() const;
  double det() const;
  double frobenius() const;
  double max_abs() const;
};

Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(double s, const Mat4& m);
FourVector operator*(const Mat4& m, const FourVector& v);

// G M^T G, the adjoint with respect to the Minkowski metric. For a Lorentz
// transform this is the inverse.
Mat4 minkowski_adjoint(const Mat4& m);

// Row-wise sign flip of the spatial rows, i.e. multiplication by G. Converts
// a both-lower tensor matrix to mixed index position and back.
Mat4 metric_flip_rows(const Mat4& m);

// Proper orthochronous Lorentz transform, stored with mixed indices S^mu_nu.
class LorentzTransform {
 public:
  // Throws std::invalid_argument unless S^T g S = g, det S = +1 and
  // S(0,0) >= 1 within `tol`.
  explicit LorentzTransform(const Mat4& m, double tol = 1e-9);

  static LorentzTransform identity();

  const Mat4& matrix() const { return m_; }
  LorentzTransform inverse() const;

  FourVector operator*(const FourVector& v) const { return m_ * v; }

  // || S^T g S - g ||_F, the defect used by the validity check.
  static double orthogonality_defect(const Mat4& m);

 private:
  struct unchecked_tag {};
  LorentzTransform(const Mat4& m, unchecked_tag) : m_(m) {}
  Mat4 m_;
};

// Boost with the given rapidity along a unit 3-direction.
LorentzTransform boost(const std::array<double, 3>& direction, double rapidity);

// Spatial rotation by `angle` about a unit 3-axis.
LorentzTransform rotation(const std::array<double, 3>& axis, double angle);

// Uniform random rotation composed with a boost along a random direction,
// rapidity uniform in [0, max_rapidity]. Deterministic for a fixed seed.
LorentzTransform random_lorentz(std::uint64_t seed, double max_rapidity = 3.0);

// Minkowski-orthonormal frame: e0 timelike future-pointing, e1..e3 spacelike,
// frame matrix proper orthochronous.
class Tetrad {
 public:
  // Swaps two spatial legs if needed to make the frame right-handed.
  // Throws std::invalid_argument if the legs are not orthonormal within tol.
  Tetrad(const FourVector& e0, const FourVector& e1, const FourVector& e2,
         const FourVector& e3, double tol = 1e-8);

  static Tetrad standard();

  const FourVector& operator[](std::size_t a) const { return e_[a]; }

  // Columns are the frame legs.
  Mat4 as_matrix() const;
  // max |e_a . e_b - g_ab|
  double gram_defect() const;

 private:
  std::array<FourVector, 4> e_;
};

}  // namespace plt
