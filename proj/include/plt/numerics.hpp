#pragma once

#include <array>
#include <cstddef>

#include "plt/lorentz.hpp"

namespace plt::num {

// Cyclic Jacobi for a real symmetric NxN matrix. Eigenvalues land in `w`
// (unsorted), eigenvectors in the columns of `v`. Stops when the off-diagonal
// norm drops below 1e-14 * ||A||_F or after `max_sweeps` sweeps.
template <std::size_t N>
void jacobi_symmetric(std::array<std::array<double, N>, N> a,
                      std::array<double, N>& w,
                      std::array<std::array<double, N>, N>& v,
                      int max_sweeps = 50);

// Sorted eigen pairs, ascending. `vec` columns follow the sort.
template <std::size_t N>
void sort_eigen_ascending(std::array<double, N>& w,
                          std::array<std::array<double, N>, N>& v);

// Roots of x^4 + a3 x^3 + a2 x^2 + a1 x + a0, for polynomials whose roots are
// expected to be real. Returns roots sorted descending; `imag_defect` gets the
// largest clamped imaginary magnitude (0 when genuinely real). Roots are
// polished with a multiplicity-aware Newton step so that repeated roots stay
// accurate.
std::array<double, 4> solve_quartic_real(double a3, double a2, double a1,
                                         double a0, double* imag_defect);

// Real roots of x^3 + b2 x^2 + b1 x + b0. Returns the number of real roots
// (1 or 3), written to r[0..].
int solve_cubic_real(double b2, double b1, double b0, std::array<double, 3>& r);

// Coefficients of det(x I - M) = x^4 + c[3] x^3 + c[2] x^2 + c[1] x + c[0],
// by Faddeev-LeVerrier.
std::array<double, 4> char_poly(const Mat4& m);

// Solves M x = rhs by Gaussian elimination with partial pivoting. Returns
// false when a pivot vanishes outright (exact singularity); near-singular
// systems return the large solutions inverse iteration wants.
bool solve4(const Mat4& m, const FourVector& rhs, FourVector& x);

// Eigenvalues of M from the characteristic quartic, sorted descending.
std::array<double, 4> eigenvalues_via_quartic(const Mat4& m,
                                              double* imag_defect = nullptr);

}  // namespace plt::num
