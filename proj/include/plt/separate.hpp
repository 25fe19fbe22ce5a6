#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plt/classify.hpp"

namespace plt {

// One product term of A_{mu nu} = sum_i w_i n^i_mu m^i_nu. `left` is the
// qubit-1 factor, `right` the qubit-2 factor, both future-pointing causal.
struct DecompositionTerm {
  double weight = 0.0;
  FourVector left;
  FourVector right;
  std::string source;  // which frame legs produced this term
};

struct SeparableDecomposition {
  std::vector<DecompositionTerm> terms;
  int dropped_zero_terms = 0;
  std::string provenance;
};

// Thrown when a decomposition is requested for a non-separable input.
class DecompositionRefused : public std::runtime_error {
 public:
  DecompositionRefused(VerdictStatus status, double margin, std::string why)
      : std::runtime_error(std::move(why)), status_(status), margin_(margin) {}
  VerdictStatus status() const { return status_; }
  double margin() const { return margin_; }

 private:
  VerdictStatus status_;
  double margin_;
};

// Explicit separable form of a separable state, transported through the LSVD
// frames so it reconstructs the original A. At most 7 terms for Type-I; with
// `pure_products` the timelike x timelike term is split into null pairs
// averaged over the three spatial axes.
SeparableDecomposition separable_decomposition(const LsvdResult& raw,
                                               bool pure_products = false,
                                               const Tolerances& tol = {});

struct VerificationReport {
  double residual = 0.0;  // Frobenius distance to rho, relative to trace
  bool factors_causal = true;
  bool weights_positive = true;
  double min_factor_eigenvalue = 0.0;  // over all 2x2 factors
  double weight_identity_defect = 0.0; // |sum w n0 m0 - A00| / A00
};

VerificationReport verify_decomposition(const SeparableDecomposition& d,
                                        const DensityMatrix& rho,
                                        const Tolerances& tol = {});

}  // namespace plt
