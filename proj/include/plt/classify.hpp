#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plt/lsvd.hpp"

namespace plt {

enum class VerdictStatus { Separable, Entangled, NotAState };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::NotAState;
  // mu0 - (mu1 + mu2 + mu3) in canonical signs; negative means the strong
  // energy condition fails and the state is entangled.
  double margin = 0.0;
  double mu0 = 0.0;
  StateType state_type = StateType::TypeI;
  SignClass sign_class = SignClass::Boundary;
  bool near_boundary = false;
  // 1..4: the failed inequality of the state conditions, in paper order;
  // 5: Type-II with mu2 != mu3; -1: DEC-level failure. 0 when a state.
  int failed_condition = 0;
  std::string detail;
};

// The four state-condition inequalities on (mu0, mu1, mu2, mu3). Tolerance is
// relative to mu0.
bool state_conditions(const std::array<double, 4>& mu, double tol = 1e-9);
// 0 when all hold; otherwise the 1-based index of the first failure.
int first_failed_state_condition(const std::array<double, 4>& mu,
                                 double tol = 1e-9);

// Full verdict for a density matrix: rho -> A -> lsvd -> canonical strata.
Verdict verdict(const DensityMatrix& rho, const Tolerances& tol = {});

// Verdict from an already computed (raw, uncanonicalized) decomposition.
Verdict verdict_from_lsvd(const LsvdResult& raw, const Tolerances& tol = {});

struct EnergyWitness {
  std::string condition;
  FourVector first;
  FourVector second;  // only for DEC pairs
  bool is_pair = false;
};

struct EnergyReport {
  bool wec = true;
  bool dec = true;
  bool sec = true;
  // Null-pair sampling of A(n, m); minimum normalized value observed.
  int fuzz_samples = 0;
  double fuzz_min = 0.0;
  std::vector<EnergyWitness> witnesses;
};

// Analytic energy conditions from the singular values, with the DEC
// additionally fuzz-checked by sampling random null pairs against A.
EnergyReport energy_conditions(const LsvdResult& r, const MinkowskiMap& A,
                               std::uint64_t fuzz_seed = 20240901,
                               int fuzz_samples = 1000,
                               const Tolerances& tol = {});

// mu-space image of the partial transpose: negation of (mu1, mu2, mu3).
std::array<double, 3> partial_transpose_mu(const LsvdResult& r);

}  // namespace plt
