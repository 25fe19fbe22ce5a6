#pragma once

#include <cstdint>
#include <string>

#include "plt/classify.hpp"

namespace plt {

// Transpose on the second tensor factor. Hermiticity and trace preserved.
CMat4 partial_transpose(const CMat4& rho);

struct PptResult {
  VerdictStatus status = VerdictStatus::Separable;
  double min_eigenvalue = 0.0;
};

// The PPT criterion: entangled exactly when the partial transpose has an
// eigenvalue below -tol.psd * trace. Necessary and sufficient at 2x2.
PptResult ppt_verdict(const DensityMatrix& rho, const Tolerances& tol = {});

struct StateRecipe {
  enum class Kind { Bell, Werner, Product, RandomMixed, RandomPure, FromFile };
  Kind kind = Kind::Bell;
  int bell_variant = 0;  // 0: phi+, 1: phi-, 2: psi+, 3: psi-
  double p = 0.0;        // Werner mixing weight, in [0, 1]
  FourVector u, v;       // Product factors in spacetime form
  std::uint64_t seed = 0;
  int rank = 4;          // RandomMixed rank, in 1..4
  std::string path;      // FromFile
};

// Deterministic for a fixed seed. FromFile recipes are resolved by the I/O
// layer, not here.
DensityMatrix make_state(const StateRecipe& r);

DensityMatrix bell_state(int variant = 0);
DensityMatrix werner_state(double p);
// Ginibre construction GG^dagger / Tr, with G a 4 x rank complex Gaussian.
DensityMatrix random_mixed(std::uint64_t seed, int rank = 4);
DensityMatrix random_pure(std::uint64_t seed);

// Seed for task `index` within a batch keyed by `base`: splitmix64 applied
// to base + (index+1) * golden ratio increment.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

struct WernerCrossing {
  double plt = 0.0;  // where the PLT verdict flips (exactly 1/3 by the SEC)
  double ppt = 0.0;  // where the PPT minimum eigenvalue changes sign
};

// Dual bisection of the Werner family over [0, 1].
WernerCrossing werner_threshold(double bisect_tol = 1e-10,
                                const Tolerances& tol = {});

}  // namespace plt
