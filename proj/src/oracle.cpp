#include "plt/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace plt {

CMat4 partial_transpose(const CMat4& rho) {
  CMat4 pt{};
  // index = 2*a + b for |a b>; transpose the second-factor indices.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          pt[2 * a + b][2 * c + d] = rho[2 * a + d][2 * c + b];
  return pt;
}

PptResult ppt_verdict(const DensityMatrix& rho, const Tolerances& tol) {
  const auto eig = hermitian_eigenvalues(partial_transpose(rho.matrix()));
  PptResult r;
  r.min_eigenvalue = eig[0];
  r.status = eig[0] < -tol.psd * rho.trace() ? VerdictStatus::Entangled
                                             : VerdictStatus::Separable;
  return r;
}

DensityMatrix bell_state(int variant) {
  if (variant < 0 || variant > 3)
    throw std::invalid_argument("bell_state: variant must be 0..3");
  // 0: (|00>+|11>)/sqrt2, 1: (|00>-|11>)/sqrt2,
  // 2: (|01>+|10>)/sqrt2, 3: (|01>-|10>)/sqrt2.
  std::array<cplx, 4> psi{};
  const double s = 1.0 / std::sqrt(2.0);
  switch (variant) {
    case 0: psi[0] = s; psi[3] = s; break;
    case 1: psi[0] = s; psi[3] = -s; break;
    case 2: psi[1] = s; psi[2] = s; break;
    case 3: psi[1] = s; psi[2] = -s; break;
  }
  CMat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = psi[i] * std::conj(psi[j]);
  return DensityMatrix::from_matrix(m);
}

DensityMatrix werner_state(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("werner_state: p must be in [0, 1]");
  const CMat4 bell = bell_state(0).matrix();
  CMat4 m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = p * bell[i][j];
    m[i][i] += (1.0 - p) * 0.25;
  }
  return DensityMatrix::from_matrix(m);
}

DensityMatrix random_mixed(std::uint64_t seed, int rank) {
  if (rank < 1 || rank > 4)
    throw std::invalid_argument("random_mixed: rank must be in 1..4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // G: 4 x rank complex Gaussian; rho = G G^dagger / Tr.
  std::array<std::array<cplx, 4>, 4> g{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < rank; ++k) g[i][k] = cplx(gauss(rng), gauss(rng));
  CMat4 m{};
  double tr = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < rank; ++k) s += g[i][k] * std::conj(g[j][k]);
      m[i][j] = s;
      if (i == j) tr += s.real();
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] /= tr;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix random_pure(std::uint64_t seed) { return random_mixed(seed, 1); }

DensityMatrix make_state(const StateRecipe& r) {
  switch (r.kind) {
    case StateRecipe::Kind::Bell:
      return bell_state(r.bell_variant);
    case StateRecipe::Kind::Werner:
      return werner_state(r.p);
    case StateRecipe::Kind::Product: {
      if (!is_future_causal(r.u) || !is_future_causal(r.v))
        throw std::invalid_argument(
            "make_state: product factors must be future-pointing causal");
      const CMat4 m = kron(vector_to_single_qubit(r.u), vector_to_single_qubit(r.v));
      return DensityMatrix::from_matrix(m);
    }
    case StateRecipe::Kind::RandomMixed:
      return random_mixed(r.seed, r.rank);
    case StateRecipe::Kind::RandomPure:
      return random_pure(r.seed);
    case StateRecipe::Kind::FromFile:
      throw std::invalid_argument("make_state: FromFile is resolved by the I/O layer");
  }
  throw std::invalid_argument("make_state: unknown recipe");
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 step keyed by base and task index.
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

WernerCrossing werner_threshold(double bisect_tol, const Tolerances& tol) {
  if (!(bisect_tol > 0.0))
    throw std::invalid_argument("werner_threshold: tolerance must be positive");
  WernerCrossing out;

  auto plt_entangled = [&](double p) {
    return verdict(werner_state(p), tol).status == VerdictStatus::Entangled;
  };
  auto ppt_entangled = [&](double p) {
    const auto eig = hermitian_eigenvalues(partial_transpose(werner_state(p).matrix()));
    return eig[0] < 0.0;
  };

  auto bisect = [&](auto&& pred) {
    double lo = 0.0, hi = 1.0;
    if (pred(lo) || !pred(hi))
      throw std::runtime_error("werner_threshold: family is not monotone");
    while (hi - lo > bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      (pred(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };

  out.plt = bisect(plt_entangled);
  out.ppt = bisect(ppt_entangled);
  return out;
}

}  // namespace plt
