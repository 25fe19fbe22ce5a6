#include "plt/classify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace plt {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Separable: return "separable";
    case VerdictStatus::Entangled: return "entangled";
    case VerdictStatus::NotAState: return "not_a_state";
  }
  return "unknown";
}

int first_failed_state_condition(const std::array<double, 4>& mu, double tol) {
  const double m0 = mu[0], m1 = mu[1], m2 = mu[2], m3 = mu[3];
  const double band = tol * std::max(m0, 1e-300);
  if (-m1 + m2 + m3 > m0 + band) return 1;
  if (m1 - m2 + m3 > m0 + band) return 2;
  if (m1 + m2 - m3 > m0 + band) return 3;
  if (m1 + m2 + m3 < -m0 - band) return 4;
  return 0;
}

bool state_conditions(const std::array<double, 4>& mu, double tol) {
  return first_failed_state_condition(mu, tol) == 0;
}

Verdict verdict_from_lsvd(const LsvdResult& raw, const Tolerances& tol) {
  Verdict v;
  v.state_type = raw.state_type;
  v.sign_class = raw.sign_class;

  switch (raw.state_type) {
    case StateType::TypeI: {
      const int failed = first_failed_state_condition(raw.mu, tol.boundary_band);
      const LsvdResult canon = canonicalize_signs(raw, false, nullptr, tol);
      v.mu0 = canon.mu[0];
      v.margin = canon.mu[0] - (canon.mu[1] + canon.mu[2] + canon.mu[3]);
      v.near_boundary = std::abs(v.margin) <= tol.boundary_band * std::max(v.mu0, 1e-300);
      if (failed != 0) {
        v.status = VerdictStatus::NotAState;
        v.failed_condition = failed;
        v.detail = "state condition " + std::to_string(failed) + " fails";
        return v;
      }
      v.status = v.margin < 0.0 ? VerdictStatus::Entangled : VerdictStatus::Separable;
      return v;
    }
    case StateType::TypeII: {
      const double mu0 = raw.mu[0];
      v.mu0 = mu0;
      v.margin = -(raw.mu[2] + raw.mu[3]);
      v.near_boundary = std::abs(v.margin) <= tol.boundary_band * std::max(mu0, 1e-300);
      if (std::abs(raw.mu[2] - raw.mu[3]) > tol.boundary_band * std::max(mu0, 1e-300)) {
        v.status = VerdictStatus::NotAState;
        v.failed_condition = 5;
        v.detail = "Type-II requires mu2 = mu3";
        return v;
      }
      v.status = v.margin < -tol.boundary_band * mu0 ? VerdictStatus::Entangled
                                                     : VerdictStatus::Separable;
      if (v.status == VerdictStatus::Separable && v.margin < 0.0)
        v.near_boundary = true;
      return v;
    }
    case StateType::TypeII0a:
    case StateType::TypeII0b:
    case StateType::TypeII0c:
      // Rank-one tensors are products of causal factors, hence separable.
      v.status = VerdictStatus::Separable;
      v.mu0 = 0.0;
      v.margin = 0.0;
      v.near_boundary = true;
      return v;
  }
  return v;
}

Verdict verdict(const DensityMatrix& rho, const Tolerances& tol) {
  try {
    const LsvdResult raw = lsvd(rho_to_A(rho), tol);
    return verdict_from_lsvd(raw, tol);
  } catch (const std::invalid_argument& e) {
    Verdict v;
    v.status = VerdictStatus::NotAState;
    v.failed_condition = -1;
    v.detail = e.what();
    return v;
  }
}

namespace {

FourVector random_null_future(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double d[3];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& di : d) {
      di = gauss(rng);
      n += di * di;
    }
  } while (n < 1e-30);
  n = std::sqrt(n);
  return {1.0, d[0] / n, d[1] / n, d[2] / n};
}

}  // namespace

EnergyReport energy_conditions(const LsvdResult& r, const MinkowskiMap& A,
                               std::uint64_t fuzz_seed, int fuzz_samples,
                               const Tolerances& tol) {
  EnergyReport rep;
  const double band = tol.boundary_band;

  if (r.state_type == StateType::TypeI) {
    const LsvdResult c = canonicalize_signs(r, false, nullptr, tol);
    const double mu0 = c.mu[0];
    const double eps = band * std::max(mu0, 1e-300);
    for (int k = 1; k < 4; ++k) {
      if (c.mu[k] > mu0 + eps) {
        rep.wec = false;
        rep.witnesses.push_back(
            {"wec: mu" + std::to_string(k) + " > mu0",
             c.right.v[0] + c.right.v[k], FourVector{}, false});
      }
      if (std::abs(c.mu[k]) > mu0 + eps) {
        rep.dec = false;
        const double s = c.mu[k] > 0.0 ? 1.0 : -1.0;
        rep.witnesses.push_back({"dec: |mu" + std::to_string(k) + "| > mu0",
                                 c.right.v[0] - s * c.right.v[k],
                                 c.left.v[0] + c.left.v[k], true});
      }
    }
    if (c.mu[1] + c.mu[2] + c.mu[3] > mu0 + eps) {
      rep.sec = false;
      rep.witnesses.push_back({"sec: mu1+mu2+mu3 > mu0", c.left.v[0],
                               FourVector{}, false});
    }
  } else if (r.state_type == StateType::TypeII) {
    // The Jordan stratum satisfies WEC and DEC; the SEC holds exactly on the
    // separable substratum mu2 = mu3 = 0.
    const double mu0 = r.mu[0];
    if (r.mu[2] + r.mu[3] > band * std::max(mu0, 1e-300)) {
      rep.sec = false;
      rep.witnesses.push_back(
          {"sec: type-II with mu2 = mu3 > 0",
           r.left.v[0] + r.left.v[1], FourVector{}, false});
    }
  }
  // Type-II0: rank-one null/timelike products satisfy all three.

  // Guard against frame errors: Eq-style sampling of A(n, m) over null pairs.
  const Mat4 m = A.as_mixed();
  std::mt19937_64 rng(fuzz_seed);
  double fmin = 0.0;
  bool first = true;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (int i = 0; i < fuzz_samples; ++i) {
    const FourVector n = random_null_future(rng);
    const FourVector mm = random_null_future(rng);
    const double val = minkowski_dot(n, m * mm) / scale;
    if (first || val < fmin) {
      fmin = val;
      first = false;
    }
  }
  rep.fuzz_samples = fuzz_samples;
  rep.fuzz_min = fmin;
  if (fmin < -1e-9) rep.dec = false;
  return rep;
}

std::array<double, 3> partial_transpose_mu(const LsvdResult& r) {
  return {-r.mu[1], -r.mu[2], -r.mu[3]};
}

}  // namespace plt
