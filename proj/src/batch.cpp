#include "plt/batch.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plt {

namespace {

// Shared parallel-for shape: the loop body writes only to its own slot.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, const Body& body) {
#ifdef _OPENMP
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace

std::string_view to_string(RegionClass c) {
  switch (c) {
    case RegionClass::NotAState: return "not_a_state";
    case RegionClass::Separable: return "separable";
    case RegionClass::Entangled: return "entangled";
  }
  return "unknown";
}

CrosscheckResult crosscheck(const CrosscheckOptions& opt, Execution exec) {
  CrosscheckResult res;
  res.records.resize(opt.n);

  for_each_index(opt.n, exec, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(opt.seed, i);
    const int rank = opt.ranks[i % opt.ranks.size()];
    const DensityMatrix rho = random_mixed(seed, rank);
    const Verdict v = verdict(rho, opt.tol);
    const PptResult o = ppt_verdict(rho, opt.tol);

    CrosscheckRecord rec;
    rec.plt = v.status;
    rec.ppt = o.status;
    rec.margin = v.margin;
    rec.mu0 = v.mu0;
    rec.ppt_min_eigenvalue = o.min_eigenvalue;
    rec.excluded =
        std::abs(o.min_eigenvalue) <= opt.tol.oracle_band * rho.trace() ||
        std::abs(v.margin) <= opt.tol.oracle_band * std::max(v.mu0, 1e-300);
    res.records[i] = rec;
  });

  for (std::size_t i = 0; i < opt.n; ++i) {
    const CrosscheckRecord& rec = res.records[i];
    if (rec.excluded) {
      ++res.excluded;
    } else if (rec.plt == rec.ppt) {
      ++res.agree;
    } else {
      ++res.disagree;
      res.disagreements.push_back(i);
    }
  }
  return res;
}

RegionClass classify_mu_point(double mu1, double mu2, double mu3,
                              const Tolerances& tol) {
  const std::array<double, 4> mu{1.0, mu1, mu2, mu3};
  if (!state_conditions(mu, tol.boundary_band)) return RegionClass::NotAState;
  // Canonical signs: a negative product means the negative octant's image,
  // which always satisfies the SEC.
  const double prod = mu1 * mu2 * mu3;
  const double sum = std::abs(mu1) + std::abs(mu2) + std::abs(mu3);
  if (prod > 0.0 && sum > 1.0 + tol.boundary_band) return RegionClass::Entangled;
  return RegionClass::Separable;
}

namespace {

ScanRow scan_point(double mu1, double mu2, double mu3, const Tolerances& tol) {
  ScanRow row;
  row.mu1 = mu1;
  row.mu2 = mu2;
  row.mu3 = mu3;
  row.cls = classify_mu_point(mu1, mu2, mu3, tol);

  // Cross-validation: assemble the canonical state and decide both questions
  // spectrally, independent of the mu arithmetic.
  const Mat4 t = Mat4::diag(1.0, mu1, mu2, mu3);
  const CMat4 rho = A_to_rho(MinkowskiMap::mixed(t));
  const auto eig = hermitian_eigenvalues(rho);
  const double trace = 1.0;  // A00 of the canonical form
  const bool is_state = eig[0] >= -tol.psd * trace;

  RegionClass spectral;
  if (!is_state) {
    spectral = RegionClass::NotAState;
  } else {
    const auto pt_eig = hermitian_eigenvalues(partial_transpose(rho));
    spectral = pt_eig[0] < -tol.psd * trace ? RegionClass::Entangled
                                            : RegionClass::Separable;
  }
  row.crossvalidated = spectral == row.cls;
  return row;
}

}  // namespace

ScanResult scan_region(const ScanOptions& opt, Execution exec) {
  if (opt.k < 2) throw std::invalid_argument("scan_region: k must be >= 2");
  const int k = opt.k;
  auto coord = [&](int j) { return -1.0 + 2.0 * j / (k - 1); };

  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(k) * k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        const double m1 = coord(i), m2 = coord(j), m3 = coord(l);
        if (!opt.full_cube) {
          const bool pos = m1 >= 0.0 && m2 >= 0.0 && m3 >= 0.0;
          const bool neg = m1 <= 0.0 && m2 <= 0.0 && m3 <= 0.0;
          if (!pos && !neg) continue;
        }
        pts.push_back({m1, m2, m3});
      }

  ScanResult res;
  res.rows.resize(pts.size());
  for_each_index(pts.size(), exec, [&](std::size_t i) {
    res.rows[i] = scan_point(pts[i][0], pts[i][1], pts[i][2], opt.tol);
  });
  for (const ScanRow& r : res.rows)
    if (!r.crossvalidated) ++res.mismatches;
  return res;
}

std::vector<Verdict> batch_verdicts(const std::vector<DensityMatrix>& states,
                                    Execution exec, const Tolerances& tol) {
  std::vector<Verdict> out(states.size());
  for_each_index(states.size(), exec,
                 [&](std::size_t i) { out[i] = verdict(states[i], tol); });
  return out;
}

}  // namespace plt
