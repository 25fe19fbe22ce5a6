#pragma once

#include <cstdint>
#include <vector>

#include "plt/oracle.hpp"
#include "plt/separate.hpp"

namespace plt {

// Batch kernels come in two implementations: a serial reference and an
// OpenMP-parallel version. Both fill per-index slots, so results are
// identical (bitwise) and ordered by input index regardless of scheduling.
enum class Execution { Serial, Parallel };

struct CrosscheckOptions {
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  std::vector<int> ranks = {1, 2, 3, 4};  // cycled over the sample index
  Tolerances tol;
};

struct CrosscheckRecord {
  VerdictStatus plt = VerdictStatus::NotAState;
  VerdictStatus ppt = VerdictStatus::NotAState;
  double margin = 0.0;
  double mu0 = 0.0;
  double ppt_min_eigenvalue = 0.0;
  bool excluded = false;  // inside the dual boundary band
};

struct CrosscheckResult {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t excluded = 0;
  std::vector<std::size_t> disagreements;
  std::vector<CrosscheckRecord> records;
};

// PLT verdict vs PPT oracle over a reproducible random ensemble.
CrosscheckResult crosscheck(const CrosscheckOptions& opt,
                            Execution exec = Execution::Serial);

enum class RegionClass { NotAState, Separable, Entangled };
std::string_view to_string(RegionClass c);

struct ScanOptions {
  int k = 41;               // grid points per axis over [-1, 1]
  bool full_cube = false;   // default restricts to the two uniform-sign octants
  Tolerances tol;
};

struct ScanRow {
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  RegionClass cls = RegionClass::NotAState;
  bool crossvalidated = false;  // state assembly + eigensolve agreed
};

struct ScanResult {
  std::vector<ScanRow> rows;  // row-major over the grid, filtered to octants
  std::size_t mismatches = 0;
};

// Classifies the mu-space grid at mu0 = 1 via the state conditions and the
// SEC, cross-validating every point by assembling the canonical state and
// eigensolving it (state validity and PPT).
ScanResult scan_region(const ScanOptions& opt, Execution exec = Execution::Serial);

// Region classification of a single canonical point (mu0 = 1).
RegionClass classify_mu_point(double mu1, double mu2, double mu3,
                              const Tolerances& tol = {});

// Per-state verdicts, parallelizable; output order matches input order.
std::vector<Verdict> batch_verdicts(const std::vector<DensityMatrix>& states,
                                    Execution exec = Execution::Serial,
                                    const Tolerances& tol = {});

}  // namespace plt
