#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "plt/io.hpp"

namespace {

// Exit codes shared by the state-analysis commands.
constexpr int kExitSeparable = 0;
constexpr int kExitEntangled = 1;
constexpr int kExitNotAState = 2;
constexpr int kExitParseError = 3;
constexpr int kExitInternal = 4;

struct TolFlags {
  plt::Tolerances tol;
  bool strict = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-causal", tol.causal, "causal classification tolerance");
    cmd->add_option("--tol-psd", tol.psd, "density-matrix positivity tolerance");
    cmd->add_option("--tol-lightlike", tol.lightlike, "lightlike eigenvector threshold");
    cmd->add_option("--tol-degenerate", tol.degenerate, "eigenvalue degeneracy threshold");
    cmd->add_option("--tol-jordan", tol.jordan, "Type-II Jordan coupling threshold");
    cmd->add_option("--tol-rank", tol.rank, "singular value rank cutoff");
    cmd->add_option("--tol-boundary", tol.boundary_band, "verdict boundary band");
    cmd->add_option("--tol-oracle-band", tol.oracle_band, "oracle comparison band");
    cmd->add_flag("--strict", strict, "zero the boundary bands and report raw signs");
  }

  plt::Tolerances resolved() const {
    plt::Tolerances t = tol;
    if (strict) {
      t.boundary_band = 0.0;
      t.oracle_band = 0.0;
    }
    return t;
  }
};

void emit(const plt::io::json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

int exit_code_for(plt::VerdictStatus s) {
  switch (s) {
    case plt::VerdictStatus::Separable: return kExitSeparable;
    case plt::VerdictStatus::Entangled: return kExitEntangled;
    case plt::VerdictStatus::NotAState: return kExitNotAState;
  }
  return kExitInternal;
}

int run_analyze(const std::string& input, const std::string& out_path,
                const TolFlags& tf, bool with_decomposition) {
  const auto t0 = std::chrono::steady_clock::now();
  const plt::Tolerances tol = tf.resolved();

  plt::io::LoadedState loaded = plt::io::load_density_matrix(
      input, plt::DensityMatrix::Validation::Lenient, tol.psd);
  const plt::MinkowskiMap A = plt::rho_to_A(loaded.rho);

  plt::io::ReportInputs rin;
  rin.path = input;
  rin.digest = loaded.digest;
  rin.rho = &loaded.rho;
  rin.A = &A;

  plt::LsvdResult raw;
  plt::Verdict v;
  bool have_lsvd = false;
  try {
    raw = plt::lsvd(A, tol);
    have_lsvd = true;
    v = plt::verdict_from_lsvd(raw, tol);
  } catch (const std::invalid_argument& e) {
    v.status = plt::VerdictStatus::NotAState;
    v.failed_condition = -1;
    v.detail = e.what();
  }

  plt::LsvdResult canon;
  plt::EnergyReport energy;
  if (have_lsvd) {
    canon = plt::canonicalize_signs(raw, false, nullptr, tol);
    energy = plt::energy_conditions(raw, A, 20240901, 1000, tol);
    rin.lsvd = &canon;
    rin.energy = &energy;
  }
  rin.verdict = &v;

  try {
    rin.ppt = plt::ppt_verdict(loaded.rho, tol);
  } catch (const std::exception&) {
    // PPT cross-check is informative only; indefinite inputs may lack it.
  }

  plt::SeparableDecomposition dec;
  plt::VerificationReport check;
  if (with_decomposition && have_lsvd && v.status == plt::VerdictStatus::Separable) {
    dec = plt::separable_decomposition(raw, false, tol);
    check = plt::verify_decomposition(dec, loaded.rho, tol);
    rin.decomposition = &dec;
    rin.decomposition_check = &check;
  }

  rin.total_us = std::chrono::duration<double, std::micro>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  emit(plt::io::analysis_report(rin), out_path);
  return exit_code_for(v.status);
}

int run_decompose(const std::string& input, const std::string& out_path,
                  const TolFlags& tf, bool pure_products) {
  const plt::Tolerances tol = tf.resolved();
  plt::io::LoadedState loaded = plt::io::load_density_matrix(
      input, plt::DensityMatrix::Validation::Lenient, tol.psd);
  const plt::MinkowskiMap A = plt::rho_to_A(loaded.rho);

  plt::LsvdResult raw;
  try {
    raw = plt::lsvd(A, tol);
  } catch (const std::invalid_argument& e) {
    emit({{"status", "not_a_state"}, {"detail", e.what()}}, out_path);
    return kExitNotAState;
  }

  try {
    const plt::SeparableDecomposition dec =
        plt::separable_decomposition(raw, pure_products, tol);
    const plt::VerificationReport check =
        plt::verify_decomposition(dec, loaded.rho, tol);
    plt::io::json j = plt::io::decomposition_to_json(dec, check);
    j["status"] = "separable";
    j["input_digest"] = loaded.digest;
    emit(j, out_path);
    return kExitSeparable;
  } catch (const plt::DecompositionRefused& e) {
    emit({{"status", std::string(plt::to_string(e.status()))},
          {"refused", true},
          {"margin", e.margin()},
          {"detail", e.what()}},
         out_path);
    return exit_code_for(e.status());
  }
}

int run_crosscheck(std::size_t n, std::uint64_t seed,
                   const std::vector<int>& ranks, const TolFlags& tf,
                   bool serial) {
  plt::CrosscheckOptions opt;
  opt.n = n;
  opt.seed = seed;
  if (!ranks.empty()) opt.ranks = ranks;
  for (int r : opt.ranks)
    if (r < 1 || r > 4) throw CLI::ValidationError("--ranks entries must be 1..4");
  opt.tol = tf.resolved();

  const auto t0 = std::chrono::steady_clock::now();
  const plt::CrosscheckResult res = plt::crosscheck(
      opt, serial ? plt::Execution::Serial : plt::Execution::Parallel);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "crosscheck: n=" << n << " seed=" << seed << "\n"
            << "  agree:    " << res.agree << "\n"
            << "  disagree: " << res.disagree << "\n"
            << "  excluded: " << res.excluded << " (boundary band)\n"
            << "  elapsed:  " << secs << " s\n";
  for (std::size_t idx : res.disagreements) {
    const plt::CrosscheckRecord& r = res.records[idx];
    std::cout << "  mismatch at sample " << idx << ": plt=" << plt::to_string(r.plt)
              << " ppt=" << plt::to_string(r.ppt) << " margin=" << r.margin
              << " ppt_min=" << r.ppt_min_eigenvalue << "\n";
  }
  return res.disagree == 0 ? 0 : kExitInternal;
}

int run_scan(int k, bool full_cube, const std::string& out_path,
             const TolFlags& tf, bool serial) {
  plt::ScanOptions opt;
  opt.k = k;
  opt.full_cube = full_cube;
  opt.tol = tf.resolved();
  const plt::ScanResult res = plt::scan_region(
      opt, serial ? plt::Execution::Serial : plt::Execution::Parallel);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    os = &file;
  }
  *os << "mu1,mu2,mu3,class\n";
  for (const plt::ScanRow& r : res.rows)
    *os << r.mu1 << "," << r.mu2 << "," << r.mu3 << ","
        << plt::to_string(r.cls) << "\n";

  if (res.mismatches > 0) {
    std::cerr << "scan-region: " << res.mismatches
              << " grid points failed the spectral cross-validation\n";
    return kExitInternal;
  }
  return 0;
}

int run_sample(const std::string& kind, int variant, double p,
               std::uint64_t seed, int rank, const std::vector<double>& u,
               const std::vector<double>& v, const std::string& out_path) {
  plt::StateRecipe r;
  if (kind == "bell") {
    r.kind = plt::StateRecipe::Kind::Bell;
    r.bell_variant = variant;
  } else if (kind == "werner") {
    r.kind = plt::StateRecipe::Kind::Werner;
    r.p = p;
  } else if (kind == "product") {
    r.kind = plt::StateRecipe::Kind::Product;
    if (u.size() != 4 || v.size() != 4)
      throw CLI::ValidationError("product states need --u and --v with 4 components");
    r.u = {u[0], u[1], u[2], u[3]};
    r.v = {v[0], v[1], v[2], v[3]};
  } else if (kind == "random-mixed") {
    r.kind = plt::StateRecipe::Kind::RandomMixed;
    r.seed = seed;
    r.rank = rank;
  } else if (kind == "random-pure") {
    r.kind = plt::StateRecipe::Kind::RandomPure;
    r.seed = seed;
  } else {
    throw CLI::ValidationError("unknown --kind " + kind);
  }
  const plt::DensityMatrix rho = plt::make_state(r);
  emit(plt::io::state_to_json(rho.matrix()), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit entanglement analysis via the Lorentzian SVD"};
  app.require_subcommand(1);

  std::string input, out_path;
  bool serial = false, pure_products = false, full_cube = false;
  bool with_decomposition = false;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  std::vector<int> ranks;
  int k = 41, variant = 0, rank = 4;
  double p = 0.0;
  std::vector<double> uvec, vvec;
  std::string kind = "werner";
  TolFlags tf_analyze, tf_decompose, tf_cross, tf_scan;

  CLI::App* analyze = app.add_subcommand("analyze", "full report for a state file");
  analyze->add_option("input", input, "state file (.json or .csv)")->required();
  analyze->add_option("-o,--output", out_path, "report destination (default stdout)");
  analyze->add_flag("--decompose", with_decomposition,
                    "include a separable decomposition when one exists");
  tf_analyze.attach(analyze);

  CLI::App* decompose = app.add_subcommand("decompose", "separable decomposition of a state file");
  decompose->add_option("input", input, "state file (.json or .csv)")->required();
  decompose->add_option("-o,--output", out_path, "destination (default stdout)");
  decompose->add_flag("--pure-products", pure_products,
                      "split timelike factors into pure (null) products");
  tf_decompose.attach(decompose);

  CLI::App* cross = app.add_subcommand("crosscheck", "PLT vs PPT over random states");
  cross->add_option("-n,--count", n, "number of states")->check(CLI::PositiveNumber);
  cross->add_option("-s,--seed", seed, "base seed");
  cross->add_option("--ranks", ranks, "rank cycle, entries in 1..4");
  cross->add_flag("--serial", serial, "force the serial reference kernel");
  tf_cross.attach(cross);

  CLI::App* scan = app.add_subcommand("scan-region", "classify the mu-space grid at mu0 = 1");
  scan->add_option("-k,--resolution", k, "grid points per axis")->check(CLI::Range(2, 2001));
  scan->add_option("-o,--output", out_path, "CSV destination (default stdout)");
  scan->add_flag("--full-cube", full_cube, "emit all eight octants");
  scan->add_flag("--serial", serial, "force the serial reference kernel");
  tf_scan.attach(scan);

  CLI::App* sample = app.add_subcommand("sample", "generate a state file");
  sample->add_option("--kind", kind, "bell|werner|product|random-mixed|random-pure")->required();
  sample->add_option("--variant", variant, "Bell variant 0..3")->check(CLI::Range(0, 3));
  sample->add_option("--p", p, "Werner weight")->check(CLI::Range(0.0, 1.0));
  sample->add_option("--seed", seed, "random state seed");
  sample->add_option("--rank", rank, "random state rank")->check(CLI::Range(1, 4));
  sample->add_option("--u", uvec, "qubit-1 factor (spacetime form, 4 reals)");
  sample->add_option("--v", vvec, "qubit-2 factor (spacetime form, 4 reals)");
  sample->add_option("-o,--output", out_path, "destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParseError;
  }

  try {
    if (analyze->parsed())
      return run_analyze(input, out_path, tf_analyze, with_decomposition);
    if (decompose->parsed())
      return run_decompose(input, out_path, tf_decompose, pure_products);
    if (cross->parsed()) return run_crosscheck(n, seed, ranks, tf_cross, serial);
    if (scan->parsed()) return run_scan(k, full_cube, out_path, tf_scan, serial);
    if (sample->parsed())
      return run_sample(kind, variant, p, seed, rank, uvec, vvec, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotAState;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
