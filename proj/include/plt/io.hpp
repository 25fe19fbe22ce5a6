#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "plt/batch.hpp"

namespace plt::io {

using nlohmann::json;

struct LoadedState {
  DensityMatrix rho;
  std::string digest;  // fnv1a-64 of the file bytes, hex
};

// Reads a density matrix from a .json file ({"rho": [[[re, im] x4] x4]}) or
// a .csv file (one row, 32 columns: 16 real parts then 16 imaginary parts,
// row-major). Throws std::runtime_error with a parse message on bad input.
LoadedState load_density_matrix(const std::string& path,
                                DensityMatrix::Validation validation,
                                double psd_tol = 1e-9);

json state_to_json(const CMat4& rho);
CMat4 state_from_json(const json& j);

std::string fnv1a_hex(const std::string& bytes);

json four_vector_to_json(const FourVector& v);
json frame_to_json(const Frame& f);
json lsvd_to_json(const LsvdResult& r);
json verdict_to_json(const Verdict& v);
json energy_to_json(const EnergyReport& e);
json decomposition_to_json(const SeparableDecomposition& d,
                           const VerificationReport& check);

struct ReportInputs {
  std::string path;
  std::string digest;
  const DensityMatrix* rho = nullptr;
  const MinkowskiMap* A = nullptr;
  const LsvdResult* lsvd = nullptr;
  const Verdict* verdict = nullptr;
  const EnergyReport* energy = nullptr;
  const SeparableDecomposition* decomposition = nullptr;  // optional
  const VerificationReport* decomposition_check = nullptr;
  std::optional<PptResult> ppt;
  double total_us = 0.0;
};

json analysis_report(const ReportInputs& in);

// Minimal structural validation against a JSON-Schema-style document: checks
// "type", "required" and recurses into "properties" / "items". Returns an
// error description, or std::nullopt when the document conforms.
std::optional<std::string> validate_against_schema(const json& doc,
                                                   const json& schema,
                                                   const std::string& where = "$");

}  // namespace plt::io
