#include "plt/io.hpp"

#include <fstream>
#include <sstream>

namespace plt::io {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json state_to_json(const CMat4& rho) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back({rho[i][j].real(), rho[i][j].imag()});
    rows.push_back(row);
  }
  return json{{"rho", rows}};
}

CMat4 state_from_json(const json& j) {
  if (!j.contains("rho"))
    throw std::runtime_error("state json: missing \"rho\" key");
  const json& rows = j.at("rho");
  if (!rows.is_array() || rows.size() != 4)
    throw std::runtime_error("state json: \"rho\" must be a 4x4 array");
  CMat4 m{};
  for (int i = 0; i < 4; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || row.size() != 4)
      throw std::runtime_error("state json: row " + std::to_string(i) + " must have 4 entries");
    for (int jj = 0; jj < 4; ++jj) {
      const json& cell = row.at(jj);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number())
        throw std::runtime_error("state json: entries must be [re, im] pairs");
      m[i][jj] = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

namespace {

CMat4 state_from_csv(const std::string& text) {
  std::vector<double> vals;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && vals.empty()) {
    std::istringstream row(line);
    std::string cell;
    std::vector<double> parsed;
    bool numeric = true;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        parsed.push_back(v);
      } catch (...) {
        numeric = false;
        break;
      }
    }
    if (numeric && !parsed.empty()) vals = std::move(parsed);  // skip header rows
  }
  if (vals.size() != 32)
    throw std::runtime_error("state csv: expected 32 columns (16 re, 16 im)");
  CMat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m[i][j] = cplx(vals[4 * i + j], vals[16 + 4 * i + j]);
  return m;
}

}  // namespace

LoadedState load_density_matrix(const std::string& path,
                                DensityMatrix::Validation validation,
                                double psd_tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();

  CMat4 m{};
  const bool csv = path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv) {
    m = state_from_csv(bytes);
  } else {
    json j;
    try {
      j = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(std::string("state json: ") + e.what());
    }
    m = state_from_json(j);
  }
  return {DensityMatrix::from_matrix(m, validation, psd_tol), fnv1a_hex(bytes)};
}

json four_vector_to_json(const FourVector& v) {
  return json::array({v[0], v[1], v[2], v[3]});
}

json frame_to_json(const Frame& f) {
  const char* kind = f.kind == Frame::Kind::Tetrad     ? "tetrad"
                     : f.kind == Frame::Kind::NullFrame ? "null"
                                                        : "rank1";
  json vecs = json::array();
  const int count = f.kind == Frame::Kind::Rank1 ? 1 : 4;
  for (int a = 0; a < count; ++a) vecs.push_back(four_vector_to_json(f.v[a]));
  return json{{"kind", kind}, {"vectors", vecs}, {"defect", f.defect()}};
}

json lsvd_to_json(const LsvdResult& r) {
  return json{
      {"state_type", std::string(to_string(r.state_type))},
      {"mu", {r.mu[0], r.mu[1], r.mu[2], r.mu[3]}},
      {"lambda", {r.lambda[0], r.lambda[1], r.lambda[2], r.lambda[3]}},
      {"jordan_x", r.jordan_x},
      {"sign_class", std::string(to_string(r.sign_class))},
      {"left_frame", frame_to_json(r.left)},
      {"right_frame", frame_to_json(r.right)},
      {"diagnostics",
       {{"reconstruction_residual", r.diag.recon_residual},
        {"quartic_mismatch", r.diag.quartic_mismatch},
        {"ill_conditioned", r.diag.ill_conditioned},
        {"power_iterations", r.diag.power_iterations}}},
  };
}

json verdict_to_json(const Verdict& v) {
  json j{{"status", std::string(to_string(v.status))},
         {"margin", v.margin},
         {"mu0", v.mu0},
         {"state_type", std::string(to_string(v.state_type))},
         {"sign_class", std::string(to_string(v.sign_class))},
         {"near_boundary", v.near_boundary}};
  if (v.status == VerdictStatus::NotAState) {
    j["failed_condition"] = v.failed_condition;
    j["detail"] = v.detail;
  }
  return j;
}

json energy_to_json(const EnergyReport& e) {
  json wit = json::array();
  for (const EnergyWitness& w : e.witnesses) {
    json entry{{"condition", w.condition},
               {"vector", four_vector_to_json(w.first)}};
    if (w.is_pair) entry["pair"] = four_vector_to_json(w.second);
    wit.push_back(entry);
  }
  return json{{"wec", e.wec},       {"dec", e.dec},
              {"sec", e.sec},       {"fuzz_samples", e.fuzz_samples},
              {"fuzz_min", e.fuzz_min}, {"witnesses", wit}};
}

json decomposition_to_json(const SeparableDecomposition& d,
                           const VerificationReport& check) {
  json terms = json::array();
  for (const DecompositionTerm& t : d.terms)
    terms.push_back({{"weight", t.weight},
                     {"left", four_vector_to_json(t.left)},
                     {"right", four_vector_to_json(t.right)},
                     {"source", t.source}});
  return json{{"terms", terms},
              {"dropped_zero_terms", d.dropped_zero_terms},
              {"provenance", d.provenance},
              {"residual", check.residual},
              {"factors_causal", check.factors_causal},
              {"weights_positive", check.weights_positive},
              {"min_factor_eigenvalue", check.min_factor_eigenvalue},
              {"weight_identity_defect", check.weight_identity_defect}};
}

json analysis_report(const ReportInputs& in) {
  json j;
  j["input"] = {{"path", in.path},
                {"digest", in.digest},
                {"trace", in.rho ? in.rho->trace() : 0.0},
                {"clipped", in.rho && in.rho->clipped()},
                {"clip_adjustment", in.rho ? in.rho->clip_adjustment() : 0.0}};
  if (in.A) {
    json rows = json::array();
    const Mat4 low = in.A->as_lower();
    for (int i = 0; i < 4; ++i) {
      json row = json::array();
      for (int jj = 0; jj < 4; ++jj) row.push_back(low(i, jj));
      rows.push_back(row);
    }
    j["a_tensor"] = {{"index_position", "both_lower"}, {"matrix", rows}};
  }
  if (in.lsvd) j["lsvd"] = lsvd_to_json(*in.lsvd);
  if (in.verdict) j["verdict"] = verdict_to_json(*in.verdict);
  if (in.energy) j["energy"] = energy_to_json(*in.energy);
  if (in.decomposition && in.decomposition_check)
    j["decomposition"] =
        decomposition_to_json(*in.decomposition, *in.decomposition_check);
  if (in.ppt)
    j["ppt"] = {{"status", std::string(to_string(in.ppt->status))},
                {"min_eigenvalue", in.ppt->min_eigenvalue}};
  j["timings"] = {{"total_us", in.total_us}};
  return j;
}

std::optional<std::string> validate_against_schema(const json& doc,
                                                   const json& schema,
                                                   const std::string& where) {
  if (schema.contains("type")) {
    const std::string t = schema.at("type").get<std::string>();
    const bool ok = (t == "object" && doc.is_object()) ||
                    (t == "array" && doc.is_array()) ||
                    (t == "number" && doc.is_number()) ||
                    (t == "integer" && doc.is_number_integer()) ||
                    (t == "string" && doc.is_string()) ||
                    (t == "boolean" && doc.is_boolean());
    if (!ok) return where + ": expected type " + t;
  }
  if (schema.contains("required")) {
    for (const auto& key : schema.at("required")) {
      if (!doc.contains(key.get<std::string>()))
        return where + ": missing required key " + key.get<std::string>();
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items()) {
      if (doc.contains(key)) {
        if (auto err = validate_against_schema(doc.at(key), sub, where + "." + key))
          return err;
      }
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (auto err = validate_against_schema(
              doc.at(i), schema.at("items"), where + "[" + std::to_string(i) + "]"))
        return err;
    }
  }
  return std::nullopt;
}

}  // namespace plt::io
