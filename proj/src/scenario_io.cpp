#include "chshseq/scenario_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "chshseq/errors.hpp"

namespace chshseq {

using nlohmann::json;

namespace {

constexpr const char* kObservableKeys[] = {"A", "A_prime", "B", "B_prime"};

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "complex numbers are [re, im] arrays");
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

// Runs `fn`, re-raising library errors as ParseError located at `path`.
template <typename F>
auto located(const std::string& path, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

std::optional<std::pair<Site, std::size_t>> parse_lift(const json& j, const std::string& path) {
  auto it = j.find("site");
  if (it == j.end()) {
    if (j.contains("other_dim")) throw ParseError(path + "/other_dim", "other_dim given without site");
    return std::nullopt;
  }
  if (!it->is_string()) throw ParseError(path + "/site", "expected \"left\" or \"right\"");
  const auto site_name = it->get<std::string>();
  Site site;
  if (site_name == "left") {
    site = Site::left;
  } else if (site_name == "right") {
    site = Site::right;
  } else {
    throw ParseError(path + "/site", "expected \"left\" or \"right\", got \"" + site_name + "\"");
  }
  std::size_t other = 2;
  if (auto od = j.find("other_dim"); od != j.end()) {
    if (!od->is_number_integer() || od->get<long long>() < 1) {
      throw ParseError(path + "/other_dim", "expected a positive integer");
    }
    other = od->get<std::size_t>();
  }
  return std::pair{site, other};
}

DichotomicObservable parse_observable(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "observable must be an object");
  const auto lifting = parse_lift(j, path);
  auto apply_lift = [&](DichotomicObservable obs) {
    if (!lifting) return obs;
    return located(path, [&] { return lift(obs, lifting->first, lifting->second); });
  };

  if (auto it = j.find("pauli"); it != j.end()) {
    const auto name = it->is_string() ? it->get<std::string>() : std::string();
    ComplexMatrix m;
    if (name == "x") {
      m = pauli_x();
    } else if (name == "y") {
      m = pauli_y();
    } else if (name == "z") {
      m = pauli_z();
    } else {
      throw ParseError(path + "/pauli", "expected \"x\", \"y\" or \"z\"");
    }
    return apply_lift(located(path, [&] { return DichotomicObservable::from_matrix(m); }));
  }
  if (auto it = j.find("spin"); it != j.end()) {
    const double theta = number(require(*it, "theta", path + "/spin"), path + "/spin/theta");
    const double phi = it->contains("phi") ? number((*it)["phi"], path + "/spin/phi") : 0.0;
    return apply_lift(DichotomicObservable::from_spin_direction(theta, phi));
  }
  if (auto it = j.find("identity"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1) {
      throw ParseError(path + "/identity", "expected a positive dimension");
    }
    return apply_lift(DichotomicObservable::identity(it->get<std::size_t>()));
  }
  if (auto it = j.find("matrix"); it != j.end()) {
    auto m = matrix_from_json(*it, path + "/matrix");
    const bool has_plus = j.contains("proj_plus");
    if (has_plus != j.contains("proj_minus")) {
      throw ParseError(path, "proj_plus and proj_minus must be given together");
    }
    if (has_plus) {
      auto plus = matrix_from_json(j["proj_plus"], path + "/proj_plus");
      auto minus = matrix_from_json(j["proj_minus"], path + "/proj_minus");
      return apply_lift(located(path, [&] { return DichotomicObservable::from_parts(m, plus, minus); }));
    }
    bool allow_trivial = false;
    if (auto at = j.find("allow_trivial"); at != j.end()) {
      if (!at->is_boolean()) throw ParseError(path + "/allow_trivial", "expected a boolean");
      allow_trivial = at->get<bool>();
    }
    return apply_lift(located(path, [&] { return DichotomicObservable::from_matrix(m, allow_trivial); }));
  }
  throw ParseError(path, "observable needs one of pauli, spin, matrix or identity");
}

QuantumState parse_state(const json& j, const std::string& path) {
  std::string named;
  if (j.is_string()) {
    named = j.get<std::string>();
  } else if (j.is_object() && j.contains("named")) {
    if (!j["named"].is_string()) throw ParseError(path + "/named", "expected a state name");
    named = j["named"].get<std::string>();
  } else if (j.is_object() && j.contains("amplitudes")) {
    auto v = vector_from_json(j["amplitudes"], path + "/amplitudes");
    return located(path + "/amplitudes", [&] { return QuantumState(std::move(v)); });
  } else {
    throw ParseError(path, "state must be \"singlet\", {\"named\": ...} or {\"amplitudes\": [...]}");
  }
  if (named == "singlet") return singlet_state();
  throw ParseError(path, "unknown named state \"" + named + "\"");
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "matrix must be a non-empty array of rows");
  const auto n_rows = j.size();
  const auto n_cols = j[0].is_array() ? j[0].size() : 0;
  if (n_cols == 0) throw ParseError(path + "/0", "row must be a non-empty array");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t r = 0; r < n_rows; ++r) {
    const auto row_path = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != n_cols) throw ParseError(row_path, "ragged matrix row");
    for (std::size_t c = 0; c < n_cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], row_path + "/" + std::to_string(c));
    }
  }
  return located(path, [&] { return ComplexMatrix(std::move(m)); });
}

ComplexVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of [re, im] amplitudes");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], path + "/" + std::to_string(k));
  }
  return v;
}

ScenarioFile parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "scenario must be a JSON object");
  std::string description;
  if (auto it = doc.find("description"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("/description", "expected a string");
    description = it->get<std::string>();
  }
  auto psi = parse_state(require(doc, "state", ""), "/state");
  const auto& obs = require(doc, "observables", "");
  std::vector<DichotomicObservable> parsed;
  for (const char* key : kObservableKeys) {
    const std::string path = std::string("/observables/") + key;
    parsed.push_back(parse_observable(require(obs, key, "/observables"), path).named(key));
  }
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    if (parsed[k].dim() != psi.dim()) {
      std::ostringstream os;
      os << "observable dimension " << parsed[k].dim() << " does not match state dimension " << psi.dim();
      throw ParseError(std::string("/observables/") + kObservableKeys[k], os.str());
    }
  }
  ObservableQuadruple quad{parsed[0], parsed[1], parsed[2], parsed[3]};
  return ScenarioFile{BellScenario(std::move(psi), std::move(quad)), std::move(description)};
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

json scenario_to_json(const BellScenario& scenario, const std::string& description) {
  json observables = json::object();
  const DichotomicObservable* obs[] = {&scenario.a(), &scenario.a_prime(), &scenario.b(), &scenario.b_prime()};
  for (std::size_t k = 0; k < 4; ++k) {
    observables[kObservableKeys[k]] = {
        {"matrix", matrix_to_json(obs[k]->op())},
        {"proj_plus", matrix_to_json(obs[k]->proj_plus())},
        {"proj_minus", matrix_to_json(obs[k]->proj_minus())},
    };
  }
  return {
      {"description", description},
      {"state", {{"amplitudes", vector_to_json(scenario.psi().amplitudes())}}},
      {"observables", std::move(observables)},
  };
}

}  // namespace chshseq
