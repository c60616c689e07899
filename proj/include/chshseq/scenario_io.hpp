#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "chshseq/chsh.hpp"

namespace chshseq {

/// A parsed scenario file.
///
/// Schema (JSON):
///
///   {
///     "description": "free text",                      // optional
///     "state": "singlet"
///            | {"named": "singlet"}
///            | {"amplitudes": [[re, im], ...]},         // unit norm within 1e-10
///     "observables": {"A": OBS, "A_prime": OBS, "B": OBS, "B_prime": OBS}
///   }
///
///   OBS := {"pauli": "x" | "y" | "z"}                  + optional LIFT
///        | {"spin": {"theta": rad, "phi": rad}}       + optional LIFT
///        | {"matrix": M, "allow_trivial": bool}        // projectors from the spectrum
///        | {"matrix": M, "proj_plus": M, "proj_minus": M}
///        | {"identity": dim}                            // trivial measurement
///   LIFT := "site": "left" | "right", "other_dim": n    // other_dim defaults to 2
///   M    := row-major nested array of [re, im] pairs
///
/// Spin directions: theta is the polar angle from +z, phi the azimuth, so
/// (0, 0) is sigma_z and (pi/2, 0) is sigma_x.
struct ScenarioFile {
  BellScenario scenario;
  std::string description;
};

/// Throws ParseError carrying a JSON-pointer path to the offending field.
ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Explicit form: amplitudes plus every observable as matrix and both
/// projectors. Parsing this form performs no decomposition, so a
/// serialize/parse cycle reproduces the scenario bit for bit.
nlohmann::json scenario_to_json(const BellScenario& scenario, const std::string& description);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json vector_to_json(const ComplexVector& v);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);
ComplexVector vector_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace chshseq
