#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chshseq/chsh.hpp"
#include "chshseq/montecarlo.hpp"
#include "chshseq/optimizer.hpp"

namespace chshseq {

inline constexpr const char* kToolName = "chsh_seq";
inline constexpr const char* kToolVersion = CHSHSEQ_VERSION;

/// Report skeleton: tool name/version, command, echoed scenario.
nlohmann::json report_header(std::string_view command);

/// Full analytic pipeline for one scenario: both CHSH routes, the four joint
/// distributions, marginal deviations, lambda_max over states, operator
/// norm of C^ and both norm decompositions.
nlohmann::json analysis_json(const BellScenario& scenario, double classification_tol = kClassificationTol);

/// Monte Carlo runs of the four observable pairs, pair k seeded with
/// splitmix64(seed + k), with per-cell z statistics and an empirical CHSH.
nlohmann::json simulation_json(const BellScenario& scenario, std::uint64_t samples, std::uint64_t seed,
                               std::size_t threads = 0);

nlohmann::json search_json(const SearchSpace& space, const SearchOptions& options, const SearchResult& result);

/// start:stop:steps, `steps` points inclusive of both ends (one point: start).
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;

  std::vector<double> points() const;
};

/// Throws ParseError for malformed or empty grids.
Grid parse_grid(std::string_view spec);

enum class SweepFamily {
  /// Singlet, A = sigma(0) (x) I, A' = sigma(pi/2) (x) I, B = I (x) sigma(b),
  /// B' = I (x) sigma(b + pi/2): product-form spin measurements.
  spin_angles,
  /// Same angles, all four observables acting on a single qubit in |0>:
  /// mutually incompatible mixed sequential measurements.
  qubit_spin,
};

SweepFamily parse_sweep_family(std::string_view name);
const char* to_string(SweepFamily f) noexcept;

/// Scenario of a family at Bob angle b.
BellScenario sweep_scenario(SweepFamily family, double b);

struct SweepRow {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  std::array<double, 4> correlations{};
  double chsh = 0.0;
  double max_marginal_deviation = 0.0;
  BoundClass classification = BoundClass::within_classical;
};

std::vector<SweepRow> sweep(SweepFamily family, const Grid& grid, double classification_tol = kClassificationTol);

/// Comma separated, header row, %.17g numbers, independent of the locale.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(SweepFamily family, const Grid& grid, const std::vector<SweepRow>& rows);

/// One CSV summary row (header included) of a scenario analysis.
void write_analysis_csv(std::ostream& os, const CHSHReport& report);

/// %.17g in the C locale.
std::string format_double(double v);

}  // namespace chshseq
