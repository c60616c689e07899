#include "chshseq/report.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "chshseq/errors.hpp"
#include "chshseq/scenario_io.hpp"

namespace chshseq {

using nlohmann::json;

namespace {

constexpr const char* kPairNames[] = {"A,B", "A,B_prime", "A_prime,B_prime", "A_prime,B"};
constexpr const char* kCellNames[] = {"++", "+-", "-+", "--"};

json cells(const std::array<double, 4>& values) {
  json out = json::object();
  for (std::size_t c = 0; c < 4; ++c) out[kCellNames[c]] = values[c];
  return out;
}

json distribution_json(const JointDistribution& d) {
  return {{"first", d.labels.first}, {"second", d.labels.second}, {"probabilities", cells(d.probs)}};
}

json marginals_json(const MarginalDeviationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"side", to_string(e.side)},
                       {"fixed", e.fixed},
                       {"outcome", to_string(e.outcome)},
                       {"context1", e.context1},
                       {"context2", e.context2},
                       {"deviation", e.deviation}});
  }
  return {{"entries", std::move(entries)}, {"max_abs_deviation", r.max_abs_deviation}};
}

json decomposition_json(const NormDecomposition& d) {
  const auto& names = NormDecomposition::term_names(d.variant);
  json norms = json::object();
  for (std::size_t k = 0; k < names.size(); ++k) norms[names[k]] = d.norms[k];
  json out = {{"term_norms", std::move(norms)}, {"square_norm", d.square_norm}, {"residual", d.residual}};
  if (d.variant == DecompositionVariant::symmetrized) out["within_term_bounds"] = d.within_term_bounds;
  return out;
}

json chsh_json(const CHSHReport& r, double tol) {
  json correlations = json::object();
  for (std::size_t k = 0; k < 4; ++k) correlations[kPairNames[k]] = r.correlations[k];
  json distributions = json::array();
  for (const auto& d : r.distributions) distributions.push_back(distribution_json(d));
  return {{"correlations", std::move(correlations)},
          {"value", r.chsh_value},
          {"value_via_operator", r.chsh_via_operator},
          {"classification", to_string(r.classification)},
          {"classification_tolerance", tol},
          {"joint_distributions", std::move(distributions)}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json report_header(std::string_view command) {
  return {{"tool", {{"name", kToolName}, {"version", kToolVersion}}}, {"command", std::string(command)}};
}

json analysis_json(const BellScenario& scenario, double classification_tol) {
  const auto report = chsh_value(scenario, classification_tol);
  const auto c_hat = chsh_operator(scenario.observables());
  const auto [lambda_max, maximizer] = max_chsh_over_states(scenario.observables());
  (void)maximizer;
  return {{"chsh", chsh_json(report, classification_tol)},
          {"marginal_deviations", marginals_json(report.marginal_report)},
          {"operator",
           {{"operator_norm", operator_norm(c_hat)},
            {"max_over_states", lambda_max},
            {"max_over_states_classification", to_string(classify_bound(lambda_max, classification_tol))}}},
          {"norm_decomposition",
           {{"symmetrized",
             decomposition_json(norm_decomposition(scenario.observables(), DecompositionVariant::symmetrized))},
            {"unsymmetrized",
             decomposition_json(norm_decomposition(scenario.observables(), DecompositionVariant::unsymmetrized))}}}};
}

json simulation_json(const BellScenario& scenario, std::uint64_t samples, std::uint64_t seed, std::size_t threads) {
  const std::array<std::pair<const DichotomicObservable*, const DichotomicObservable*>, 4> pairs{{
      {&scenario.a(), &scenario.b()},
      {&scenario.a(), &scenario.b_prime()},
      {&scenario.a_prime(), &scenario.b_prime()},
      {&scenario.a_prime(), &scenario.b()},
  }};
  const std::array<int, 4> chsh_signs{1, -1, 1, 1};
  json runs = json::array();
  double empirical_chsh = 0.0;
  double variance = 0.0;
  double max_abs_z = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& [a, b] = pairs[k];
    const auto pair_seed = splitmix64(seed + k);
    const auto stats = run(samples, pair_seed, scenario.psi(), *a, *b, threads);
    const auto analytic = mixed_joint_distribution(scenario.psi(), *a, *b);
    const auto cmp = compare(stats, analytic);
    const double e = stats.frequencies[0] - stats.frequencies[1] - stats.frequencies[2] + stats.frequencies[3];
    empirical_chsh += chsh_signs[k] * e;
    variance += (1.0 - e * e) / static_cast<double>(samples);
    for (double z : cmp.z) max_abs_z = std::max(max_abs_z, std::abs(z));

    json counts = json::object();
    for (std::size_t c = 0; c < 4; ++c) counts[kCellNames[c]] = stats.counts[c];
    runs.push_back({{"pair", kPairNames[k]},
                    {"seed", pair_seed},
                    {"samples", stats.n},
                    {"counts", std::move(counts)},
                    {"frequencies", cells(stats.frequencies)},
                    {"analytic", cells(analytic.probs)},
                    {"z", cells(cmp.z)},
                    {"max_abs_error", cmp.max_abs_error},
                    {"order_ab_fraction", stats.order_ab_fraction},
                    {"empirical_correlation", e}});
  }
  return {{"samples", samples},
          {"seed", seed},
          {"rng", "mt19937_64 blocks of 16384 trajectories, stream seeds via splitmix64"},
          {"runs", std::move(runs)},
          {"max_abs_z", max_abs_z},
          {"empirical_chsh", empirical_chsh},
          {"empirical_chsh_standard_error", std::sqrt(variance)}};
}

json search_json(const SearchSpace& space, const SearchOptions& options, const SearchResult& result) {
  json signatures = json::array();
  for (const auto& s : space.signatures) signatures.push_back({s.plus_multiplicity, s.minus_multiplicity});
  json trace = json::array();
  for (const auto& t : result.trace) trace.push_back({t.evaluation, t.best_value});
  return {{"space",
           {{"dim", space.dim},
            {"constraint", to_string(space.constraint)},
            {"signatures", std::move(signatures)},
            {"parameter_count", space.parameter_count()}}},
          {"options",
           {{"budget", options.budget},
            {"restarts", options.restarts},
            {"seed", options.seed},
            {"initial_step", options.initial_step},
            {"shrink", options.shrink},
            {"step_tol", options.step_tol},
            {"method", "compass pattern search from uniform [-pi, pi) starts"}}},
          {"best_value", result.best_value},
          {"best_classification", to_string(classify_bound(result.best_value))},
          {"best_parameters", result.best_parameters},
          {"best_restart", result.best_restart},
          {"restart_values", result.restart_values},
          {"evaluations", result.evaluations},
          {"converged", result.converged},
          {"trace", std::move(trace)}};
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  for (std::size_t k = 0; k < steps; ++k) {
    out.push_back(start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1));
  }
  return out;
}

Grid parse_grid(std::string_view spec) {
  auto parse_number = [&](std::string_view text, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw ParseError("--grid", std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return v;
  };
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) throw ParseError("--grid", "expected start:stop:steps");
  Grid g;
  g.start = parse_number(spec.substr(0, first), "start");
  g.stop = parse_number(spec.substr(first + 1, second - first - 1), "stop");
  const double steps = parse_number(spec.substr(second + 1), "steps");
  if (steps != std::floor(steps) || steps < 0) throw ParseError("--grid", "steps must be a non-negative integer");
  if (steps == 0) throw ParseError("--grid", "empty grid");
  g.steps = static_cast<std::size_t>(steps);
  return g;
}

SweepFamily parse_sweep_family(std::string_view name) {
  if (name == "spin_angles") return SweepFamily::spin_angles;
  if (name == "qubit_spin") return SweepFamily::qubit_spin;
  throw ParseError("--family", "unknown family '" + std::string(name) + "' (expected spin_angles or qubit_spin)");
}

const char* to_string(SweepFamily f) noexcept {
  return f == SweepFamily::spin_angles ? "spin_angles" : "qubit_spin";
}

namespace {

constexpr double kSweepA = 0.0;
constexpr double kSweepAPrime = std::numbers::pi / 2;

}  // namespace

BellScenario sweep_scenario(SweepFamily family, double b) {
  auto spin = [](double theta) { return DichotomicObservable::from_spin_direction(theta, 0.0); };
  const double b_prime = b + std::numbers::pi / 2;
  if (family == SweepFamily::spin_angles) {
    return BellScenario(singlet_state(), {lift(spin(kSweepA), Site::left, 2).named("A"),
                                          lift(spin(kSweepAPrime), Site::left, 2).named("A_prime"),
                                          lift(spin(b), Site::right, 2).named("B"),
                                          lift(spin(b_prime), Site::right, 2).named("B_prime")});
  }
  return BellScenario(QuantumState::basis(2, 0), {spin(kSweepA).named("A"), spin(kSweepAPrime).named("A_prime"),
                                                  spin(b).named("B"), spin(b_prime).named("B_prime")});
}

std::vector<SweepRow> sweep(SweepFamily family, const Grid& grid, double classification_tol) {
  std::vector<SweepRow> rows;
  for (double b : grid.points()) {
    const auto report = chsh_value(sweep_scenario(family, b), classification_tol);
    rows.push_back({kSweepA, kSweepAPrime, b, b + std::numbers::pi / 2, report.correlations, report.chsh_value,
                    report.marginal_report.max_abs_deviation, report.classification});
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "a,a_prime,b,b_prime,E_AB,E_AB_prime,E_A_prime_B_prime,E_A_prime_B,chsh,max_marginal_deviation,"
        "classification\n";
  for (const auto& r : rows) {
    os << format_double(r.a) << ',' << format_double(r.a_prime) << ',' << format_double(r.b) << ','
       << format_double(r.b_prime);
    for (double e : r.correlations) os << ',' << format_double(e);
    os << ',' << format_double(r.chsh) << ',' << format_double(r.max_marginal_deviation) << ','
       << to_string(r.classification) << '\n';
  }
}

json sweep_json(SweepFamily family, const Grid& grid, const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json correlations = json::object();
    for (std::size_t k = 0; k < 4; ++k) correlations[kPairNames[k]] = r.correlations[k];
    out.push_back({{"a", r.a},
                   {"a_prime", r.a_prime},
                   {"b", r.b},
                   {"b_prime", r.b_prime},
                   {"correlations", std::move(correlations)},
                   {"chsh", r.chsh},
                   {"max_marginal_deviation", r.max_marginal_deviation},
                   {"classification", to_string(r.classification)}});
  }
  return {{"family", to_string(family)},
          {"grid", {{"start", grid.start}, {"stop", grid.stop}, {"steps", grid.steps}}},
          {"rows", std::move(out)}};
}

void write_analysis_csv(std::ostream& os, const CHSHReport& report) {
  os << "E_AB,E_AB_prime,E_A_prime_B_prime,E_A_prime_B,chsh,chsh_via_operator,max_marginal_deviation,"
        "classification\n";
  for (std::size_t k = 0; k < 4; ++k) os << (k ? "," : "") << format_double(report.correlations[k]);
  os << ',' << format_double(report.chsh_value) << ',' << format_double(report.chsh_via_operator) << ','
     << format_double(report.marginal_report.max_abs_deviation) << ',' << to_string(report.classification) << '\n';
}

}  // namespace chshseq
