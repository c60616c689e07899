#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chshseq/chsh.hpp"
#include "chshseq/observables.hpp"

namespace chshseq {

enum class Constraint { free, product_form, a_equals_a_prime, primes_identity };

const char* to_string(Constraint c) noexcept;
/// Throws ParameterError on unknown names.
Constraint parse_constraint(std::string_view name);

inline constexpr std::size_t kDefaultMaxDim = 8;

/// What the optimizer searches over. Each free observable is parametrized by
/// a Hermitian generator of n^2 reals (n diagonal entries, then real and
/// imaginary parts of the upper triangle, row-major), where n is `dim` or,
/// under product_form, the local factor dimension sqrt(dim).
struct SearchSpace {
  std::size_t dim = 2;
  Constraint constraint = Constraint::free;
  /// A, A', B, B' signatures on the space each generator acts on.
  std::array<Signature, 4> signatures{};

  std::size_t local_dim() const;
  std::size_t free_observables() const;
  std::size_t parameter_count() const;
};

/// Validates dim, constraint and signatures; default signatures are balanced.
SearchSpace make_search_space(std::size_t dim, Constraint constraint,
                              std::optional<std::array<Signature, 4>> signatures = std::nullopt,
                              std::size_t max_dim = kDefaultMaxDim);

/// Hermitian n x n generator from n^2 reals.
ComplexMatrix generator_from_params(std::span<const double> params, std::size_t n);

/// Throws ParameterError when params.size() != parameter_count().
ObservableQuadruple build_observables(std::span<const double> params, const SearchSpace& space);

/// lambda_max of the symmetrized CHSH operator.
double objective(std::span<const double> params, const SearchSpace& space);

struct SearchOptions {
  std::size_t budget = 20000;  // objective evaluations per restart
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  double initial_step = 0.5;
  double shrink = 0.5;
  double step_tol = 1e-6;
  std::size_t threads = 0;
};

struct TracePoint {
  std::size_t evaluation = 0;
  double best_value = 0.0;
};

struct SearchResult {
  double best_value = 0.0;
  std::vector<double> best_parameters;
  BellScenario best_scenario;
  std::size_t best_restart = 0;
  std::size_t restarts = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  /// Running maximum recorded at every improvement, across restarts in index order.
  std::vector<TracePoint> trace;
  /// Final value of each restart.
  std::vector<double> restart_values;
};

/// Compass (coordinate pattern) search on the objective from seeded random
/// starts: try +-step along each coordinate, accept improvements, halve the
/// step after a sweep without one, stop at step_tol or when the budget is
/// spent. Restarts run in parallel on derived seeds; the merge keeps the
/// highest value (lowest restart index on ties), so the result depends only
/// on the options, never on scheduling.
SearchResult search(const SearchSpace& space, const SearchOptions& options);

}  // namespace chshseq
