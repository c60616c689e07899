#include "chshseq/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chshseq/errors.hpp"
#include "chshseq/montecarlo.hpp"
#include "chshseq/parallel.hpp"

namespace chshseq {

const char* to_string(Constraint c) noexcept {
  switch (c) {
    case Constraint::free:
      return "free";
    case Constraint::product_form:
      return "product_form";
    case Constraint::a_equals_a_prime:
      return "a_equals_a_prime";
    case Constraint::primes_identity:
      return "primes_identity";
  }
  return "unknown";
}

Constraint parse_constraint(std::string_view name) {
  for (auto c : {Constraint::free, Constraint::product_form, Constraint::a_equals_a_prime,
                 Constraint::primes_identity}) {
    if (name == to_string(c)) return c;
  }
  throw ParameterError("unknown constraint '" + std::string(name) +
                       "' (expected free, product_form, a_equals_a_prime or primes_identity)");
}

std::size_t SearchSpace::local_dim() const {
  if (constraint != Constraint::product_form) return dim;
  return static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(dim))));
}

std::size_t SearchSpace::free_observables() const {
  switch (constraint) {
    case Constraint::free:
    case Constraint::product_form:
      return 4;
    case Constraint::a_equals_a_prime:
      return 3;
    case Constraint::primes_identity:
      return 2;
  }
  return 4;
}

std::size_t SearchSpace::parameter_count() const { return free_observables() * local_dim() * local_dim(); }

SearchSpace make_search_space(std::size_t dim, Constraint constraint,
                              std::optional<std::array<Signature, 4>> signatures, std::size_t max_dim) {
  if (dim < 2 || dim > max_dim) {
    std::ostringstream os;
    os << "dimension " << dim << " outside [2, " << max_dim << "]";
    throw ParameterError(os.str());
  }
  SearchSpace space{dim, constraint, {}};
  const auto local = space.local_dim();
  if (constraint == Constraint::product_form && (local * local != dim || local < 2)) {
    throw ParameterError("product_form needs dim = k^2 with k >= 2");
  }
  if (signatures) {
    for (const auto& sig : *signatures) validate_signature(sig, static_cast<int>(local));
    space.signatures = *signatures;
  } else {
    space.signatures.fill(default_signature(static_cast<int>(local)));
  }
  return space;
}

ComplexMatrix generator_from_params(std::span<const double> params, std::size_t n) {
  if (params.size() != n * n) throw ParameterError("generator needs n^2 parameters");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
  std::size_t k = 0;
  for (Eigen::Index d = 0; d < size; ++d) h(d, d) = params[k++];
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = r + 1; c < size; ++c) {
      const Complex v(params[k], params[k + 1]);
      k += 2;
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  return ComplexMatrix(std::move(h));
}

ObservableQuadruple build_observables(std::span<const double> params, const SearchSpace& space) {
  if (params.size() != space.parameter_count()) {
    std::ostringstream os;
    os << "expected " << space.parameter_count() << " parameters, got " << params.size();
    throw ParameterError(os.str());
  }
  const auto n = space.local_dim();
  const auto block = n * n;
  auto make = [&](std::size_t slot, std::size_t sig_index) {
    const auto h = generator_from_params(params.subspan(slot * block, block), n);
    return DichotomicObservable::from_unitary(unitary_from_generator(h), space.signatures[sig_index]);
  };

  switch (space.constraint) {
    case Constraint::free:
      return {make(0, 0).named("A"), make(1, 1).named("A_prime"), make(2, 2).named("B"),
              make(3, 3).named("B_prime")};
    case Constraint::product_form:
      return {lift(make(0, 0), Site::left, n).named("A"), lift(make(1, 1), Site::left, n).named("A_prime"),
              lift(make(2, 2), Site::right, n).named("B"), lift(make(3, 3), Site::right, n).named("B_prime")};
    case Constraint::a_equals_a_prime: {
      auto a = make(0, 0);
      return {a.named("A"), a.named("A_prime"), make(1, 2).named("B"), make(2, 3).named("B_prime")};
    }
    case Constraint::primes_identity:
      return {make(0, 0).named("A"), DichotomicObservable::identity(n).named("A_prime"), make(1, 2).named("B"),
              DichotomicObservable::identity(n).named("B_prime")};
  }
  throw ParameterError("unknown constraint");
}

double objective(std::span<const double> params, const SearchSpace& space) {
  return max_eigenpair(chsh_operator(build_observables(params, space))).first;
}

namespace {

struct RestartOutcome {
  double value = -1e300;
  std::vector<double> params;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<TracePoint> trace;  // evaluation indices local to the restart
};

RestartOutcome pattern_search(const SearchSpace& space, const SearchOptions& opt, std::uint64_t restart) {
  RestartOutcome out;
  StreamRng rng(opt.seed, restart);
  // Starting generators uniform in [-pi, pi) per parameter.
  std::vector<double> x(space.parameter_count());
  for (auto& v : x) v = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;

  auto evaluate = [&](const std::vector<double>& p) {
    ++out.evaluations;
    return objective(p, space);
  };

  double fx = evaluate(x);
  out.trace.push_back({out.evaluations, fx});
  double step = opt.initial_step;

  while (out.evaluations < opt.budget) {
    bool improved = false;
    for (std::size_t k = 0; k < x.size() && out.evaluations < opt.budget; ++k) {
      for (double dir : {+1.0, -1.0}) {
        if (out.evaluations >= opt.budget) break;
        auto trial = x;
        trial[k] += dir * step;
        const double ft = evaluate(trial);
        if (ft > fx) {
          x = std::move(trial);
          fx = ft;
          improved = true;
          out.trace.push_back({out.evaluations, fx});
          break;
        }
      }
    }
    if (!improved) {
      step *= opt.shrink;
      if (step < opt.step_tol) {
        out.converged = true;
        break;
      }
    }
  }
  out.value = fx;
  out.params = std::move(x);
  return out;
}

}  // namespace

SearchResult search(const SearchSpace& space, const SearchOptions& options) {
  if (options.budget < 1) throw ParameterError("search budget must be >= 1");
  if (options.restarts < 1) throw ParameterError("search needs at least one restart");
  if (!(options.shrink > 0.0 && options.shrink < 1.0) || !(options.initial_step > 0.0)) {
    throw ParameterError("search step schedule must shrink a positive step");
  }

  std::vector<RestartOutcome> outcomes(options.restarts);
  parallel_for(options.restarts, resolve_thread_count(options.threads),
               [&](std::size_t r) { outcomes[r] = pattern_search(space, options, r); });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[best].value) best = r;
  }

  auto quad = build_observables(outcomes[best].params, space);
  auto [lambda, state] = max_chsh_over_states(quad);
  SearchResult result{lambda,
                      outcomes[best].params,
                      BellScenario(std::move(state), std::move(quad)),
                      best,
                      options.restarts,
                      0,
                      outcomes[best].converged,
                      {},
                      {}};

  double running = -1e300;
  for (const auto& o : outcomes) {
    for (const auto& point : o.trace) {
      if (point.best_value > running) {
        running = point.best_value;
        result.trace.push_back({result.evaluations + point.evaluation, running});
      }
    }
    result.evaluations += o.evaluations;
    result.restart_values.push_back(o.value);
  }
  return result;
}

}  // namespace chshseq
