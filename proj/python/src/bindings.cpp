#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chshseq/chshseq.hpp"

namespace py = pybind11;
using namespace chshseq;

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

DichotomicObservable observable(const Matrix& m, const char* name) {
  return DichotomicObservable::from_matrix(ComplexMatrix(m), true).named(name);
}

ObservableQuadruple quadruple(const Matrix& a, const Matrix& a_prime, const Matrix& b, const Matrix& b_prime) {
  return {observable(a, "A"), observable(a_prime, "A_prime"), observable(b, "B"), observable(b_prime, "B_prime")};
}

py::dict cells(const std::array<double, 4>& values) {
  py::dict d;
  for (Outcome i : kOutcomes) {
    for (Outcome j : kOutcomes) {
      d[py::str(std::string(to_string(i)) + to_string(j))] = values[JointDistribution::index(i, j)];
    }
  }
  return d;
}

Side parse_side(const std::string& s) {
  if (s == "alice") return Side::alice;
  if (s == "bob") return Side::bob;
  throw ParameterError("side must be 'alice' or 'bob'");
}

Matrix lifted(const DichotomicObservable& o, const std::optional<std::string>& site, std::size_t other_dim) {
  if (!site) return o.op().eigen();
  if (*site != "left" && *site != "right") throw ParameterError("site must be 'left' or 'right'");
  return lift(o, *site == "left" ? Site::left : Site::right, other_dim).op().eigen();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bell-CHSH analysis of uniformly mixed sequential measurements";
  m.attr("__version__") = kToolVersion;
  py::register_exception<Error>(m, "ChshSeqError", PyExc_ValueError);

  m.def("singlet_state", [] { return Vector(singlet_state().amplitudes()); });

  m.def(
      "spin_observable",
      [](double theta, double phi, std::optional<std::string> site, std::size_t other_dim) {
        return lifted(DichotomicObservable::from_spin_direction(theta, phi), site, other_dim);
      },
      py::arg("theta"), py::arg("phi") = 0.0, py::arg("site") = py::none(), py::arg("other_dim") = 2,
      "sigma . n for polar angle theta and azimuth phi, optionally lifted to one site of a bipartite space.");

  m.def(
      "pauli",
      [](const std::string& axis, std::optional<std::string> site, std::size_t other_dim) {
        ComplexMatrix p;
        if (axis == "x") {
          p = pauli_x();
        } else if (axis == "y") {
          p = pauli_y();
        } else if (axis == "z") {
          p = pauli_z();
        } else {
          throw ParameterError("pauli axis must be x, y or z");
        }
        return lifted(DichotomicObservable::from_matrix(p), site, other_dim);
      },
      py::arg("axis"), py::arg("site") = py::none(), py::arg("other_dim") = 2);

  m.def("identity_observable", [](std::size_t dim) { return Matrix(Matrix::Identity(dim, dim)); }, py::arg("dim"));

  m.def(
      "mixed_joint_distribution",
      [](const Vector& psi, const Matrix& a, const Matrix& b) {
        return cells(mixed_joint_distribution(QuantumState(psi), observable(a, "A"), observable(b, "B")).probs);
      },
      py::arg("psi"), py::arg("a"), py::arg("b"),
      "Joint outcome probabilities with the measurement order drawn uniformly.");

  m.def(
      "marginal_deviation",
      [](const Vector& psi, const Matrix& fixed, const Matrix& ctx1, const Matrix& ctx2, const std::string& side) {
        py::dict out;
        for (const auto& e : marginal_deviation(QuantumState(psi), observable(fixed, "fixed"),
                                                observable(ctx1, "context1"), observable(ctx2, "context2"),
                                                parse_side(side))) {
          out[py::str(to_string(e.outcome))] = e.deviation;
        }
        return out;
      },
      py::arg("psi"), py::arg("fixed"), py::arg("context1"), py::arg("context2"), py::arg("side") = "alice");

  m.def(
      "chsh_value",
      [](const Vector& psi, const Matrix& a, const Matrix& a_prime, const Matrix& b, const Matrix& b_prime) {
        const auto r = chsh_value(BellScenario(QuantumState(psi), quadruple(a, a_prime, b, b_prime)));
        py::dict d;
        d["value"] = r.chsh_value;
        d["value_via_operator"] = r.chsh_via_operator;
        d["correlations"] = r.correlations;
        d["max_marginal_deviation"] = r.marginal_report.max_abs_deviation;
        d["classification"] = to_string(r.classification);
        return d;
      },
      py::arg("psi"), py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));

  m.def(
      "chsh_operator",
      [](const Matrix& a, const Matrix& a_prime, const Matrix& b, const Matrix& b_prime) {
        return chsh_operator(quadruple(a, a_prime, b, b_prime)).eigen();
      },
      py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));

  m.def(
      "max_chsh_over_states",
      [](const Matrix& a, const Matrix& a_prime, const Matrix& b, const Matrix& b_prime) {
        auto [value, state] = max_chsh_over_states(quadruple(a, a_prime, b, b_prime));
        return py::make_tuple(value, Vector(state.amplitudes()));
      },
      py::arg("a"), py::arg("a_prime"), py::arg("b"), py::arg("b_prime"));

  m.def(
      "simulate",
      [](const Vector& psi, const Matrix& a, const Matrix& b, std::uint64_t samples, std::uint64_t seed,
         std::size_t threads) {
        const auto stats = [&] {
          py::gil_scoped_release release;
          return run(samples, seed, QuantumState(psi), observable(a, "A"), observable(b, "B"), threads);
        }();
        py::dict d;
        d["counts"] = cells({static_cast<double>(stats.counts[0]), static_cast<double>(stats.counts[1]),
                             static_cast<double>(stats.counts[2]), static_cast<double>(stats.counts[3])});
        d["frequencies"] = cells(stats.frequencies);
        d["order_ab_fraction"] = stats.order_ab_fraction;
        d["max_abs_error"] = stats.max_abs_error_vs_analytic;
        return d;
      },
      py::arg("psi"), py::arg("a"), py::arg("b"), py::arg("samples"), py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "search",
      [](std::size_t dim, const std::string& constraint, std::size_t budget, std::size_t restarts, std::uint64_t seed,
         std::size_t threads) {
        const auto space = make_search_space(dim, parse_constraint(constraint));
        SearchOptions opt;
        opt.budget = budget;
        opt.restarts = restarts;
        opt.seed = seed;
        opt.threads = threads;
        const auto result = [&] {
          py::gil_scoped_release release;
          return search(space, opt);
        }();
        const auto& q = result.best_scenario.observables();
        py::dict d;
        d["best_value"] = result.best_value;
        d["best_parameters"] = result.best_parameters;
        d["evaluations"] = result.evaluations;
        d["converged"] = result.converged;
        d["restart_values"] = result.restart_values;
        d["state"] = Vector(result.best_scenario.psi().amplitudes());
        d["observables"] = py::dict(py::arg("A") = q.a.op().eigen(), py::arg("A_prime") = q.a_prime.op().eigen(),
                                    py::arg("B") = q.b.op().eigen(), py::arg("B_prime") = q.b_prime.op().eigen());
        return d;
      },
      py::arg("dim") = 4, py::arg("constraint") = "free", py::arg("budget") = SearchOptions{}.budget,
      py::arg("restarts") = SearchOptions{}.restarts, py::arg("seed") = 0, py::arg("threads") = 0,
      "Maximize lambda_max of the CHSH operator over the constrained family.");

  m.def(
      "analyze_scenario_json",
      [](const std::string& text) {
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw ParseError("", e.what());
        }
        const auto file = parse_scenario(doc);
        nlohmann::json out;
        out["scenario"] = scenario_to_json(file.scenario, file.description);
        out["analysis"] = analysis_json(file.scenario);
        return out.dump();
      },
      py::arg("text"));
}
