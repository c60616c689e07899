#include "chshseq/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chshseq/errors.hpp"

namespace chshseq {

namespace {

void require_shared_dim(const ObservableQuadruple& q) {
  const auto d = q.a.dim();
  if (q.a_prime.dim() != d || q.b.dim() != d || q.b_prime.dim() != d) {
    throw DimensionError("observables do not share one dimension");
  }
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) { return x * y - y * x; }

}  // namespace

BellScenario::BellScenario(QuantumState psi, ObservableQuadruple observables)
    : psi_(std::move(psi)), obs_(std::move(observables)) {
  require_shared_dim(obs_);
  if (psi_.dim() != obs_.dim()) {
    std::ostringstream os;
    os << "state dimension " << psi_.dim() << " does not match observable dimension " << obs_.dim();
    throw DimensionError(os.str());
  }
}

const char* to_string(BoundClass c) noexcept {
  switch (c) {
    case BoundClass::within_classical:
      return "within_classical";
    case BoundClass::within_tsirelson:
      return "within_tsirelson";
    case BoundClass::within_sqrt3:
      return "within_sqrt3";
    case BoundClass::beyond_sqrt3:
      return "beyond_sqrt3";
  }
  return "unknown";
}

BoundClass classify_bound(double value, double tol) {
  const double v = std::abs(value);
  if (v <= 2.0 + tol) return BoundClass::within_classical;
  if (v <= 2.0 * std::sqrt(2.0) + tol) return BoundClass::within_tsirelson;
  if (v <= 2.0 * std::sqrt(3.0) + tol) return BoundClass::within_sqrt3;
  return BoundClass::beyond_sqrt3;
}

double correlation(const QuantumState& psi, const DichotomicObservable& a, const DichotomicObservable& b) {
  const auto dist = mixed_joint_distribution(psi, a, b);
  double e = 0.0;
  for (Outcome i : kOutcomes) {
    for (Outcome j : kOutcomes) e += sign_of(i) * sign_of(j) * dist.at(i, j);
  }
  return e;
}

ComplexMatrix symmetrized_product(const DichotomicObservable& a, const DichotomicObservable& b) {
  if (a.dim() != b.dim()) throw DimensionError("symmetrized_product: dimension mismatch");
  return hermitian_part(a.op() * b.op());
}

ComplexMatrix chsh_product_operator(const ObservableQuadruple& q) {
  require_shared_dim(q);
  const auto &a = q.a.op(), &ap = q.a_prime.op(), &b = q.b.op(), &bp = q.b_prime.op();
  return a * b - a * bp + ap * bp + ap * b;
}

ComplexMatrix chsh_operator(const ObservableQuadruple& q) { return hermitian_part(chsh_product_operator(q)); }

MarginalDeviationReport scenario_marginals(const BellScenario& s) {
  MarginalDeviationReport report;
  report.append(marginal_deviation(s.psi(), s.a(), s.b(), s.b_prime(), Side::alice));
  report.append(marginal_deviation(s.psi(), s.a_prime(), s.b(), s.b_prime(), Side::alice));
  report.append(marginal_deviation(s.psi(), s.b(), s.a(), s.a_prime(), Side::bob));
  report.append(marginal_deviation(s.psi(), s.b_prime(), s.a(), s.a_prime(), Side::bob));
  return report;
}

CHSHReport chsh_value(const BellScenario& s, double classification_tol) {
  CHSHReport report;
  const std::array<std::pair<const DichotomicObservable*, const DichotomicObservable*>, 4> pairs{{
      {&s.a(), &s.b()},
      {&s.a(), &s.b_prime()},
      {&s.a_prime(), &s.b_prime()},
      {&s.a_prime(), &s.b()},
  }};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    report.distributions[k] = mixed_joint_distribution(s.psi(), *pairs[k].first, *pairs[k].second);
    double e = 0.0;
    for (Outcome i : kOutcomes) {
      for (Outcome j : kOutcomes) e += sign_of(i) * sign_of(j) * report.distributions[k].at(i, j);
    }
    report.correlations[k] = e;
  }
  const auto& e = report.correlations;
  report.chsh_value = e[0] - e[1] + e[2] + e[3];
  report.chsh_via_operator =
      sandwich(s.psi().amplitudes(), chsh_operator(s.observables()), s.psi().amplitudes()).real();

  if (std::abs(report.chsh_value - report.chsh_via_operator) > kChshRouteTol) {
    std::ostringstream os;
    os.precision(17);
    os << "CHSH routes disagree: probabilities give " << report.chsh_value << ", operator gives "
       << report.chsh_via_operator;
    throw InternalConsistencyError(os.str());
  }
  report.marginal_report = scenario_marginals(s);
  report.classification = classify_bound(report.chsh_value, classification_tol);
  return report;
}

std::pair<double, QuantumState> max_chsh_over_states(const ObservableQuadruple& q) {
  auto [lambda, vec] = max_eigenpair(chsh_operator(q));
  return {lambda, QuantumState::normalized(vec)};
}

const std::array<const char*, 6>& NormDecomposition::term_names(DecompositionVariant v) noexcept {
  static const std::array<const char*, 6> sym{"G1", "G2", "D1", "D2", "D3", "D4"};
  static const std::array<const char*, 6> unsym{"C1", "C2", "Delta1", "Delta2", "Delta3", "Delta4"};
  return v == DecompositionVariant::symmetrized ? sym : unsym;
}

NormDecomposition norm_decomposition(const ObservableQuadruple& q, DecompositionVariant variant) {
  require_shared_dim(q);
  // The four correlation operators in CHSH order: (A,B), (A,B'), (A',B'), (A',B).
  ComplexMatrix ab, abp, apbp, apb, op;
  if (variant == DecompositionVariant::symmetrized) {
    ab = symmetrized_product(q.a, q.b);
    abp = symmetrized_product(q.a, q.b_prime);
    apbp = symmetrized_product(q.a_prime, q.b_prime);
    apb = symmetrized_product(q.a_prime, q.b);
    op = chsh_operator(q);
  } else {
    ab = q.a.op() * q.b.op();
    abp = q.a.op() * q.b_prime.op();
    apbp = q.a_prime.op() * q.b_prime.op();
    apb = q.a_prime.op() * q.b.op();
    op = chsh_product_operator(q);
  }

  NormDecomposition out;
  out.variant = variant;
  out.terms[0] = ab * ab + abp * abp + apbp * apbp + apb * apb;
  out.terms[1] = ab * apbp - abp * apb + apbp * ab - apb * abp;
  out.terms[2] = ab * apb - abp * apbp;
  out.terms[3] = apbp * apb - abp * ab;
  out.terms[4] = apb * ab - apbp * abp;
  out.terms[5] = apb * apbp - ab * abp;
  out.square = op * op;

  ComplexMatrix sum = out.terms[0];
  for (std::size_t k = 1; k < out.terms.size(); ++k) sum = sum + out.terms[k];
  out.residual = operator_norm(out.square - sum);
  for (std::size_t k = 0; k < out.terms.size(); ++k) out.norms[k] = operator_norm(out.terms[k]);
  out.square_norm = operator_norm(out.square);

  if (out.residual > kResidualTol) {
    std::ostringstream os;
    os << "decomposition residual " << out.residual << " exceeds " << kResidualTol;
    throw InternalConsistencyError(os.str());
  }
  if (variant == DecompositionVariant::symmetrized) {
    out.within_term_bounds = out.norms[0] <= 4.0 + kEigTol && out.norms[1] <= 4.0 + kEigTol &&
                             std::all_of(out.norms.begin() + 2, out.norms.end(),
                                         [](double n) { return n <= 1.5 + kEigTol; }) &&
                             out.square_norm <= 12.0 + kEigTol;
  }
  return out;
}

std::array<ComplexMatrix, 4> deltas_commutator_form(const ObservableQuadruple& q) {
  require_shared_dim(q);
  const auto &a = q.a.op(), &ap = q.a_prime.op(), &b = q.b.op(), &bp = q.b_prime.op();
  return {
      a * commutator(b, ap) * b - a * commutator(bp, ap) * bp,
      ap * commutator(bp, ap) * b - a * commutator(bp, a) * b,
      ap * commutator(b, a) * b - ap * commutator(bp, a) * bp,
      ap * commutator(b, ap) * bp - a * commutator(b, a) * bp,
  };
}

}  // namespace chshseq
