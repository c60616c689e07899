#include "chshseq/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chshseq/errors.hpp"

namespace chshseq {

namespace {

void require_dim(const QuantumState& psi, std::size_t dim, const char* what) {
  if (psi.dim() != dim) {
    std::ostringstream os;
    os << what << ": state dimension " << psi.dim() << " does not match operator dimension " << dim;
    throw DimensionError(os.str());
  }
}

double clamp_probability(double p) {
  if (p < -kClampTol || p > 1.0 + kClampTol) {
    std::ostringstream os;
    os.precision(17);
    os << "Born value " << p << " outside [0, 1]; projector is broken upstream";
    throw NumericalError(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

double expectation(const QuantumState& psi, const ComplexMatrix& m) {
  return sandwich(psi.amplitudes(), m, psi.amplitudes()).real();
}

// <psi| P Q P |psi> without forming the triple product.
double triple(const QuantumState& psi, const ComplexMatrix& p, const ComplexMatrix& q) {
  const ComplexVector v = p.eigen() * psi.amplitudes();
  return v.dot(q.eigen() * v).real();
}

}  // namespace

QuantumState::QuantumState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("state must have positive dimension");
  if (!amps_.allFinite()) throw NumericalError("state contains non-finite amplitudes");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not normalized: ||psi|| = " << norm;
    throw NormalizationError(os.str());
  }
}

QuantumState QuantumState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NormalizationError("cannot normalize a zero or non-finite vector");
  return QuantumState(v / norm);
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(std::move(v));
}

QuantumState singlet_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return QuantumState(std::move(v));
}

double born_probability(const QuantumState& psi, const ComplexMatrix& projector) {
  if (!projector.is_square()) throw DimensionError("projector must be square");
  require_dim(psi, projector.rows(), "born_probability");
  if (hermiticity_defect(projector) > kHermiticityTol ||
      frobenius_norm(projector * projector - projector) > kHermiticityTol) {
    throw ProjectorError("born_probability: matrix is not a Hermitian idempotent");
  }
  return clamp_probability(expectation(psi, projector));
}

double born_probability(const QuantumState& psi, const DichotomicObservable& obs, Outcome outcome) {
  require_dim(psi, obs.dim(), "born_probability");
  return clamp_probability(expectation(psi, obs.projector(outcome)));
}

namespace {

QuantumState collapse_unchecked(const QuantumState& psi, const ComplexMatrix& projector, double probability) {
  if (probability < kCollapseFloor) {
    std::ostringstream os;
    os << "collapse onto an outcome with probability " << probability << " < " << kCollapseFloor;
    throw ZeroProbabilityCollapse(os.str());
  }
  ComplexVector v = projector.eigen() * psi.amplitudes();
  // Rescale by the computed norm rather than sqrt(p) so the result is unit
  // length to rounding; the two agree to O(eps).
  return QuantumState(v / v.norm());
}

}  // namespace

QuantumState collapse(const QuantumState& psi, const ComplexMatrix& projector) {
  return collapse_unchecked(psi, projector, born_probability(psi, projector));
}

QuantumState collapse(const QuantumState& psi, const DichotomicObservable& obs, Outcome outcome) {
  return collapse_unchecked(psi, obs.projector(outcome), born_probability(psi, obs, outcome));
}

double sequential_probability(const QuantumState& psi, const DichotomicObservable& first, Outcome i,
                              const DichotomicObservable& second, Outcome j) {
  require_dim(psi, first.dim(), "sequential_probability");
  require_dim(psi, second.dim(), "sequential_probability");
  return clamp_probability(triple(psi, first.projector(i), second.projector(j)));
}

std::optional<double> conditional_probability(const QuantumState& psi, const DichotomicObservable& first, Outcome i,
                                              const DichotomicObservable& second, Outcome j) {
  const double p_first = born_probability(psi, first, i);
  if (p_first < kCollapseFloor) return std::nullopt;
  return born_probability(collapse(psi, first, i), second, j);
}

JointDistribution mixed_joint_distribution(const QuantumState& psi, const DichotomicObservable& a,
                                           const DichotomicObservable& b) {
  require_dim(psi, a.dim(), "mixed_joint_distribution");
  require_dim(psi, b.dim(), "mixed_joint_distribution");
  JointDistribution dist;
  dist.labels = {a.name(), b.name()};
  for (Outcome i : kOutcomes) {
    for (Outcome j : kOutcomes) {
      const double ab = triple(psi, a.projector(i), b.projector(j));
      const double ba = triple(psi, b.projector(j), a.projector(i));
      dist.probs[JointDistribution::index(i, j)] = clamp_probability(0.5 * (ab + ba));
    }
  }
  return dist;
}

void MarginalDeviationReport::append(const std::vector<MarginalDeviationEntry>& more) {
  for (const auto& e : more) {
    entries.push_back(e);
    max_abs_deviation = std::max(max_abs_deviation, std::abs(e.deviation));
  }
}

std::vector<MarginalDeviationEntry> marginal_deviation(const QuantumState& psi, const DichotomicObservable& fixed,
                                                       const DichotomicObservable& ctx1,
                                                       const DichotomicObservable& ctx2, Side side) {
  auto marginal = [&](const DichotomicObservable& ctx, Outcome i) {
    double sum = 0.0;
    if (side == Side::alice) {
      const auto dist = mixed_joint_distribution(psi, fixed, ctx);
      for (Outcome j : kOutcomes) sum += dist.at(i, j);
    } else {
      const auto dist = mixed_joint_distribution(psi, ctx, fixed);
      for (Outcome j : kOutcomes) sum += dist.at(j, i);
    }
    return sum;
  };
  auto closed_form = [&](const DichotomicObservable& ctx, Outcome i) {
    double sum = 0.0;
    for (Outcome j : kOutcomes) sum += triple(psi, ctx.projector(j), fixed.projector(i));
    return 0.5 * sum;
  };

  std::vector<MarginalDeviationEntry> out;
  for (Outcome i : kOutcomes) {
    const double via_distribution = marginal(ctx1, i) - marginal(ctx2, i);
    const double via_closed_form = closed_form(ctx1, i) - closed_form(ctx2, i);
    if (std::abs(via_distribution - via_closed_form) > kRouteAgreementTol) {
      std::ostringstream os;
      os.precision(17);
      os << "marginal deviation routes disagree: " << via_distribution << " vs " << via_closed_form;
      throw InternalConsistencyError(os.str());
    }
    out.push_back({side, i, fixed.name(), ctx1.name(), ctx2.name(), via_distribution});
  }
  return out;
}

}  // namespace chshseq
