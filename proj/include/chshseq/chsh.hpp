#pragma once

#include <array>
#include <string>
#include <utility>

#include "chshseq/linalg.hpp"
#include "chshseq/observables.hpp"
#include "chshseq/sequential.hpp"

namespace chshseq {

inline constexpr double kClassificationTol = 1e-9;
inline constexpr double kChshRouteTol = 1e-8;
inline constexpr double kResidualTol = 1e-8;

/// A state and Alice's (A, A') and Bob's (B, B') observables on one space.
struct ObservableQuadruple {
  DichotomicObservable a;
  DichotomicObservable a_prime;
  DichotomicObservable b;
  DichotomicObservable b_prime;

  std::size_t dim() const noexcept { return a.dim(); }
};

class BellScenario {
 public:
  /// Throws DimensionError unless all five objects share one dimension.
  BellScenario(QuantumState psi, ObservableQuadruple observables);

  const QuantumState& psi() const noexcept { return psi_; }
  const ObservableQuadruple& observables() const noexcept { return obs_; }
  const DichotomicObservable& a() const noexcept { return obs_.a; }
  const DichotomicObservable& a_prime() const noexcept { return obs_.a_prime; }
  const DichotomicObservable& b() const noexcept { return obs_.b; }
  const DichotomicObservable& b_prime() const noexcept { return obs_.b_prime; }
  std::size_t dim() const noexcept { return psi_.dim(); }

 private:
  QuantumState psi_;
  ObservableQuadruple obs_;
};

enum class BoundClass { within_classical, within_tsirelson, within_sqrt3, beyond_sqrt3 };

const char* to_string(BoundClass c) noexcept;

/// |value| against 2, 2 sqrt 2 and 2 sqrt 3; boundary values fall into the tighter class.
BoundClass classify_bound(double value, double tol = kClassificationTol);

struct CHSHReport {
  /// E(A,B), E(A,B'), E(A',B'), E(A',B)
  std::array<double, 4> correlations{};
  std::array<JointDistribution, 4> distributions{};
  double chsh_value = 0.0;
  double chsh_via_operator = 0.0;
  MarginalDeviationReport marginal_report;
  BoundClass classification = BoundClass::within_classical;
};

/// sum_ij i j P(a_i, b_j) over the mixed joint distribution.
double correlation(const QuantumState& psi, const DichotomicObservable& a, const DichotomicObservable& b);

/// (AB + (AB)^dagger)/2 = (AB + BA)/2.
ComplexMatrix symmetrized_product(const DichotomicObservable& a, const DichotomicObservable& b);

/// C = AB - AB' + A'B' + A'B.
ComplexMatrix chsh_product_operator(const ObservableQuadruple& q);

/// (C + C^dagger)/2, exactly Hermitian.
ComplexMatrix chsh_operator(const ObservableQuadruple& q);

/// Alice-side and Bob-side marginal deviations across the four contexts.
MarginalDeviationReport scenario_marginals(const BellScenario& scenario);

/// Evaluates CHSH through the probability route and through <psi|C^|psi>;
/// the two must agree to kChshRouteTol or InternalConsistencyError is thrown.
CHSHReport chsh_value(const BellScenario& scenario, double classification_tol = kClassificationTol);

/// lambda_max(C^) and a maximizing eigenvector.
std::pair<double, QuantumState> max_chsh_over_states(const ObservableQuadruple& q);

enum class DecompositionVariant { symmetrized, unsymmetrized };

/// Square of the CHSH operator split into two "diagonal" groups and four
/// cross terms:
///   symmetrized:    (C^)^2 = G1 + G2 + D1 + D2 + D3 + D4
///   unsymmetrized:  C^2    = C1 + C2 + Delta1 + ... + Delta4
struct NormDecomposition {
  DecompositionVariant variant = DecompositionVariant::symmetrized;
  std::array<ComplexMatrix, 6> terms;  // G1/C1, G2/C2, D1..D4 / Delta1..Delta4
  std::array<double, 6> norms{};
  ComplexMatrix square;
  double square_norm = 0.0;
  double residual = 0.0;
  /// Symmetrized: ||G1||, ||G2|| <= 4, ||Di|| <= 3/2, ||C^2|| <= 12 (within kEigTol).
  /// Always true for the unsymmetrized variant, which carries no such bounds.
  bool within_term_bounds = true;

  static const std::array<const char*, 6>& term_names(DecompositionVariant v) noexcept;
};

/// Throws InternalConsistencyError if the residual exceeds kResidualTol.
NormDecomposition norm_decomposition(const ObservableQuadruple& q, DecompositionVariant variant);

/// Delta1..Delta4 in commutator form, e.g. Delta1 = A[B,A']B - A[B',A']B'.
/// Equal to the product form whenever B^2 = B'^2 = A^2 = A'^2 = I.
std::array<ComplexMatrix, 4> deltas_commutator_form(const ObservableQuadruple& q);

}  // namespace chshseq
