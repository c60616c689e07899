#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chshseq/linalg.hpp"
#include "chshseq/observables.hpp"

namespace chshseq {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kCollapseFloor = 1e-14;
inline constexpr double kClampTol = 1e-12;
inline constexpr double kRouteAgreementTol = 1e-12;

/// Unit vector in C^dim.
class QuantumState {
 public:
  /// Throws NormalizationError if | ||v|| - 1 | > kNormTol. The amplitudes are
  /// stored exactly as given.
  explicit QuantumState(ComplexVector amplitudes);

  /// Rescales a non-zero vector to unit norm.
  static QuantumState normalized(const ComplexVector& v);
  static QuantumState basis(std::size_t dim, std::size_t index);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  ComplexVector amps_;
};

/// (|+-> - |-+>)/sqrt(2) in C^2 (x) C^2, |+> the first basis vector.
QuantumState singlet_state();

/// <psi|P|psi> for an arbitrary projector; P is checked to be Hermitian and
/// idempotent. Values inside [-kClampTol, 1 + kClampTol] are clamped to [0, 1].
double born_probability(const QuantumState& psi, const ComplexMatrix& projector);

/// Same, using the validated projector of an observable.
double born_probability(const QuantumState& psi, const DichotomicObservable& obs, Outcome outcome);

/// P psi / <psi|P|psi>^(1/2). Throws ZeroProbabilityCollapse below kCollapseFloor.
QuantumState collapse(const QuantumState& psi, const ComplexMatrix& projector);
QuantumState collapse(const QuantumState& psi, const DichotomicObservable& obs, Outcome outcome);

/// <psi| P_first,i  P_second,j  P_first,i |psi>: first measured, then second.
double sequential_probability(const QuantumState& psi, const DichotomicObservable& first, Outcome i,
                              const DichotomicObservable& second, Outcome j);

/// P(second = j | first = i); empty when the conditioning outcome has
/// probability below kCollapseFloor.
std::optional<double> conditional_probability(const QuantumState& psi, const DichotomicObservable& first, Outcome i,
                                              const DichotomicObservable& second, Outcome j);

/// Joint outcome probabilities of a pair of measurements, indexed (i, j).
struct JointDistribution {
  std::array<double, 4> probs{};  // (+,+), (+,-), (-,+), (-,-)
  std::pair<std::string, std::string> labels;

  static constexpr std::size_t index(Outcome i, Outcome j) noexcept {
    return (i == Outcome::plus ? 0 : 2) + (j == Outcome::plus ? 0 : 1);
  }
  double at(Outcome i, Outcome j) const noexcept { return probs[index(i, j)]; }
  double total() const noexcept { return probs[0] + probs[1] + probs[2] + probs[3]; }
};

/// Uniform average of the two measurement orders:
///   P(i, j) = 1/2 [ P(a_i -> b_j) + P(b_j -> a_i) ].
JointDistribution mixed_joint_distribution(const QuantumState& psi, const DichotomicObservable& a,
                                           const DichotomicObservable& b);

enum class Side { alice, bob };
constexpr const char* to_string(Side s) noexcept { return s == Side::alice ? "alice" : "bob"; }

struct MarginalDeviationEntry {
  Side side = Side::alice;
  Outcome outcome = Outcome::plus;
  std::string fixed;
  std::string context1;
  std::string context2;
  double deviation = 0.0;
};

struct MarginalDeviationReport {
  std::vector<MarginalDeviationEntry> entries;
  double max_abs_deviation = 0.0;

  void append(const std::vector<MarginalDeviationEntry>& more);
};

/// Difference of the marginal probabilities of `fixed` between the contexts
/// ctx1 and ctx2, one entry per outcome of `fixed`. For side alice, `fixed`
/// is the first argument of the joint distribution; for bob the second.
/// Computed from the mixed joint distribution and cross-checked against the
/// closed form 1/2 sum_j <P_ctx1,j P_fixed,i P_ctx1,j> - (same for ctx2);
/// disagreement beyond kRouteAgreementTol throws InternalConsistencyError.
std::vector<MarginalDeviationEntry> marginal_deviation(const QuantumState& psi, const DichotomicObservable& fixed,
                                                       const DichotomicObservable& ctx1,
                                                       const DichotomicObservable& ctx2, Side side);

}  // namespace chshseq
