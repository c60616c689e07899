#pragma once

#include <cstdint>
#include <string>

#include "chshseq/linalg.hpp"

namespace chshseq {

inline constexpr double kSpectrumTol = 1e-8;
inline constexpr double kObservableTol = 1e-10;

enum class Outcome { plus, minus };

constexpr int sign_of(Outcome o) noexcept { return o == Outcome::plus ? 1 : -1; }
constexpr const char* to_string(Outcome o) noexcept { return o == Outcome::plus ? "+" : "-"; }
inline constexpr Outcome kOutcomes[] = {Outcome::plus, Outcome::minus};

/// Multiplicities of the +1 and -1 eigenvalues.
struct Signature {
  int plus_multiplicity = 1;
  int minus_multiplicity = 1;

  int dim() const noexcept { return plus_multiplicity + minus_multiplicity; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Balanced (dim/2, dim/2) for even dim; odd dims put the extra +1 first.
Signature default_signature(int dim);

/// Throws SignatureError unless both multiplicities are >= 1 and sum to dim.
void validate_signature(const Signature& sig, int dim);

enum class Site { left, right };

/// A self-adjoint operator with spectrum in {+1, -1} together with its two
/// spectral projectors. Every constructor checks
///   A = P+ - P-,  P+ + P- = I,  P^2 = P = P^dagger,  P+ P- = 0
/// to within kObservableTol.
class DichotomicObservable {
 public:
  /// Spectral projectors are assembled from the eigenvectors, grouped by sign.
  /// Both signs must be present unless `allow_trivial` is set.
  static DichotomicObservable from_matrix(const ComplexMatrix& m, bool allow_trivial = false);

  /// sigma . n with n = (sin t cos p, sin t sin p, cos t).
  static DichotomicObservable from_spin_direction(double theta, double phi);

  /// Operator plus explicitly supplied projectors (no eigendecomposition).
  static DichotomicObservable from_parts(ComplexMatrix op, ComplexMatrix proj_plus, ComplexMatrix proj_minus);

  /// U diag(+1...,-1...) U^dagger with projectors conjugated by the same U.
  static DichotomicObservable from_unitary(const ComplexMatrix& u, const Signature& sig);

  /// The trivial measurement: always +1.
  static DichotomicObservable identity(std::size_t dim);

  const ComplexMatrix& op() const noexcept { return op_; }
  const ComplexMatrix& proj_plus() const noexcept { return proj_plus_; }
  const ComplexMatrix& proj_minus() const noexcept { return proj_minus_; }
  const ComplexMatrix& projector(Outcome o) const noexcept { return o == Outcome::plus ? proj_plus_ : proj_minus_; }
  std::size_t dim() const noexcept { return op_.rows(); }

  const std::string& name() const noexcept { return name_; }
  DichotomicObservable named(std::string name) const;

 private:
  DichotomicObservable(ComplexMatrix op, ComplexMatrix plus, ComplexMatrix minus);

  ComplexMatrix op_;
  ComplexMatrix proj_plus_;
  ComplexMatrix proj_minus_;
  std::string name_;
};

/// left: obs (x) I_other, right: I_other (x) obs. Projectors lifted the same way.
DichotomicObservable lift(const DichotomicObservable& obs, Site site, std::size_t other_dim);

/// N(0,1) real and imaginary parts, symmetrized to (G + G^dagger)/2.
ComplexMatrix random_hermitian(std::uint64_t seed, std::size_t dim);

/// U D U^dagger with U = exp(iH) for a seeded random Hermitian H.
/// Deterministic in (seed, dim, sig).
DichotomicObservable random_dichotomic(std::uint64_t seed, std::size_t dim, const Signature& sig);

}  // namespace chshseq
