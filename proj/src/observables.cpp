#include "chshseq/observables.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "chshseq/errors.hpp"

namespace chshseq {

namespace {

ComplexMatrix spectral_projector(const HermitianEigensystem& eig, bool positive) {
  const auto& v = eig.eigenvectors.eigen();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(v.rows(), v.rows());
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if ((eig.eigenvalues[k] > 0) == positive) {
      const auto col = v.col(static_cast<Eigen::Index>(k));
      p += col * col.adjoint();
    }
  }
  return hermitian_part(ComplexMatrix(std::move(p)));
}

void check_invariants(const ComplexMatrix& op, const ComplexMatrix& plus, const ComplexMatrix& minus) {
  if (!op.is_square() || plus.rows() != op.rows() || plus.cols() != op.cols() || minus.rows() != op.rows() ||
      minus.cols() != op.cols()) {
    throw DimensionError("observable and projectors must be square and of one dimension");
  }
  const auto id = ComplexMatrix::identity(op.rows());
  auto fail = [](const char* what, double value) {
    std::ostringstream os;
    os << "dichotomic invariant violated: " << what << " = " << value;
    throw SpectrumError(os.str());
  };
  if (hermiticity_defect(op) > kObservableTol) throw HermiticityError("observable is not Hermitian");
  for (const auto* p : {&plus, &minus}) {
    if (hermiticity_defect(*p) > kObservableTol) fail("||P - P^dagger||", hermiticity_defect(*p));
    if (const double d = frobenius_norm(*p * *p - *p); d > kObservableTol) fail("||P^2 - P||", d);
  }
  if (const double d = frobenius_norm(op - (plus - minus)); d > kObservableTol) fail("||A - (P+ - P-)||", d);
  if (const double d = frobenius_norm(plus + minus - id); d > kObservableTol) fail("||P+ + P- - I||", d);
  if (const double d = frobenius_norm(plus * minus); d > kObservableTol) fail("||P+ P-||", d);
}

}  // namespace

Signature default_signature(int dim) {
  if (dim < 2) throw SignatureError("dichotomic observables need dim >= 2");
  return Signature{dim - dim / 2, dim / 2};
}

void validate_signature(const Signature& sig, int dim) {
  if (sig.plus_multiplicity < 1 || sig.minus_multiplicity < 1 || sig.dim() != dim) {
    std::ostringstream os;
    os << "signature (" << sig.plus_multiplicity << ", " << sig.minus_multiplicity << ") inconsistent with dim "
       << dim;
    throw SignatureError(os.str());
  }
}

DichotomicObservable::DichotomicObservable(ComplexMatrix op, ComplexMatrix plus, ComplexMatrix minus)
    : op_(std::move(op)), proj_plus_(std::move(plus)), proj_minus_(std::move(minus)) {
  check_invariants(op_, proj_plus_, proj_minus_);
}

DichotomicObservable DichotomicObservable::from_matrix(const ComplexMatrix& m, bool allow_trivial) {
  const auto eig = hermitian_eig(m);
  int n_plus = 0;
  int n_minus = 0;
  for (double lambda : eig.eigenvalues) {
    if (std::abs(lambda - 1.0) <= kSpectrumTol) {
      ++n_plus;
    } else if (std::abs(lambda + 1.0) <= kSpectrumTol) {
      ++n_minus;
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "eigenvalue " << lambda << " is not within " << kSpectrumTol << " of +1 or -1";
      throw SpectrumError(os.str());
    }
  }
  if (!allow_trivial && (n_plus == 0 || n_minus == 0)) {
    throw SpectrumError("observable has a single eigenvalue; pass allow_trivial for a trivial measurement");
  }
  auto plus = spectral_projector(eig, true);
  auto minus = spectral_projector(eig, false);
  // Keep the caller's matrix when it is already P+ - P- to working precision,
  // so explicit matrices survive a serialize/parse cycle unchanged.
  auto cleaned = plus - minus;
  ComplexMatrix op = frobenius_norm(m - cleaned) <= kObservableTol ? m : cleaned;
  return DichotomicObservable(std::move(op), std::move(plus), std::move(minus));
}

DichotomicObservable DichotomicObservable::from_spin_direction(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const Complex i{0.0, 1.0};
  ComplexMatrix op{{nz, nx - i * ny}, {nx + i * ny, -nz}};
  const auto id = ComplexMatrix::identity(2);
  auto plus = 0.5 * (id + op);
  auto minus = 0.5 * (id - op);
  return DichotomicObservable(std::move(op), std::move(plus), std::move(minus));
}

DichotomicObservable DichotomicObservable::from_parts(ComplexMatrix op, ComplexMatrix proj_plus,
                                                      ComplexMatrix proj_minus) {
  return DichotomicObservable(std::move(op), std::move(proj_plus), std::move(proj_minus));
}

DichotomicObservable DichotomicObservable::from_unitary(const ComplexMatrix& u, const Signature& sig) {
  validate_signature(sig, static_cast<int>(u.rows()));
  std::vector<Complex> plus_diag(u.rows(), 0.0);
  std::vector<Complex> minus_diag(u.rows(), 0.0);
  for (int k = 0; k < sig.dim(); ++k) {
    (k < sig.plus_multiplicity ? plus_diag : minus_diag)[static_cast<std::size_t>(k)] = 1.0;
  }
  const auto u_dag = adjoint(u);
  auto plus = hermitian_part(u * ComplexMatrix::diagonal(plus_diag) * u_dag);
  auto minus = hermitian_part(u * ComplexMatrix::diagonal(minus_diag) * u_dag);
  auto op = plus - minus;
  return DichotomicObservable(std::move(op), std::move(plus), std::move(minus));
}

DichotomicObservable DichotomicObservable::identity(std::size_t dim) {
  auto id = ComplexMatrix::identity(dim);
  return DichotomicObservable(id, id, ComplexMatrix::zero(dim, dim));
}

DichotomicObservable DichotomicObservable::named(std::string name) const {
  DichotomicObservable copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

DichotomicObservable lift(const DichotomicObservable& obs, Site site, std::size_t other_dim) {
  const auto id = ComplexMatrix::identity(other_dim);
  auto embed = [&](const ComplexMatrix& m) {
    return site == Site::left ? tensor_product(m, id) : tensor_product(id, m);
  };
  return DichotomicObservable::from_parts(embed(obs.op()), embed(obs.proj_plus()), embed(obs.proj_minus()))
      .named(obs.name());
}

ComplexMatrix random_hermitian(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(r, c) = Complex(re, im);
    }
  }
  return hermitian_part(ComplexMatrix(std::move(g)));
}

DichotomicObservable random_dichotomic(std::uint64_t seed, std::size_t dim, const Signature& sig) {
  validate_signature(sig, static_cast<int>(dim));
  return DichotomicObservable::from_unitary(unitary_from_generator(random_hermitian(seed, dim)), sig);
}

}  // namespace chshseq
