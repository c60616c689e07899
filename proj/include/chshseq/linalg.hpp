#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace chshseq {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kEigTol = 1e-9;

/// Dense complex matrix with value semantics. Entries are always finite;
/// nothing mutates a matrix after construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(Eigen::MatrixXcd m);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(const std::vector<Complex>& diag);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }

  Complex trace() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& a);
  friend ComplexMatrix operator-(const ComplexMatrix& a);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXcd m_;
};

struct HermitianEigensystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order as eigenvalues
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Kronecker product; indices of `a` are outer, indices of `b` inner.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Exactly Hermitian part (M + M^dagger)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Frobenius norm. Used for all "within tolerance" predicates since it
/// bounds the operator norm from above.
double frobenius_norm(const ComplexMatrix& m);

double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermiticityTol);

/// Eigendecomposition of a Hermitian matrix. Throws HermiticityError when
/// ||m - m^dagger|| exceeds the tolerance, NumericalError on failed convergence.
HermitianEigensystem hermitian_eig(const ComplexMatrix& m);

/// Largest eigenvalue and its eigenvector of a Hermitian matrix.
std::pair<double, ComplexVector> max_eigenpair(const ComplexMatrix& m);

/// Largest singular value. Hermitian input short-circuits to max |lambda|;
/// otherwise sqrt(lambda_max(M^dagger M)).
double operator_norm(const ComplexMatrix& m);

/// exp(iH) via the eigendecomposition of H.
ComplexMatrix unitary_from_generator(const ComplexMatrix& h);

/// <u|M|v>
Complex sandwich(const ComplexVector& u, const ComplexMatrix& m, const ComplexVector& v);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace chshseq
