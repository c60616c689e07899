#include "chshseq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chshseq/errors.hpp"

namespace chshseq {

namespace {

void require_finite(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) {
    throw NumericalError("matrix contains non-finite entries");
  }
}

std::string shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) { require_finite(m_); }

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = n_rows == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  m_.resize(n_rows, n_cols);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw DimensionError("ragged initializer list");
    }
    Eigen::Index c = 0;
    for (const auto& v : row) m_(r, c++) = v;
    ++r;
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& diag) {
  Eigen::VectorXcd d = Eigen::Map<const Eigen::VectorXcd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
  return ComplexMatrix(Eigen::MatrixXcd(d.asDiagonal()));
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of non-square matrix " + shape(*this));
  return m_.trace();
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ - b.m_));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(Eigen::MatrixXcd(s * a.m_)); }

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return ComplexMatrix(Eigen::MatrixXcd(s * a.m_)); }

ComplexMatrix operator-(const ComplexMatrix& a) { return ComplexMatrix(Eigen::MatrixXcd(-a.m_)); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ " + shape(a) + " * " + shape(b));
  }
  return ComplexMatrix(Eigen::MatrixXcd(a.eigen() * b.eigen()));
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return ComplexMatrix(Eigen::MatrixXcd(a.eigen().adjoint())); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto& x = a.eigen();
  const auto& y = b.eigen();
  Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_part of non-square matrix " + shape(m));
  return ComplexMatrix(Eigen::MatrixXcd(0.5 * (m.eigen() + m.eigen().adjoint())));
}

double frobenius_norm(const ComplexMatrix& m) { return m.eigen().norm(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity of non-square matrix " + shape(m));
  return (m.eigen() - m.eigen().adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return m.is_square() && hermiticity_defect(m) <= tol; }

HermitianEigensystem hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eig of non-square matrix " + shape(m));
  const double defect = hermiticity_defect(m);
  if (defect > kHermiticityTol) {
    std::ostringstream os;
    os << "hermitian_eig: ||M - M^dagger|| = " << defect << " exceeds " << kHermiticityTol;
    throw HermiticityError(os.str());
  }
  // Feed the exactly Hermitian part so the result does not depend on which
  // triangle the solver reads.
  const Eigen::MatrixXcd h = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver failed to converge");
  }
  const auto& values = solver.eigenvalues();
  return HermitianEigensystem{std::vector<double>(values.data(), values.data() + values.size()),
                              ComplexMatrix(solver.eigenvectors())};
}

std::pair<double, ComplexVector> max_eigenpair(const ComplexMatrix& m) {
  auto eig = hermitian_eig(m);
  const auto last = static_cast<Eigen::Index>(eig.eigenvalues.size()) - 1;
  return {eig.eigenvalues.back(), eig.eigenvectors.eigen().col(last)};
}

double operator_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("operator_norm of non-square matrix " + shape(m));
  if (is_hermitian(m)) {
    const auto eig = hermitian_eig(m);
    return std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  }
  const ComplexMatrix gram(Eigen::MatrixXcd(m.eigen().adjoint() * m.eigen()));
  const auto eig = hermitian_eig(hermitian_part(gram));
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

ComplexMatrix unitary_from_generator(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(h);
  const auto& v = eig.eigenvectors.eigen();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    phases(k) = std::polar(1.0, eig.eigenvalues[static_cast<std::size_t>(k)]);
  }
  return ComplexMatrix(Eigen::MatrixXcd(v * phases.asDiagonal() * v.adjoint()));
}

Complex sandwich(const ComplexVector& u, const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != static_cast<std::size_t>(v.size()) || m.rows() != static_cast<std::size_t>(u.size())) {
    throw DimensionError("sandwich: vector and matrix dimensions differ");
  }
  return u.dot(m.eigen() * v);
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

ComplexMatrix pauli_y() {
  const Complex i{0.0, 1.0};
  return ComplexMatrix{{0.0, -i}, {i, 0.0}};
}

ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace chshseq
