#pragma once

#include <cstdint>
#include <random>

#include "chshseq/chshseq.hpp"
#include "oracles.hpp"

namespace testing {

inline chshseq::ComplexMatrix to_matrix(const oracle::Mat& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n));
  for (std::size_t r = 0; r < m.n; ++r)
    for (std::size_t c = 0; c < m.n; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  return chshseq::ComplexMatrix(std::move(out));
}

inline oracle::Mat to_oracle(const chshseq::ComplexMatrix& m) {
  oracle::Mat out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline oracle::Vec to_oracle(const chshseq::QuantumState& psi) {
  const auto& a = psi.amplitudes();
  return oracle::Vec(a.data(), a.data() + a.size());
}

inline chshseq::QuantumState random_state(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 engine(seed ^ 0x5eedULL);
  std::normal_distribution<double> normal;
  chshseq::ComplexVector v(static_cast<Eigen::Index>(dim));
  for (auto& x : v) x = {normal(engine), normal(engine)};
  return chshseq::QuantumState::normalized(v);
}

inline chshseq::ObservableQuadruple random_quadruple(std::uint64_t seed, std::size_t dim) {
  const auto sig = chshseq::default_signature(static_cast<int>(dim));
  return {chshseq::random_dichotomic(4 * seed + 0, dim, sig).named("A"),
          chshseq::random_dichotomic(4 * seed + 1, dim, sig).named("A_prime"),
          chshseq::random_dichotomic(4 * seed + 2, dim, sig).named("B"),
          chshseq::random_dichotomic(4 * seed + 3, dim, sig).named("B_prime")};
}

/// Product-form quadruple on C^k (x) C^k from random local observables.
inline chshseq::ObservableQuadruple random_product_quadruple(std::uint64_t seed, std::size_t local = 2) {
  using chshseq::Site;
  const auto sig = chshseq::default_signature(static_cast<int>(local));
  auto make = [&](std::uint64_t k, Site site, const char* name) {
    return chshseq::lift(chshseq::random_dichotomic(4 * seed + k, local, sig), site, local).named(name);
  };
  return {make(0, Site::left, "A"), make(1, Site::left, "A_prime"), make(2, Site::right, "B"),
          make(3, Site::right, "B_prime")};
}

inline chshseq::DichotomicObservable spin(double theta, double phi = 0.0) {
  return chshseq::DichotomicObservable::from_spin_direction(theta, phi);
}

}  // namespace testing
