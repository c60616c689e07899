#include <doctest.h>

#include <numbers>

#include "test_helpers.hpp"

using namespace chshseq;
using testing::spin;

namespace {

constexpr double kPi = std::numbers::pi;

void check_dichotomic(const DichotomicObservable& obs) {
  const auto id = ComplexMatrix::identity(obs.dim());
  CHECK(frobenius_norm(obs.op() * obs.op() - id) <= 1e-10);
  CHECK(frobenius_norm(obs.proj_plus() + obs.proj_minus() - id) <= 1e-10);
  CHECK(frobenius_norm(obs.proj_plus() * obs.proj_minus()) <= 1e-10);
  CHECK(frobenius_norm(obs.op() - (obs.proj_plus() - obs.proj_minus())) <= 1e-10);
}

}  // namespace

TEST_CASE("from_matrix") {
  const auto z = DichotomicObservable::from_matrix(pauli_z());
  CHECK(frobenius_norm(z.proj_plus() - ComplexMatrix::diagonal({1.0, 0.0})) <= 1e-15);
  CHECK(frobenius_norm(z.proj_minus() - ComplexMatrix::diagonal({0.0, 1.0})) <= 1e-15);

  const auto x = DichotomicObservable::from_matrix(pauli_x());
  const auto id = ComplexMatrix::identity(2);
  CHECK(frobenius_norm(x.proj_plus() - 0.5 * (id + pauli_x())) <= 1e-15);
  CHECK(frobenius_norm(x.proj_minus() - 0.5 * (id - pauli_x())) <= 1e-15);

  CHECK_THROWS_AS(DichotomicObservable::from_matrix(ComplexMatrix::diagonal({1.0, 0.5})), SpectrumError);
  CHECK_THROWS_AS(DichotomicObservable::from_matrix(ComplexMatrix{{1.0, 1.0}, {0.0, -1.0}}), HermiticityError);

  SUBCASE("trivial spectra need the flag") {
    CHECK_THROWS_AS(DichotomicObservable::from_matrix(ComplexMatrix::identity(2)), SpectrumError);
    const auto trivial = DichotomicObservable::from_matrix(ComplexMatrix::identity(2), true);
    CHECK(frobenius_norm(trivial.proj_minus()) == 0.0);
    check_dichotomic(trivial);
  }

  SUBCASE("eigenvalues within the spectrum band are accepted") {
    const auto nearly = DichotomicObservable::from_matrix(ComplexMatrix::diagonal({1.0 + 5e-9, -1.0}));
    check_dichotomic(nearly);
    CHECK_THROWS_AS(DichotomicObservable::from_matrix(ComplexMatrix::diagonal({1.0 + 5e-8, -1.0})), SpectrumError);
  }

  SUBCASE("round trip reproduces projectors") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto obs = random_dichotomic(s, 2 + s % 3, default_signature(static_cast<int>(2 + s % 3)));
      const auto again = DichotomicObservable::from_matrix(obs.op());
      CHECK(frobenius_norm(again.proj_plus() - obs.proj_plus()) <= 1e-9);
      CHECK(frobenius_norm(again.proj_minus() - obs.proj_minus()) <= 1e-9);
    }
  }
}

TEST_CASE("from_parts validates invariants") {
  const auto id = ComplexMatrix::identity(2);
  const auto p = 0.5 * (id + pauli_x());
  const auto m = 0.5 * (id - pauli_x());
  CHECK_NOTHROW(DichotomicObservable::from_parts(pauli_x(), p, m));
  CHECK_THROWS_AS(DichotomicObservable::from_parts(pauli_z(), p, m), SpectrumError);
  CHECK_THROWS_AS(DichotomicObservable::from_parts(pauli_x(), p, p), SpectrumError);
}

TEST_CASE("from_spin_direction") {
  CHECK(frobenius_norm(spin(0, 0).op() - pauli_z()) <= 1e-15);
  CHECK(frobenius_norm(spin(kPi / 2, 0).op() - pauli_x()) <= 1e-15);
  CHECK(frobenius_norm(spin(kPi / 2, kPi / 2).op() - pauli_y()) <= 1e-15);

  SUBCASE("trace 0, determinant -1 for any direction") {
    std::mt19937_64 engine(9);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int k = 0; k < 200; ++k) {
      const auto obs = spin(angle(engine), angle(engine));
      const auto& m = obs.op().eigen();
      CHECK(std::abs(obs.op().trace()) <= 1e-12);
      CHECK(std::abs(m.determinant() + 1.0) <= 1e-12);
      check_dichotomic(obs);
    }
  }
  SUBCASE("matches the componentwise oracle") {
    for (double theta : {0.3, 1.1, 2.9}) {
      for (double phi : {-0.7, 0.0, 4.0}) {
        CHECK(frobenius_norm(spin(theta, phi).op() - testing::to_matrix(oracle::spin(theta, phi))) <= 1e-15);
      }
    }
  }
}

TEST_CASE("lift") {
  const auto z = DichotomicObservable::from_matrix(pauli_z());
  const auto lz = lift(z, Site::left, 2);
  CHECK(lz.op() == tensor_product(pauli_z(), ComplexMatrix::identity(2)));
  CHECK(lz.proj_plus() == tensor_product(z.proj_plus(), ComplexMatrix::identity(2)));

  const auto lx = lift(DichotomicObservable::from_matrix(pauli_x()), Site::right, 2);
  const auto eig = hermitian_eig(lx.op());
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0));
  CHECK(eig.eigenvalues[3] == doctest::Approx(1.0));

  SUBCASE("opposite sites always commute") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto x = lift(random_dichotomic(2 * s, 2, {1, 1}), Site::left, 2);
      const auto y = lift(random_dichotomic(2 * s + 1, 2, {1, 1}), Site::right, 2);
      CHECK(frobenius_norm(x.op() * y.op() - y.op() * x.op()) <= 1e-14);
      check_dichotomic(x);
      check_dichotomic(y);
      for (double lambda : hermitian_eig(x.op()).eigenvalues) CHECK(std::abs(std::abs(lambda) - 1.0) <= 1e-10);
    }
  }
  SUBCASE("unequal factor dimensions") {
    const auto big = lift(random_dichotomic(5, 3, {2, 1}), Site::right, 2);
    CHECK(big.dim() == 6);
    CHECK(big.op().trace().real() == doctest::Approx(2.0));
  }
}

TEST_CASE("random_dichotomic") {
  for (std::size_t dim : {2, 3, 4, 6}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto sig = default_signature(static_cast<int>(dim));
      const auto obs = random_dichotomic(s, dim, sig);
      check_dichotomic(obs);
      CHECK(std::abs(obs.op().trace().real() - (sig.plus_multiplicity - sig.minus_multiplicity)) <= 1e-10);
    }
  }
  SUBCASE("deterministic in the seed") {
    const auto a = random_dichotomic(42, 4, {1, 3});
    const auto b = random_dichotomic(42, 4, {1, 3});
    CHECK(a.op() == b.op());
    CHECK(a.proj_plus() == b.proj_plus());
    CHECK(!(a.op() == random_dichotomic(43, 4, {1, 3}).op()));
  }
  CHECK(random_dichotomic(1, 4, {1, 3}).op().trace().real() == doctest::Approx(-2.0));
  CHECK_THROWS_AS(random_dichotomic(1, 4, {2, 1}), SignatureError);
  CHECK_THROWS_AS(random_dichotomic(1, 4, {0, 4}), SignatureError);
}

TEST_CASE("default signature") {
  CHECK(default_signature(4) == Signature{2, 2});
  CHECK(default_signature(3) == Signature{2, 1});
  CHECK_THROWS_AS(default_signature(1), SignatureError);
}
