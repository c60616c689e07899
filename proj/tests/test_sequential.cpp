#include <doctest.h>

#include <numbers>

#include "test_helpers.hpp"

using namespace chshseq;
using testing::spin;
using testing::to_oracle;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Outcome P = Outcome::plus;
constexpr Outcome M = Outcome::minus;

const auto kZero = [] { return QuantumState::basis(2, 0); };
const auto kSigmaZ = [] { return DichotomicObservable::from_matrix(pauli_z()).named("Z"); };
const auto kSigmaX = [] { return DichotomicObservable::from_matrix(pauli_x()).named("X"); };

}  // namespace

TEST_CASE("QuantumState") {
  CHECK_THROWS_AS(QuantumState(ComplexVector::Ones(2)), NormalizationError);
  CHECK_THROWS_AS(QuantumState::normalized(ComplexVector::Zero(3)), NormalizationError);
  CHECK(QuantumState::normalized(ComplexVector::Ones(4)).amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("singlet_state") {
  const auto s = singlet_state();
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
  const auto z = kSigmaZ();
  const auto zp = tensor_product(z.proj_plus(), z.proj_plus());
  const auto zpm = tensor_product(z.proj_plus(), z.proj_minus());
  CHECK(born_probability(s, zp) == 0.0);
  // (|+-> - |-+>)/sqrt2 expanded: only |+-> contributes, |1/sqrt2|^2
  CHECK(born_probability(s, zpm) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("born_probability") {
  CHECK(born_probability(kZero(), kSigmaZ().proj_plus()) == 1.0);
  CHECK(born_probability(kZero(), kSigmaX().proj_plus()) == doctest::Approx(0.5).epsilon(1e-15));

  SUBCASE("singlet marginal is 1/2 along every direction") {
    for (double theta : {0.0, 0.4, 1.3, 2.2, kPi}) {
      for (double phi : {0.0, 1.0, 5.0}) {
        const auto a = lift(spin(theta, phi), Site::left, 2);
        const auto expected = oracle::inner(oracle::singlet(),
                                            oracle::matvec(to_oracle(a.proj_plus()), oracle::singlet()))
                                  .real();
        CHECK(std::abs(expected - 0.5) <= 1e-15);
        CHECK(std::abs(born_probability(singlet_state(), a.proj_plus()) - 0.5) <= 1e-15);
      }
    }
  }
  CHECK_THROWS_AS(born_probability(kZero(), pauli_x()), ProjectorError);
  CHECK_THROWS_AS(born_probability(singlet_state(), kSigmaZ().proj_plus()), DimensionError);
  CHECK_THROWS_AS(born_probability(singlet_state(), kSigmaZ(), P), DimensionError);
}

TEST_CASE("collapse") {
  const auto z = kSigmaZ();
  CHECK(collapse(kZero(), z, P).amplitudes() == kZero().amplitudes());
  const auto plus = QuantumState::normalized(ComplexVector::Ones(2));
  CHECK((collapse(plus, z, P).amplitudes() - kZero().amplitudes()).norm() <= 1e-15);
  CHECK_THROWS_AS(collapse(kZero(), z, M), ZeroProbabilityCollapse);
  CHECK_THROWS_AS(collapse(kZero(), z.proj_minus()), ZeroProbabilityCollapse);
}

TEST_CASE("sequential_probability") {
  // <0| P_z+ P_x+ P_z+ |0> = 1/2 by hand; the oracle measures and collapses explicitly.
  const double by_hand = oracle::measure_then_measure({1.0, 0.0}, oracle::projector(oracle::sz(), 1),
                                                      oracle::projector(oracle::sx(), 1));
  CHECK(by_hand == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sequential_probability(kZero(), kSigmaZ(), P, kSigmaX(), P) == doctest::Approx(0.5).epsilon(1e-15));

  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t dim = s % 2 ? 4 : 2;
    const auto psi = testing::random_state(s, dim);
    const auto q = testing::random_quadruple(s, dim);
    CHECK(sequential_probability(psi, q.a, P, q.a, M) <= 1e-15);
    CHECK(sequential_probability(psi, q.a, M, q.a, P) <= 1e-15);
    double total = 0.0;
    for (Outcome i : kOutcomes) {
      for (Outcome j : kOutcomes) {
        const double seq = sequential_probability(psi, q.a, i, q.b, j);
        total += seq;
        // Born x conditional, with an explicit collapse in between
        const auto cond = conditional_probability(psi, q.a, i, q.b, j);
        REQUIRE(cond.has_value());
        CHECK(std::abs(seq - born_probability(psi, q.a, i) * *cond) <= 1e-12);
        const double ref = oracle::measure_then_measure(to_oracle(psi), to_oracle(q.a.projector(i)),
                                                        to_oracle(q.b.projector(j)));
        CHECK(std::abs(seq - ref) <= 1e-12);
      }
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(sequential_probability(singlet_state(), kSigmaZ(), P, kSigmaX(), P), DimensionError);
}

TEST_CASE("conditional probability is undefined on impossible outcomes") {
  CHECK_FALSE(conditional_probability(kZero(), kSigmaZ(), M, kSigmaX(), P).has_value());
  const auto cond = conditional_probability(kZero(), kSigmaZ(), P, kSigmaX(), P);
  REQUIRE(cond.has_value());
  CHECK(*cond == doctest::Approx(0.5));
}

TEST_CASE("mixed_joint_distribution") {
  SUBCASE("qubit |0>, sigma_z then/or sigma_x") {
    const auto ref = oracle::mixed_distribution({1.0, 0.0}, oracle::sz(), oracle::sx());
    const std::array<double, 4> exact{3.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8};
    const auto dist = mixed_joint_distribution(kZero(), kSigmaZ(), kSigmaX());
    for (std::size_t c = 0; c < 4; ++c) {
      CHECK(std::abs(ref[c] - exact[c]) <= 1e-15);
      CHECK(std::abs(dist.probs[c] - exact[c]) <= 1e-15);
    }
    CHECK(dist.labels == std::pair<std::string, std::string>{"Z", "X"});
  }
  SUBCASE("commuting lifts reduce to tensor coincidences") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto a = random_dichotomic(2 * s, 2, {1, 1});
      const auto b = random_dichotomic(2 * s + 1, 2, {1, 1});
      const auto psi = testing::random_state(s, 4);
      const auto dist = mixed_joint_distribution(psi, lift(a, Site::left, 2), lift(b, Site::right, 2));
      const auto order_ab = sequential_probability(psi, lift(a, Site::left, 2), P, lift(b, Site::right, 2), M);
      const auto order_ba = sequential_probability(psi, lift(b, Site::right, 2), M, lift(a, Site::left, 2), P);
      CHECK(std::abs(order_ab - order_ba) <= 1e-12);
      for (Outcome i : kOutcomes) {
        for (Outcome j : kOutcomes) {
          const double coincidence = born_probability(psi, tensor_product(a.projector(i), b.projector(j)));
          CHECK(std::abs(dist.at(i, j) - coincidence) <= 1e-12);
        }
      }
    }
  }
  SUBCASE("a = b is perfectly repeatable") {
    const auto psi = testing::random_state(3, 4);
    const auto a = random_dichotomic(3, 4, {2, 2});
    const auto dist = mixed_joint_distribution(psi, a, a);
    CHECK(dist.at(P, M) <= 1e-15);
    CHECK(dist.at(M, P) <= 1e-15);
  }
  SUBCASE("normalization, order symmetry and oracle agreement") {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const std::size_t dim = 2 + s % 3;
      const auto psi = testing::random_state(s, dim);
      const auto sig = default_signature(static_cast<int>(dim));
      const auto a = random_dichotomic(2 * s, dim, sig);
      const auto b = random_dichotomic(2 * s + 1, dim, sig);
      const auto ab = mixed_joint_distribution(psi, a, b);
      const auto ba = mixed_joint_distribution(psi, b, a);
      CHECK(std::abs(ab.total() - 1.0) <= 1e-10);
      const auto ref = oracle::mixed_distribution(to_oracle(psi), to_oracle(a.op()), to_oracle(b.op()));
      for (Outcome i : kOutcomes) {
        for (Outcome j : kOutcomes) {
          CHECK(std::abs(ab.at(i, j) - ba.at(j, i)) <= 1e-14);
          CHECK(std::abs(ab.at(i, j) - ref[JointDistribution::index(i, j)]) <= 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(mixed_joint_distribution(singlet_state(), kSigmaZ(), kSigmaX()), DimensionError);
}

TEST_CASE("marginal_deviation") {
  SUBCASE("order effect on a single qubit") {
    // Brute force: marginal of Z=+ is 3/8 + 3/8 in context X and 1 + 0 in context Z.
    const auto in_x = oracle::mixed_distribution({1.0, 0.0}, oracle::sz(), oracle::sx());
    const auto in_z = oracle::mixed_distribution({1.0, 0.0}, oracle::sz(), oracle::sz());
    const double expected = (in_x[0] + in_x[1]) - (in_z[0] + in_z[1]);
    CHECK(std::abs(expected + 0.25) <= 1e-15);

    const auto entries = marginal_deviation(kZero(), kSigmaZ(), kSigmaX(), kSigmaZ().named("Z2"), Side::alice);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].outcome == P);
    CHECK(std::abs(entries[0].deviation + 0.25) <= 1e-12);
    CHECK(std::abs(entries[1].deviation - 0.25) <= 1e-12);
    CHECK(entries[0].fixed == "Z");
    CHECK(entries[0].context2 == "Z2");
  }
  SUBCASE("identical contexts") {
    const auto psi = testing::random_state(8, 3);
    const auto a = random_dichotomic(1, 3, {2, 1});
    const auto b = random_dichotomic(2, 3, {1, 2});
    for (const auto& e : marginal_deviation(psi, a, b, b, Side::bob)) CHECK(e.deviation == 0.0);
  }
  SUBCASE("product-form observables obey the marginal laws for every state") {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto q = testing::random_product_quadruple(s);
      const auto psi = testing::random_state(1000 + s, 4);
      for (const auto& e : marginal_deviation(psi, q.a, q.b, q.b_prime, Side::alice)) {
        CHECK(std::abs(e.deviation) <= 1e-12);
      }
      for (const auto& e : marginal_deviation(psi, q.b, q.a, q.a_prime, Side::bob)) {
        CHECK(std::abs(e.deviation) <= 1e-12);
      }
    }
  }
  SUBCASE("bob side sums over the first outcome") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto q = testing::random_quadruple(s, 2);
      const auto psi = testing::random_state(s, 2);
      const auto entries = marginal_deviation(psi, q.b, q.a, q.a_prime, Side::bob);
      const auto d1 = oracle::mixed_distribution(to_oracle(psi), to_oracle(q.a.op()), to_oracle(q.b.op()));
      const auto d2 = oracle::mixed_distribution(to_oracle(psi), to_oracle(q.a_prime.op()), to_oracle(q.b.op()));
      CHECK(std::abs(entries[0].deviation - ((d1[0] + d1[2]) - (d2[0] + d2[2]))) <= 1e-12);
      CHECK(std::abs(entries[1].deviation - ((d1[1] + d1[3]) - (d2[1] + d2[3]))) <= 1e-12);
    }
  }
}
