#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gwvn/dynamics.hpp"
#include "gwvn/entropy.hpp"
#include "gwvn/montecarlo.hpp"
#include "gwvn/sampler.hpp"
#include "oracles.hpp"

using namespace gwvn;

TEST_CASE("shannon edge cases") {
  for (std::size_t n : {1u, 2u, 10u, 1000u}) {
    CHECK(shannon(ProbabilityVector(std::vector<double>(n, 1.0 / n))) ==
          doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-13));
  }
  std::vector<double> delta(7, 0.0);
  delta[3] = 1.0;
  CHECK(shannon(ProbabilityVector(delta)) == 0.0);
  CHECK(shannon(ProbabilityVector({0.5, 0.5, 0.0, 0.0})) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("invalid distributions are rejected, not renormalized") {
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(ProbabilityVector({}), std::invalid_argument);
  CHECK_NOTHROW(ProbabilityVector({0.5, 0.5 + 5e-11}));
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.5 + 5e-10}), std::invalid_argument);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double direct = -0.1 * std::log(0.1) - 0.9 * std::log(0.9);
  CHECK(binary_entropy(0.1) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(shannon(ProbabilityVector({0.1, 0.9}))).epsilon(1e-14));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.325083).epsilon(1e-6));
  for (double p = 0.0; p <= 1.0; p += 0.03125) CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1.0 - p)));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("gwvn entropy of basis states and self-completed bases") {
  Eigen::VectorXcd e(5);
  e.setZero();
  e(2) = Complex(0.0, 1.0);
  CHECK(gwvn_entropy(StateVector(e)) == 0.0);

  const auto psi = haar_state(16, 3);
  const auto completion = dynamics::CompletedBasis::reflection(psi);
  CHECK(gwvn_entropy(psi, completion.basis()) <= 1e-12);
}

TEST_CASE("gwvn entropy is invariant under a global phase") {
  const auto psi = haar_state(33, 4);
  const StateVector rotated(psi.amplitudes() * std::polar(1.0, 0.7));
  CHECK(gwvn_entropy(rotated) == doctest::Approx(gwvn_entropy(psi)).epsilon(1e-14));
}

TEST_CASE("dimension mismatch is rejected") {
  const BasisRotation basis(Eigen::MatrixXcd::Identity(4, 4));
  CHECK_THROWS_AS(gwvn_entropy(haar_state(5, 1), basis), std::invalid_argument);
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(3, 3);
  not_unitary(0, 1) = 0.1;
  CHECK_THROWS_AS(BasisRotation{not_unitary}, std::invalid_argument);
}

TEST_CASE("entropy bounds and permutation invariance") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const std::size_t dim = 2 + k % 40;
    const auto psi = haar_state(dim, 17, k);
    const double s = gwvn_entropy(psi);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(dim)) + 1e-12);
    CHECK(s == doctest::Approx(oracle::plain_entropy(psi.probabilities())).epsilon(1e-13));

    // Reverse the basis columns.
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < perm.rows(); ++j) perm(j, perm.rows() - 1 - j) = 1.0;
    CHECK(gwvn_entropy(psi, BasisRotation(perm)) == doctest::Approx(s).epsilon(1e-13));

    const BasisRotation random_basis(haar_unitary(dim, 5, k));
    const double sb = gwvn_entropy(psi, random_basis);
    CHECK(sb >= 0.0);
    CHECK(sb <= std::log(static_cast<double>(dim)) + 1e-12);
  }
}

TEST_CASE("only the uniform distribution reaches ln N") {
  Eigen::VectorXcd u = Eigen::VectorXcd::Constant(8, std::sqrt(1.0 / 8.0));
  CHECK(gwvn_entropy(StateVector(u)) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  u(0) *= std::sqrt(1.5);
  u(1) *= std::sqrt(0.5);
  CHECK(gwvn_entropy(StateVector(u)) < std::log(8.0) - 1e-3);
}

TEST_CASE("shannon is additive over product distributions") {
  const std::vector<double> p = {0.2, 0.5, 0.3};
  const std::vector<double> q = {0.1, 0.15, 0.25, 0.5};
  std::vector<double> pq;
  for (double a : p)
    for (double b : q) pq.push_back(a * b);
  CHECK(shannon(ProbabilityVector(pq)) ==
        doctest::Approx(shannon(ProbabilityVector(p)) + shannon(ProbabilityVector(q))).epsilon(1e-14));
}

TEST_CASE("Haar mean entropy at N = 5210") {
  // Oracle: Psi(5211) - Psi(2) = H_5210 - 1.
  const double want = static_cast<double>(oracle::harmonic(5210) - 1.0L);
  CHECK(want == doctest::Approx(8.135).epsilon(1e-3));
  const auto s = mc::entropy_samples({5210, 4000, 12});
  const auto st = oracle::mean_se(s);
  CHECK(std::abs(st.mean - want) <= 4.0 * st.se);
}
