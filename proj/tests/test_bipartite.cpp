#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "gwvn/analytic.hpp"
#include "gwvn/bipartite.hpp"
#include "gwvn/montecarlo.hpp"
#include "gwvn/sampler.hpp"
#include "oracles.hpp"

using namespace gwvn;

namespace {

BipartiteState product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return BipartiteState(u.normalized() * v.normalized().transpose());
}

double max_abs(const Eigen::MatrixXcd& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("BipartiteState validation") {
  CHECK_THROWS_AS(BipartiteState(Eigen::MatrixXcd(0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteState(Eigen::MatrixXcd::Constant(2, 2, 1.0)), std::invalid_argument);
  CHECK_NOTHROW(BipartiteState(Eigen::MatrixXcd::Constant(2, 2, 0.5)));
}

TEST_CASE("product states have rank-one marginals and zero defect") {
  Eigen::VectorXcd u(3);
  u << Complex(1, 2), Complex(0, -1), Complex(0.5, 0);
  Eigen::VectorXcd v(4);
  v << Complex(0.3, 0), Complex(1, 1), Complex(-2, 0), Complex(0, 0.7);
  const auto s = product(u, v);

  for (Side side : {Side::system, Side::environment}) {
    const auto rho = reduce(s, side);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
    CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(rho) <= 1e-10);
  }
  const auto t = entropy_triple(s);
  CHECK(std::abs(t.defect()) <= 1e-12);
}

TEST_CASE("product of uniform marginals is additive") {
  const auto s = product(Eigen::VectorXcd::Constant(4, 1.0), Eigen::VectorXcd::Constant(8, Complex(0, 1)));
  const auto t = entropy_triple(s);
  CHECK(t.system == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(t.environment == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  CHECK(t.total == doctest::Approx(std::log(32.0)).epsilon(1e-14));
}

TEST_CASE("product basis state has zero entropy on both sides") {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 5);
  c(1, 4) = Complex(0, 1);
  const BipartiteState s(c);
  CHECK(subsystem_entropy(s, Side::system) == 0.0);
  CHECK(subsystem_entropy(s, Side::environment) == 0.0);
}

TEST_CASE("maximally entangled pair reduces to I/2") {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 2);
  c(0, 0) = c(1, 1) = 1.0 / std::sqrt(2.0);
  const BipartiteState s(c);
  for (Side side : {Side::system, Side::environment}) {
    const auto rho = reduce(s, side);
    CHECK(max_abs(rho.matrix() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)) <= 1e-15);
    CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(subsystem_entropy(s, side) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("reduce matches an explicit index sum") {
  const auto s = haar_bipartite(3, 5, 21);
  const auto& c = s.coeffs();
  const auto rs = reduce(s, Side::system).matrix();
  const auto re = reduce(s, Side::environment).matrix();
  CHECK(rs.rows() == 3);
  CHECK(re.rows() == 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex want = 0.0;
      for (int a = 0; a < 5; ++a) want += c(i, a) * std::conj(c(j, a));
      CHECK(std::abs(rs(i, j) - want) <= 1e-15);
    }
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      Complex want = 0.0;
      for (int i = 0; i < 3; ++i) want += c(i, a) * std::conj(c(i, b));
      CHECK(std::abs(re(a, b) - want) <= 1e-15);
    }
  CHECK(std::abs(rs.trace() - 1.0) <= 1e-12);
  CHECK(std::abs(re.trace() - 1.0) <= 1e-12);
}

TEST_CASE("marginal weights are the reduced diagonals") {
  const auto s = haar_bipartite(6, 7, 2);
  for (Side side : {Side::system, Side::environment}) {
    const auto w = marginal_weights(s, side);
    const auto rho = reduce(s, side).matrix();
    REQUIRE(w.size() == static_cast<std::size_t>(rho.rows()));
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      CHECK(w[i] == doctest::Approx(rho(k, k).real()).epsilon(1e-13));
    }
    CHECK(subsystem_entropy(s, side) == doctest::Approx(oracle::plain_entropy(w)).epsilon(1e-13));
  }
}

TEST_CASE("ReducedState validation") {
  Eigen::MatrixXcd rho = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  rho(0, 1) = Complex(0, 0.1);
  CHECK_THROWS_AS(ReducedState{rho}, std::invalid_argument);
  CHECK_THROWS_AS(ReducedState{Eigen::MatrixXcd::Identity(2, 2)}, std::invalid_argument);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(von_neumann_entropy(ReducedState(bad)), std::domain_error);
  CHECK(von_neumann_entropy(ReducedState(0.25 * Eigen::MatrixXcd::Identity(4, 4))) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("entropy inequalities on random states") {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 5;
    const std::size_t m = 1 + k % 7;
    const auto s = haar_bipartite(n, m, 13, k);
    const double vs = von_neumann_entropy(reduce(s, Side::system));
    const double ve = von_neumann_entropy(reduce(s, Side::environment));
    CHECK(std::abs(vs - ve) <= 1e-8);
    CHECK(subsystem_entropy(s, Side::system) >= vs - 1e-12);
    CHECK(subsystem_entropy(s, Side::environment) >= ve - 1e-12);
    CHECK(entropy_triple(s).defect() >= -1e-12);
    CHECK(entropy_triple(s).total == doctest::Approx(oracle::plain_entropy(s.flattened().probabilities())));
  }
}

TEST_CASE("Haar (8, 32) subsystem mean") {
  // 2e4 draws here; the full 1e5-draw check is in the acceptance suite.
  const auto s = mc::subsystem_samples({8, 32, 20'000, 3});
  const auto st = oracle::mean_se(s);
  const double want = static_cast<double>(oracle::harmonic(256) - oracle::harmonic(32));
  CHECK(std::abs(st.mean - want) <= 4.0 * st.se);
}

TEST_CASE("Page value: exact series vs Monte Carlo at (4, 16)") {
  const auto v = mc::von_neumann_samples({4, 16, 20'000, 8});
  const auto st = oracle::mean_se(v);
  // sum_{k=m+1}^{nm} 1/k - (n-1)/(2m)
  const double exact = static_cast<double>(oracle::harmonic(64) - oracle::harmonic(16)) - 3.0 / 32.0;
  CHECK(std::abs(st.mean - exact) <= 4.0 * st.se);
}
