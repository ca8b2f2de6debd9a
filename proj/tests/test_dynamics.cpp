#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gwvn/analytic.hpp"
#include "gwvn/dynamics.hpp"
#include "gwvn/sampler.hpp"
#include "oracles.hpp"

using namespace gwvn;
using namespace gwvn::dynamics;

namespace {

StateVector basis_state(std::size_t dim, std::size_t k) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return StateVector(std::move(e));
}

// Wigner semicircle CDF on [-2, 2].
double semicircle_cdf(double x) {
  x = std::clamp(x, -2.0, 2.0);
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * M_PI) + std::asin(x / 2.0) / M_PI;
}

// sqrt(p) psi0 + sqrt(1 - p) chi with chi a fixed unit vector orthogonal to psi0.
StateVector with_survival(const StateVector& psi0, double p, std::uint64_t seed) {
  Eigen::VectorXcd chi = haar_state(psi0.dim(), seed).amplitudes();
  chi -= psi0.amplitudes().dot(chi) * psi0.amplitudes();
  chi.normalize();
  return StateVector(std::sqrt(p) * psi0.amplitudes() + std::sqrt(1.0 - p) * chi);
}

}  // namespace

TEST_CASE("Hamiltonian validation") {
  CHECK_THROWS_AS(Hamiltonian(Eigen::MatrixXcd(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(Hamiltonian(Eigen::MatrixXcd(0, 0)), std::invalid_argument);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
  h(0, 1) = Complex(0, 1);
  CHECK_THROWS_AS(Hamiltonian{h}, std::invalid_argument);
  h(1, 0) = Complex(0, -1);
  const Hamiltonian ok(h);
  CHECK_FALSE(ok.is_real());
  CHECK_THROWS_AS(goe_hamiltonian(1, 0), std::invalid_argument);
}

TEST_CASE("GOE matrices are symmetric and reproducible") {
  const auto a = goe_hamiltonian(2, 17);
  const auto b = goe_hamiltonian(2, 17);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.is_real());
  CHECK(a.matrix() == a.matrix().transpose());
  CHECK(goe_hamiltonian(2, 18).matrix() != a.matrix());
}

TEST_CASE("GOE spectrum fills the semicircle") {
  const auto h = goe_hamiltonian(500, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix().real(), Eigen::EigenvaluesOnly);
  std::vector<double> u;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) u.push_back(semicircle_cdf(es.eigenvalues()(i)));
  CHECK(oracle::ks_uniform(u) < 0.05);
}

TEST_CASE("GOE entry statistics") {
  // Off-diagonal variance 1/N, diagonal 2/N, zero-mean trace.
  constexpr std::size_t n = 40;
  std::vector<double> off;
  std::vector<double> diag;
  std::vector<double> trace;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Eigen::MatrixXd h = goe_hamiltonian(n, seed).matrix().real();
    off.push_back(h(0, 1) * h(0, 1) * n);
    diag.push_back(h(2, 2) * h(2, 2) * n);
    trace.push_back(h.trace());
  }
  const auto o = oracle::mean_se(off);
  const auto d = oracle::mean_se(diag);
  const auto t = oracle::mean_se(trace);
  CHECK(std::abs(o.mean - 1.0) <= 4.0 * o.se);
  CHECK(std::abs(d.mean - 2.0) <= 4.0 * d.se);
  CHECK(std::abs(t.mean) <= 4.0 * t.se);
}

TEST_CASE("evolution basics") {
  const auto h = goe_hamiltonian(30, 4);
  const Propagator prop(h);
  const auto psi0 = haar_state(30, 9);

  CHECK(prop.evolve(psi0, 0.0).amplitudes() == psi0.amplitudes());
  CHECK(prop.survival(psi0, 0.0) == 1.0);
  for (double t : {0.1, 1.0, 7.3, 100.0}) {
    const auto psi = prop.evolve(psi0, t);
    CHECK(std::abs(psi.amplitudes().norm() - 1.0) <= 1e-10);
    CHECK(prop.survival(psi0, t) == doctest::Approx(std::norm(psi0.amplitudes().dot(psi.amplitudes()))).epsilon(1e-10));
    CHECK(prop.survival(psi0, -t) == doctest::Approx(prop.survival(psi0, t)).epsilon(1e-10));
    const double p = prop.survival(psi0, t);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK_THROWS_AS(prop.evolve(haar_state(31, 1), 1.0), std::invalid_argument);
}

TEST_CASE("evolution matches a direct matrix exponential") {
  const auto h = goe_hamiltonian(8, 2);
  const auto psi0 = haar_state(8, 3);
  const double t = 0.7;
  // Taylor series of exp(-iHt) to high order.
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(8, 8);
  Eigen::MatrixXcd u = term;
  for (int k = 1; k < 60; ++k) {
    term = term * h.matrix() * Complex(0.0, -t / k);
    u += term;
  }
  const Eigen::VectorXcd want = u * psi0.amplitudes();
  CHECK((evolve(h, psi0, t).amplitudes() - want).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("eigenstates are stationary") {
  const auto h = goe_hamiltonian(12, 5);
  const Propagator prop(h);
  const StateVector eig(prop.eigenvectors().col(3));
  const auto basis = CompletedBasis::reflection(eig);
  const auto grid = time_grid(20.0, 11);
  const auto tr = relaxation_trace(prop, eig, basis, grid);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    CHECK(tr.survival[k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr.measured[k] <= 1e-10);
    CHECK(tr.predicted[k] <= 1e-10);
  }
}

TEST_CASE("equally spaced spectrum revives") {
  const auto h = equally_spaced_hamiltonian(16, 0.5);
  const auto psi0 = haar_state(16, 1);
  // Period 2 pi / spacing.
  CHECK(survival(h, psi0, 4.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(survival(h, psi0, 2.0 * M_PI) < 0.99);
}

TEST_CASE("long-time survival averages to the inverse participation ratio") {
  const auto h = goe_hamiltonian(200, 8);
  const Propagator prop(h);
  const auto psi0 = basis_state(200, 0);
  const Eigen::VectorXcd a = prop.eigen_amplitudes(psi0);
  double ipr = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) ipr += std::pow(std::norm(a(j)), 2);

  std::vector<double> p;
  for (int k = 0; k < 4000; ++k) p.push_back(prop.survival(psi0, 1000.0 + 0.37 * k));
  const auto st = oracle::mean_se(p);
  CHECK(ipr > 1.0 / 200.0);
  CHECK(ipr < 10.0 / 200.0);
  CHECK(st.mean == doctest::Approx(ipr).epsilon(0.15));
}

TEST_CASE("predicted_entropy endpoints") {
  CHECK(predicted_entropy(1.0, 128) == 0.0);
  CHECK(predicted_entropy(0.0, 128) == doctest::Approx(analytic::mean_entropy(127)).epsilon(1e-15));
  CHECK(predicted_entropy(0.0, 128) ==
        doctest::Approx(static_cast<double>(oracle::harmonic(127) - 1.0L)).epsilon(1e-13));
  const double half = std::log(2.0) + 0.5 * static_cast<double>(oracle::harmonic(127) - 1.0L);
  CHECK(predicted_entropy(0.5, 128) == doctest::Approx(half).epsilon(1e-13));
  CHECK_THROWS_AS(predicted_entropy(1.5, 10), std::domain_error);
  CHECK_THROWS_AS(predicted_entropy(0.5, 1), std::invalid_argument);
  for (double p = 0.0; p <= 1.0; p += 0.01) CHECK(predicted_entropy(p, 64) <= std::log(64.0));
}

TEST_CASE("completed bases contain psi0") {
  const auto psi0 = haar_state(20, 6);
  for (const auto& b : {CompletedBasis::reflection(psi0), CompletedBasis::haar_random(psi0, 3, 1)}) {
    const auto& u = b.basis().matrix();
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::norm(u.col(0).dot(psi0.amplitudes())) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(measured_entropy(psi0, b) <= 1e-10);
  }
  // First amplitude exactly zero still completes.
  const auto e1 = basis_state(5, 2);
  CHECK(measured_entropy(e1, CompletedBasis::reflection(e1)) <= 1e-12);
}

TEST_CASE("measured entropy ignores column phases") {
  const auto psi0 = haar_state(10, 1);
  const auto state = haar_state(10, 2);
  const auto b = CompletedBasis::haar_random(psi0, 4);
  Eigen::MatrixXcd u = b.basis().matrix();
  for (Eigen::Index j = 0; j < u.cols(); ++j) u.col(j) *= std::polar(1.0, 0.3 * static_cast<double>(j));
  CHECK(gwvn_entropy(state, BasisRotation(u)) == doctest::Approx(measured_entropy(state, b)).epsilon(1e-12));
}

TEST_CASE("basis-averaged entropy equals the predicted law") {
  constexpr std::size_t n = 32;
  const auto psi0 = basis_state(n, 0);
  for (double p : {0.0, 0.5, 0.9}) {
    CAPTURE(p);
    const auto v = with_survival(psi0, p, 77);
    CHECK(std::norm(psi0.amplitudes().dot(v.amplitudes())) == doctest::Approx(p).epsilon(1e-12));
    std::vector<double> s;
    for (std::uint64_t k = 0; k < 2000; ++k) s.push_back(measured_entropy(v, CompletedBasis::haar_random(psi0, 5, k)));
    const auto st = oracle::mean_se(s);
    CHECK(std::abs(st.mean - predicted_entropy(p, n)) <= 4.0 * st.se);
  }
}

TEST_CASE("time grid and trace plumbing") {
  const auto g = time_grid(20.0, 201);
  CHECK(g.size() == 201);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 20.0);
  CHECK(g[100] == doctest::Approx(10.0).epsilon(1e-15));
  CHECK_THROWS_AS(time_grid(1.0, 1), std::invalid_argument);

  const auto h = goe_hamiltonian(16, 1);
  const auto psi0 = basis_state(16, 0);
  const auto basis = CompletedBasis::reflection(psi0);
  const std::vector<double> bad = {0.5, 1.0};
  CHECK_THROWS_AS(relaxation_trace(h, psi0, basis, bad), std::invalid_argument);

  const auto tr = relaxation_trace(h, psi0, basis, g);
  CHECK(tr.survival[0] == 1.0);
  CHECK(tr.measured[0] <= 1e-12);
  CHECK(tr.predicted[0] == 0.0);
  const auto d = tr.deviation();
  CHECK(d[7] == tr.measured[7] - tr.predicted[7]);

  const std::vector<RelaxationTrace> two = {tr, tr};
  const auto m = mean_trace(two);
  CHECK(m.measured == tr.measured);
  CHECK(m.max_abs_deviation() == tr.max_abs_deviation());
}

TEST_CASE("GOE relaxation follows the predicted law") {
  constexpr std::size_t n = 64;
  const auto psi0 = basis_state(n, 0);
  const auto basis = CompletedBasis::reflection(psi0);
  const auto grid = time_grid(20.0, 101);
  std::vector<RelaxationTrace> traces;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    traces.push_back(relaxation_trace(goe_hamiltonian(n, seed), psi0, basis, grid));
  const auto mean = mean_trace(traces);
  CHECK(mean.max_abs_deviation() <= 0.05 * std::log(static_cast<double>(n)));
  // Late times saturate near the complement mean.
  CHECK(mean.measured.back() == doctest::Approx(analytic::mean_entropy(n - 1)).epsilon(0.1));
}
