#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gwvn/entropy.hpp"
#include "gwvn/maxent.hpp"
#include "oracles.hpp"

using namespace gwvn;
using namespace gwvn::maxent;

namespace {

double three_level_mean(double b) {
  return (std::exp(-b) + 2.0 * std::exp(-2.0 * b)) / (1.0 + std::exp(-b) + std::exp(-2.0 * b));
}

double entropy_of(const std::vector<double>& p) { return oracle::plain_entropy(p); }

Spectrum random_spectrum(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> e(k);
  for (auto& x : e) x = u(rng);
  return Spectrum(e);
}

}  // namespace

TEST_CASE("Spectrum validation") {
  CHECK_THROWS_AS(Spectrum({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({0.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
  const Spectrum s({2.0, 0.0, 1.0});
  CHECK(s.min() == 0.0);
  CHECK(s.max() == 2.0);
  CHECK(s.uniform_mean() == 1.0);
}

TEST_CASE("gibbs_probs") {
  const Spectrum two({0.0, 1.0});
  const auto g = gibbs_probs(two, std::log(3.0));
  CHECK(g.probs.values()[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(g.probs.values()[1] == doctest::Approx(0.25).epsilon(1e-15));

  const Spectrum five({-1.0, 0.0, 0.3, 2.0, 7.0});
  const auto flat = gibbs_probs(five, 0.0);
  for (double p : flat.probs.values()) CHECK(p == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(gibbs_probs(five, 1e4).probs.values()[0] == 1.0);
  CHECK(gibbs_probs(five, -1e4).probs.values()[4] == 1.0);
  CHECK_THROWS_AS(gibbs_probs(five, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);

  // Degenerate levels share a weight.
  const Spectrum deg({0.0, 1.0, 1.0, 3.0});
  const auto gd = gibbs_probs(deg, 0.8);
  const auto d = gd.probs.values();
  CHECK(d[1] == d[2]);
}

TEST_CASE("mean energy and entropy are decreasing in beta") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = random_spectrum(rng, 6);
    double prev_e = std::numeric_limits<double>::infinity();
    double prev_s = std::numeric_limits<double>::infinity();
    for (double b = -20.0; b <= 20.0; b += 0.25) {
      const double e = mean_energy(spec, b);
      CHECK(e < prev_e);
      prev_e = e;
      if (b > 0.0) {
        const double s = shannon(gibbs_probs(spec, b).probs);
        CHECK(s < prev_s);
        prev_s = s;
      }
    }
    // Var(E) = -d<E>/d beta
    const double h = 1e-5;
    const double fd = -(mean_energy(spec, 0.7 + h) - mean_energy(spec, 0.7 - h)) / (2 * h);
    CHECK(fd == doctest::Approx(energy_variance(spec, 0.7)).epsilon(1e-7));
  }
}

TEST_CASE("solve_beta closed cases") {
  const Spectrum two({0.0, 1.0});
  CHECK(solve_beta(two, 0.5) == 0.0);
  CHECK(solve_beta(two, 0.25) == doctest::Approx(std::log(3.0)).epsilon(1e-13));
  CHECK(solve_beta(two, 0.75) == doctest::Approx(-std::log(3.0)).epsilon(1e-13));
  CHECK(solve_beta(Spectrum({0.0, 1.0, 2.0}), 1.0) == 0.0);
}

TEST_CASE("solve_beta against a bisection oracle on {0, 1, 2}") {
  const double oracle_beta = oracle::bisect([](double b) { return three_level_mean(b) - 0.8; }, -50.0, 50.0, 1e-12);
  CHECK(oracle_beta == doctest::Approx(0.3046).epsilon(1e-3));
  CHECK(std::abs(solve_beta(Spectrum({0.0, 1.0, 2.0}), 0.8) - oracle_beta) <= 1e-9);
}

TEST_CASE("solve_beta rejects boundary energies, naming the side") {
  const Spectrum s({0.0, 1.0, 2.0});
  for (double e : {0.0, -1.0}) {
    try {
      solve_beta(s, e);
      FAIL("expected EnergyOutOfRange");
    } catch (const EnergyOutOfRange& err) {
      CHECK(err.bound() == EnergyOutOfRange::Bound::below_min);
    }
  }
  try {
    solve_beta(s, 2.0);
    FAIL("expected EnergyOutOfRange");
  } catch (const EnergyOutOfRange& err) {
    CHECK(err.bound() == EnergyOutOfRange::Bound::above_max);
  }
}

TEST_CASE("solve_beta round trip on [-50, 50]") {
  // The inverse map has condition |d beta / dE| = 1 / Var(E); the target
  // itself is only known to one ulp, so the achievable error scales with it.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_spectrum(rng, 2 + trial % 7);
    for (double b = -50.0; b <= 50.0; b += 2.5) {
      const double e = mean_energy(spec, b);
      if (!(e > spec.min() && e < spec.max())) continue;
      const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(e) / energy_variance(spec, b);
      CAPTURE(b);
      CHECK(std::abs(solve_beta(spec, e) - b) <= 1e-9 + floor);
    }
  }
  // Well-conditioned case: the error bound is the plain 1e-9.
  const Spectrum s({0.0, 0.01, 0.03, 0.05});
  for (double b = -50.0; b <= 50.0; b += 5.0) CHECK(std::abs(solve_beta(s, mean_energy(s, b)) - b) <= 1e-9);
}

TEST_CASE("stationarity: K = 2 is degenerate") {
  const Spectrum two({0.0, 1.0});
  const auto r = verify_stationarity(two, gibbs_probs(two, 0.3), 10);
  CHECK(r.degenerate);
  CHECK_FALSE(r.all_decreased());
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("stationarity: uniform point of {0, 1, 2}") {
  const Spectrum s({0.0, 1.0, 2.0});
  const auto g = gibbs_probs(s, solve_beta(s, 1.0));
  const auto r = verify_stationarity(s, g, 100, 1);
  CHECK_FALSE(r.degenerate);
  CHECK(r.decreased == 100);
  CHECK(r.max_first_order <= 1e-8);
}

TEST_CASE("stationarity: random K = 5 spectrum") {
  std::mt19937_64 rng(3);
  const auto spec = random_spectrum(rng, 5);
  const double e = 0.3 * spec.min() + 0.7 * spec.uniform_mean();
  const auto g = gibbs_probs(spec, solve_beta(spec, e));
  const auto r = verify_stationarity(spec, g, 100, 2);
  CHECK(r.all_decreased());
  CHECK(r.max_first_order <= 1e-8);

  // Grid search over the 3-dimensional feasible slice: no point beats Gibbs.
  const auto en = spec.energies();
  const auto pg = g.probs.values();
  const double s_gibbs = entropy_of({pg.begin(), pg.end()});
  // Free coordinates p2, p3, p4; p0 and p1 solve the two constraints.
  const double det = en[1] - en[0];
  double best = -1.0;
  constexpr int steps = 60;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; b <= steps - a; ++b)
      for (int c = 0; c <= steps - a - b; ++c) {
        std::vector<double> p(5);
        p[2] = static_cast<double>(a) / steps;
        p[3] = static_cast<double>(b) / steps;
        p[4] = static_cast<double>(c) / steps;
        const double rest = 1.0 - p[2] - p[3] - p[4];
        const double rest_e = e - p[2] * en[2] - p[3] * en[3] - p[4] * en[4];
        p[1] = (rest_e - rest * en[0]) / det;
        p[0] = rest - p[1];
        if (p[0] < 0.0 || p[1] < 0.0) continue;
        best = std::max(best, entropy_of(p));
      }
  CHECK(best > 0.0);
  CHECK(best <= s_gibbs + 1e-12);
}

TEST_CASE("Gibbs maximizes entropy on the K = 3 feasible segment") {
  // {0, 1, 2} at E = 0.8: p = (0.2 + t, 0.8 - 2t, t), t in [0, 0.4].
  const Spectrum s({0.0, 1.0, 2.0});
  const auto gs = gibbs_probs(s, solve_beta(s, 0.8));
  const auto g = gs.probs.values();
  const double s_gibbs = entropy_of({g.begin(), g.end()});
  double best = -1.0;
  double best_t = -1.0;
  for (int k = 0; k <= 400; ++k) {
    const double t = 1e-3 * k;
    const double v = entropy_of({0.2 + t, 0.8 - 2 * t, t});
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  CHECK(best <= s_gibbs + 1e-15);
  CHECK(std::abs(best_t - g[2]) <= 1e-3);
}

TEST_CASE("first law: dS/dE = beta") {
  const Spectrum two({0.0, 1.0});
  const auto sym = first_law_check(two, 0.5, 1e-4);
  CHECK(sym.beta == 0.0);
  CHECK(std::abs(sym.derivative) <= 1e-10);
  CHECK(std::isnan(sym.ratio()));

  const auto quarter = first_law_check(two, 0.25, 1e-4);
  CHECK(std::abs(quarter.derivative - std::log(3.0)) <= 1e-6);

  const auto three = first_law_check(Spectrum({0.0, 1.0, 2.0}), 0.8, 1e-4);
  CHECK(three.ratio() == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(first_law_check(two, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(first_law_check(two, 0.99995, 1e-4), EnergyOutOfRange);
}
