#include "gwvn/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gwvn/entropy.hpp"
#include "gwvn/sampler.hpp"

namespace gwvn::maxent {

Spectrum::Spectrum(std::vector<double> energies) : e_(std::move(energies)) {
  if (e_.size() < 2) throw std::invalid_argument("Spectrum: need at least 2 levels");
  for (const double e : e_) {
    if (!std::isfinite(e)) throw std::invalid_argument("Spectrum: energies must be finite");
  }
  std::sort(e_.begin(), e_.end());
}

double Spectrum::uniform_mean() const {
  return std::accumulate(e_.begin(), e_.end(), 0.0) / static_cast<double>(e_.size());
}

namespace {

// Unnormalized weights relative to a reference level that keeps every
// exponent <= 0; returns the reference.
double boltzmann_weights(const Spectrum& spec, double beta, std::vector<double>& w) {
  const auto e = spec.energies();
  const double ref = beta >= 0.0 ? spec.min() : spec.max();
  w.resize(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) w[i] = std::exp(-beta * (e[i] - ref));
  return ref;
}

struct Moments {
  double mean;
  double variance;
};

Moments energy_moments(const Spectrum& spec, double beta) {
  std::vector<double> w;
  const double ref = boltzmann_weights(spec, beta, w);
  const auto e = spec.energies();
  double z = 0.0;
  double m1 = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    z += w[i];
    m1 += w[i] * (e[i] - ref);
  }
  m1 /= z;
  double var = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double d = e[i] - ref - m1;
    var += w[i] * d * d;
  }
  return {ref + m1, var / z};
}

double entropy_at(const Spectrum& spec, double beta) {
  return shannon(gibbs_probs(spec, beta).probs);
}

}  // namespace

GibbsState gibbs_probs(const Spectrum& spec, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("gibbs_probs: beta must be finite");
  std::vector<double> w;
  boltzmann_weights(spec, beta, w);
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= z;
  return {beta, ProbabilityVector(std::move(w))};
}

double mean_energy(const Spectrum& spec, double beta) { return energy_moments(spec, beta).mean; }

double energy_variance(const Spectrum& spec, double beta) {
  return energy_moments(spec, beta).variance;
}

EnergyOutOfRange::EnergyOutOfRange(Bound bound, double target, double limit)
    : std::domain_error(std::string("target energy ") + std::to_string(target) +
                        (bound == Bound::below_min ? " is not above E_min = " : " is not below E_max = ") +
                        std::to_string(limit)),
      bound_(bound) {}

double solve_beta(const Spectrum& spec, double target) {
  if (!(target > spec.min())) {
    throw EnergyOutOfRange(EnergyOutOfRange::Bound::below_min, target, spec.min());
  }
  if (!(target < spec.max())) {
    throw EnergyOutOfRange(EnergyOutOfRange::Bound::above_max, target, spec.max());
  }
  const double spread = spec.max() - spec.min();
  if (std::abs(target - spec.uniform_mean()) <= 1e-15 * spread) return 0.0;

  const auto residual = [&](double b) { return mean_energy(spec, b) - target; };

  // Bracket [lo, hi] with residual(lo) > 0 > residual(hi).
  double lo = 0.0;
  double hi = 0.0;
  if (residual(0.0) > 0.0) {
    hi = 1.0 / spread;
    while (residual(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = -1.0 / spread;
    while (residual(lo) < 0.0) {
      hi = lo;
      lo *= 2.0;
    }
  }

  // Newton inside the bracket until the step is at rounding level; the
  // residual alone is a poor criterion where Var(E) is tiny (large |beta|).
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double beta = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const auto [mean, var] = energy_moments(spec, beta);
    const double f = mean - target;
    if (f == 0.0) return beta;
    if (f > 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    // d<E>/d beta = -Var(E)
    double next = var > 0.0 ? beta + f / var : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double scale = 4.0 * eps * std::max(1.0, std::abs(beta));
    if (std::abs(next - beta) <= scale || hi - lo <= scale) return next;
    beta = next;
  }
  return beta;
}

StationarityReport verify_stationarity(const Spectrum& spec, const GibbsState& state,
                                       std::size_t trials, std::uint64_t seed) {
  const auto e = spec.energies();
  const auto p = state.probs.values();
  const std::size_t k = e.size();
  if (p.size() != k) throw std::invalid_argument("verify_stationarity: size mismatch");

  StationarityReport report;
  report.trials = trials;

  // Orthonormal basis of span{1, E}.
  std::vector<std::vector<double>> constraints;
  for (std::vector<double> v : {std::vector<double>(k, 1.0), std::vector<double>(e.begin(), e.end())}) {
    for (const auto& q : constraints) {
      const double dot = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
      for (std::size_t i = 0; i < k; ++i) v[i] -= dot * q[i];
    }
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm > 1e-12 * std::sqrt(static_cast<double>(k))) {
      for (auto& x : v) x /= norm;
      constraints.push_back(std::move(v));
    }
  }
  if (constraints.size() >= k) {
    report.degenerate = true;
    report.note = "no direction keeps both normalization and mean energy fixed";
    return report;
  }

  const double s0 = shannon_kernel(p);
  auto engine = make_engine(seed, 0);
  std::normal_distribution<double> normal;
  std::vector<double> omega(k);
  std::vector<double> moved(k);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    double norm = 0.0;
    do {
      for (auto& x : omega) x = normal(engine);
      for (const auto& q : constraints) {
        const double dot = std::inner_product(omega.begin(), omega.end(), q.begin(), 0.0);
        for (std::size_t i = 0; i < k; ++i) omega[i] -= dot * q[i];
      }
      norm = std::sqrt(std::inner_product(omega.begin(), omega.end(), omega.begin(), 0.0));
    } while (norm < 1e-8);
    for (auto& x : omega) x /= norm;

    // dS/d eps = -sum omega_i (ln p_i + 1); the +1 drops since sum omega = 0.
    double slope = 0.0;
    bool interior = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (p[i] <= 0.0) {
        interior = false;
        break;
      }
      slope -= omega[i] * std::log(p[i]);
    }
    if (!interior) {
      report.note = "Gibbs weights underflow to zero; entropy is not differentiable there";
      continue;
    }
    report.max_first_order = std::max(report.max_first_order, std::abs(slope));

    // Largest step keeping p +/- eps omega nonnegative, then a quarter of it.
    double eps = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (omega[i] != 0.0) eps = std::min(eps, p[i] / std::abs(omega[i]));
    }
    eps *= 0.25;

    bool lower = true;
    for (const double sign : {1.0, -1.0}) {
      for (std::size_t i = 0; i < k; ++i) moved[i] = p[i] + sign * eps * omega[i];
      if (!(shannon_kernel(moved) < s0)) lower = false;
    }
    if (lower) ++report.decreased;
  }
  return report;
}

double FirstLawReport::ratio() const {
  return beta == 0.0 ? std::numeric_limits<double>::quiet_NaN() : derivative / beta;
}

FirstLawReport first_law_check(const Spectrum& spec, double energy, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("first_law_check: dE must be > 0");
  FirstLawReport r;
  r.energy = energy;
  r.delta = delta;
  r.beta = solve_beta(spec, energy);
  r.entropy = entropy_at(spec, r.beta);
  const double s_plus = entropy_at(spec, solve_beta(spec, energy + delta));
  const double s_minus = entropy_at(spec, solve_beta(spec, energy - delta));
  r.derivative = (s_plus - s_minus) / (2.0 * delta);
  return r;
}

}  // namespace gwvn::maxent
