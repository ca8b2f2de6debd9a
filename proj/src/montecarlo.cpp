#include "gwvn/montecarlo.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include <Eigen/Eigenvalues>

#include "gwvn/entropy.hpp"

namespace gwvn::mc {

Summary summarize(std::span<const double> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double total = 0.0;
  for (const double x : xs) total += x;
  s.mean = total / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / static_cast<double>(xs.size() - 1);
  }
  return s;
}

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

namespace {

double entropy_of_amplitudes(std::span<const Complex> z) {
  // One outcome: |z|^2 is 1 only to rounding, the entropy is exactly 0.
  if (z.size() == 1) return 0.0;
  double s = 0.0;
  for (const auto& a : z) {
    const double p = std::norm(a);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

void require_bipartite(const BipartiteConfig& cfg) {
  if (cfg.n == 0 || cfg.m == 0) throw std::invalid_argument("BipartiteConfig: dimensions must be >= 1");
  if (cfg.count == 0) throw std::invalid_argument("BipartiteConfig: count must be >= 1");
}

}  // namespace

std::vector<double> entropy_samples(const SampleConfig& cfg, int threads) {
  return map_haar<double>(cfg, threads, entropy_of_amplitudes);
}

std::vector<double> entropy_samples_serial(const SampleConfig& cfg) {
  cfg.validate();
  std::vector<double> out;
  out.reserve(cfg.count);
  for (const auto& state : haar_batch(cfg)) out.push_back(gwvn_entropy(state));
  return out;
}

std::vector<EntropyTriple> triple_samples(const BipartiteConfig& cfg, int threads) {
  require_bipartite(cfg);
  const std::size_t n = cfg.n;
  const std::size_t m = cfg.m;
  return map_haar<EntropyTriple>(cfg.flat(), threads, [n, m](std::span<const Complex> z) {
    // Row and column marginals are accumulated in a single sweep.
    thread_local std::vector<double> rows;
    thread_local std::vector<double> cols;
    rows.assign(n, 0.0);
    cols.assign(m, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < m; ++a) {
        const double p = std::norm(z[i * m + a]);
        rows[i] += p;
        cols[a] += p;
        if (p > 0.0) total -= p * std::log(p);
      }
    }
    return EntropyTriple{shannon_kernel(rows), shannon_kernel(cols), total};
  });
}

std::vector<EntropyTriple> triple_samples_serial(const BipartiteConfig& cfg) {
  require_bipartite(cfg);
  std::vector<EntropyTriple> out;
  out.reserve(cfg.count);
  for (std::size_t k = 0; k < cfg.count; ++k) {
    out.push_back(entropy_triple(haar_bipartite(cfg.n, cfg.m, cfg.seed, k)));
  }
  return out;
}

std::vector<double> subsystem_samples(const BipartiteConfig& cfg, int threads) {
  require_bipartite(cfg);
  const std::size_t n = cfg.n;
  const std::size_t m = cfg.m;
  return map_haar<double>(cfg.flat(), threads, [n, m](std::span<const Complex> z) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double p = 0.0;
      for (std::size_t a = 0; a < m; ++a) p += std::norm(z[i * m + a]);
      if (p > 0.0) s -= p * std::log(p);
    }
    return s;
  });
}

std::vector<double> von_neumann_samples(const BipartiteConfig& cfg, int threads) {
  require_bipartite(cfg);
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const auto m = static_cast<Eigen::Index>(cfg.m);
  return map_haar<double>(cfg.flat(), threads, [n, m](std::span<const Complex> z) {
    // Row-major n x m view of the flat amplitudes.
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        c(z.data(), n, m);
    const Eigen::MatrixXcd rho = c * c.adjoint();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (const double lambda : solver.eigenvalues()) {
      const double x = std::clamp(lambda, 0.0, 1.0);
      if (x > 0.0) s -= x * std::log(x);
    }
    return s;
  });
}

std::vector<double> von_neumann_samples_serial(const BipartiteConfig& cfg) {
  require_bipartite(cfg);
  std::vector<double> out;
  out.reserve(cfg.count);
  for (std::size_t k = 0; k < cfg.count; ++k) {
    const auto state = haar_bipartite(cfg.n, cfg.m, cfg.seed, k);
    out.push_back(von_neumann_entropy(reduce(state, Side::system)));
  }
  return out;
}

}  // namespace gwvn::mc
