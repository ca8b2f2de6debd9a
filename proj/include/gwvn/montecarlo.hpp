#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gwvn/bipartite.hpp"
#include "gwvn/sampler.hpp"
#include "gwvn/state.hpp"

// Batched Monte Carlo over Haar-random states.
//
// Every kernel comes in two forms. The OpenMP form fuses sampling and
// evaluation over a per-thread scratch buffer. The *_serial form is a plain
// loop over the public single-state API (haar_state, gwvn_entropy, ...) and
// is kept as the reference the parallel kernels are tested against. Sample k
// always comes from make_engine(seed, k), so results do not depend on the
// thread count.

namespace gwvn::mc {

/// Mean, unbiased variance and count of a sample.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;

  double standard_error() const {
    return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
  }
};

Summary summarize(std::span<const double> xs);

/// 0 or negative -> OpenMP default.
int resolve_threads(int requested);

/// out[k] = fn(amplitudes of sample k) for k < cfg.count, in parallel.
template <class R, class Fn>
std::vector<R> map_haar(const SampleConfig& cfg, int threads, Fn fn) {
  cfg.validate();
  std::vector<R> out(cfg.count);
  const auto count = static_cast<std::int64_t>(cfg.count);
  const std::size_t dim = cfg.dim;
  const std::uint64_t seed = cfg.seed;
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::vector<Complex> z(dim);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
      fill_haar_amplitudes(seed, static_cast<std::uint64_t>(k), z);
      out[static_cast<std::size_t>(k)] = fn(std::span<const Complex>(z));
    }
  }
  return out;
}

/// GWvN entropy of each sample in the computational basis.
std::vector<double> entropy_samples(const SampleConfig& cfg, int threads = 0);
std::vector<double> entropy_samples_serial(const SampleConfig& cfg);

/// Bipartite samples use dimension n*m; cfg.dim is ignored.
struct BipartiteConfig {
  std::size_t n = 1;
  std::size_t m = 1;
  std::size_t count = 1;
  std::uint64_t seed = 0;

  SampleConfig flat() const { return {n * m, count, seed}; }
};

/// (S_s, S_e, S_total) for each sample.
std::vector<EntropyTriple> triple_samples(const BipartiteConfig& cfg, int threads = 0);
std::vector<EntropyTriple> triple_samples_serial(const BipartiteConfig& cfg);

/// S(rho_s) for each sample; cheaper than triple_samples.
std::vector<double> subsystem_samples(const BipartiteConfig& cfg, int threads = 0);

/// von Neumann entropy of the system side for each sample.
std::vector<double> von_neumann_samples(const BipartiteConfig& cfg, int threads = 0);
std::vector<double> von_neumann_samples_serial(const BipartiteConfig& cfg);

}  // namespace gwvn::mc
