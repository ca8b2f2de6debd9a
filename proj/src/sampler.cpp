#include "gwvn/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

#include "gwvn/bipartite.hpp"

namespace gwvn {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void SampleConfig::validate() const {
  if (dim == 0) throw std::invalid_argument("SampleConfig: dim must be >= 1");
  if (count == 0) throw std::invalid_argument("SampleConfig: count must be >= 1");
}

Engine make_engine(std::uint64_t seed, std::uint64_t index) {
  return Engine(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

void fill_haar_amplitudes(std::uint64_t seed, std::uint64_t index, std::span<Complex> out) {
  if (out.empty()) throw std::invalid_argument("fill_haar_amplitudes: dimension must be >= 1");
  auto engine = make_engine(seed, index);
  std::normal_distribution<double> normal;
  double norm_sq = 0.0;
  for (auto& z : out) {
    const double re = normal(engine);
    const double im = normal(engine);
    z = Complex(re, im);
    norm_sq += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& z : out) z *= inv;
}

StateVector haar_state(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  if (dim == 0) throw std::invalid_argument("haar_state: dimension must be >= 1");
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(dim));
  fill_haar_amplitudes(seed, index, std::span<Complex>(amps.data(), dim));
  return StateVector(std::move(amps));
}

BipartiteState haar_bipartite(std::size_t n, std::size_t m, std::uint64_t seed,
                              std::uint64_t index) {
  if (n == 0 || m == 0) throw std::invalid_argument("haar_bipartite: dimensions must be >= 1");
  std::vector<Complex> flat(n * m);
  fill_haar_amplitudes(seed, index, flat);
  Eigen::MatrixXcd coeffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a)
      coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = flat[i * m + a];
  return BipartiteState(std::move(coeffs));
}

Eigen::MatrixXcd haar_unitary(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  if (dim == 0) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  const auto d = static_cast<Eigen::Index>(dim);
  auto engine = make_engine(seed, index);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(r, c) = Complex(re, im);
    }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < d; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(c) *= diag / mag;
  }
  return q;
}

HaarBatch::HaarBatch(SampleConfig cfg) : cfg_(cfg) { cfg_.validate(); }

HaarBatch haar_batch(const SampleConfig& cfg) { return HaarBatch(cfg); }

}  // namespace gwvn
