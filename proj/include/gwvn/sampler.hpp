#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <span>

#include <Eigen/Core>

#include "gwvn/state.hpp"

namespace gwvn {

class BipartiteState;

/// Dimension, sample count and master seed of a Monte Carlo run.
struct SampleConfig {
  std::size_t dim = 1;
  std::size_t count = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when dim or count is zero.
  void validate() const;
};

using Engine = std::mt19937_64;

/// Engine for sample `index` of the stream identified by `seed`.
///
/// Each (seed, index) pair gets its own engine, so any sample can be
/// regenerated without replaying the ones before it.
Engine make_engine(std::uint64_t seed, std::uint64_t index);

/// Writes a Haar-random unit vector into `out` (size = dimension).
///
/// 2N independent standard normals are drawn as (re, im) pairs and the
/// vector is normalized. haar_state() uses the same draws.
void fill_haar_amplitudes(std::uint64_t seed, std::uint64_t index, std::span<Complex> out);

/// Uniform sample on S^{2N-1}. Throws std::invalid_argument for dim == 0.
StateVector haar_state(std::size_t dim, std::uint64_t seed, std::uint64_t index = 0);

/// n x m amplitude matrix, uniform on S^{2nm-1}; equals haar_state(n*m)
/// reshaped row-major (row i holds indices i*m .. i*m + m - 1).
BipartiteState haar_bipartite(std::size_t n, std::size_t m, std::uint64_t seed,
                              std::uint64_t index = 0);

/// Haar-random unitary of size dim (QR of a complex Ginibre matrix with the
/// phases of R's diagonal divided out).
Eigen::MatrixXcd haar_unitary(std::size_t dim, std::uint64_t seed, std::uint64_t index = 0);

/// Lazily generated sequence of cfg.count states; element k is
/// haar_state(cfg.dim, cfg.seed, k).
class HaarBatch {
 public:
  explicit HaarBatch(SampleConfig cfg);

  std::size_t size() const { return cfg_.count; }
  StateVector operator[](std::size_t k) const { return haar_state(cfg_.dim, cfg_.seed, k); }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = StateVector;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const HaarBatch* batch, std::size_t k) : batch_(batch), k_(k) {}

    StateVector operator*() const { return (*batch_)[k_]; }
    iterator& operator++() {
      ++k_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++k_;
      return old;
    }
    bool operator==(const iterator& other) const { return k_ == other.k_; }

   private:
    const HaarBatch* batch_ = nullptr;
    std::size_t k_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, cfg_.count}; }

 private:
  SampleConfig cfg_;
};

HaarBatch haar_batch(const SampleConfig& cfg);

}  // namespace gwvn
