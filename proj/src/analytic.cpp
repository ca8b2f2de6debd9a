#include "gwvn/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "gwvn/specfun.hpp"

namespace gwvn::analytic {

using specfun::digamma;
using specfun::log_gamma_ratio;
using specfun::trigamma;

namespace {

void require_dim(std::uint64_t d, const char* what) {
  if (d == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

void require_exponent(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("moment exponent must be >= 0");
}

double as_real(std::uint64_t d) { return static_cast<double>(d); }

}  // namespace

double moment_z(double lambda, std::uint64_t dim) {
  require_dim(dim, "dimension");
  require_exponent(lambda);
  const double n = as_real(dim);
  // Gamma(1+lambda) / [Gamma(N+lambda)/Gamma(N)]
  return std::exp(log_gamma_ratio(1.0, lambda) - log_gamma_ratio(n, lambda));
}

double mean_entropy(std::uint64_t dim) {
  require_dim(dim, "dimension");
  if (dim == 1) return 0.0;
  return digamma(as_real(dim) + 1.0) - digamma(2.0);
}

double variance_entropy(std::uint64_t dim) {
  require_dim(dim, "dimension");
  if (dim == 1) return 0.0;
  const double np1 = as_real(dim) + 1.0;
  constexpr double pi2 = specfun::kPi * specfun::kPi;
  return (pi2 / 3.0 - 2.0) / np1 - trigamma(np1);
}

EntropyStats entropy_stats(std::uint64_t dim) {
  return {mean_entropy(dim), variance_entropy(dim), dim};
}

double subsystem_moment(double lambda, std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  require_exponent(lambda);
  const double mr = as_real(m);
  const double nm = as_real(n) * mr;
  return std::exp(log_gamma_ratio(mr, lambda) - log_gamma_ratio(nm, lambda));
}

double subsystem_mean(std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  if (n == 1) return 0.0;
  return digamma(as_real(n) * as_real(m) + 1.0) - digamma(as_real(m) + 1.0);
}

double subsystem_variance(std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  if (n == 1) return 0.0;
  const double mp1 = as_real(m) + 1.0;
  const double np1 = as_real(n) * as_real(m) + 1.0;
  return (mp1 / np1) * trigamma(mp1) - trigamma(np1);
}

double additivity_defect(std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  if (n == 1 || m == 1) return 0.0;
  const double nr = as_real(n);
  const double mr = as_real(m);
  return digamma(nr * mr + 1.0) - digamma(mr + 1.0) - digamma(nr + 1.0) + digamma(2.0);
}

double product_moment(const MomentQuery& q) {
  if (q.alphas.empty()) throw std::invalid_argument("product_moment: need at least one block");
  require_dim(q.block_size, "block size");
  const double m = as_real(q.block_size);
  const double dim = m * as_real(q.alphas.size());
  double log_value = 0.0;
  double total = 0.0;
  for (const double a : q.alphas) {
    require_exponent(a);
    log_value += log_gamma_ratio(m, a);
    total += a;
  }
  log_value -= log_gamma_ratio(dim, total);
  return std::exp(log_value);
}

double moment_derivatives(DerivativeKind kind, std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  const double mr = as_real(m);
  const double dim = as_real(n) * mr;
  switch (kind) {
    case DerivativeKind::single: {
      // <T^1> = m/N
      return (mr / dim) * (digamma(mr + 1.0) - digamma(dim + 1.0));
    }
    case DerivativeKind::same_block: {
      // <T^2> = m(m+1) / (N(N+1))
      const double prefactor = (mr * (mr + 1.0)) / (dim * (dim + 1.0));
      const double d = digamma(mr + 2.0) - digamma(dim + 2.0);
      return prefactor * (d * d + trigamma(mr + 2.0) - trigamma(dim + 2.0));
    }
    case DerivativeKind::cross_block: {
      // <T_1 T_2> = m^2 / (N(N+1))
      const double prefactor = (mr * mr) / (dim * (dim + 1.0));
      const double d = digamma(mr + 1.0) - digamma(dim + 2.0);
      return prefactor * (d * d - trigamma(dim + 2.0));
    }
  }
  throw std::invalid_argument("moment_derivatives: unknown kind");
}

double assembled_mean(std::uint64_t n, std::uint64_t m) {
  return -as_real(n) * moment_derivatives(DerivativeKind::single, n, m);
}

double assembled_variance(std::uint64_t n, std::uint64_t m) {
  const double nr = as_real(n);
  const double mean = assembled_mean(n, m);
  const double cross = n > 1 ? moment_derivatives(DerivativeKind::cross_block, n, m) : 0.0;
  const double same = moment_derivatives(DerivativeKind::same_block, n, m);
  return nr * (nr - 1.0) * cross + nr * same - mean * mean;
}

double page_mean_approx(std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  if (n > m) std::swap(n, m);
  return std::log(as_real(n)) - as_real(n) / (2.0 * as_real(m));
}

double page_mean_exact(std::uint64_t n, std::uint64_t m) {
  require_dim(n, "n");
  require_dim(m, "m");
  if (n > m) std::swap(n, m);
  const double nr = as_real(n);
  const double mr = as_real(m);
  return digamma(nr * mr + 1.0) - digamma(mr + 1.0) - (nr - 1.0) / (2.0 * mr);
}

}  // namespace gwvn::analytic
