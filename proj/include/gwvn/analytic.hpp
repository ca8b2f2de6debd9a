#pragma once

#include <cstdint>
#include <vector>

// Closed-form Haar averages of amplitude moments and of the entropy
// functionals built from them. Dimensions are integers; every Gamma ratio is
// evaluated in log space, so N up to ~1e19 is fine.

namespace gwvn::analytic {

/// Mean and variance of the entropy of a Haar-random state in dimension N.
struct EntropyStats {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t dim = 1;
};

/// Exponents alpha_k for blocks T_k of size `block_size`; n = alphas.size().
struct MomentQuery {
  std::vector<double> alphas;
  std::uint64_t block_size = 1;
};

enum class DerivativeKind {
  single,       ///< d<T_1^a>/da at a = 1
  same_block,   ///< d^2<T_1^(a+b)>/da db at a = b = 1
  cross_block,  ///< d^2<T_1^a T_2^b>/da db at a = b = 1
};

/// <|z_j|^(2 lambda)> = Gamma(N) Gamma(1 + lambda) / Gamma(N + lambda).
double moment_z(double lambda, std::uint64_t dim);

/// Psi(N+1) - Psi(2), i.e. H_N - 1.
double mean_entropy(std::uint64_t dim);

/// (pi^2/3 - 2)/(N+1) - Psi_1(N+1). Leading order (pi^2/3 - 3)/N ~ 0.2899/N.
double variance_entropy(std::uint64_t dim);

EntropyStats entropy_stats(std::uint64_t dim);

/// Coefficient of the 1/N leading term of variance_entropy.
inline constexpr double kVarianceLeadingCoefficient =
    3.14159265358979323846 * 3.14159265358979323846 / 3.0 - 3.0;

/// <p_ii^lambda> for a Haar state on an n x m bipartite space.
double subsystem_moment(double lambda, std::uint64_t n, std::uint64_t m);

/// Psi(nm+1) - Psi(m+1).
double subsystem_mean(std::uint64_t n, std::uint64_t m);

/// ((m+1)/(N+1)) Psi_1(m+1) - Psi_1(N+1) with N = nm.
double subsystem_variance(std::uint64_t n, std::uint64_t m);

/// <S_s + S_e - S> = Psi(nm+1) - Psi(m+1) - Psi(n+1) + Psi(2) -> 1 - gamma.
double additivity_defect(std::uint64_t n, std::uint64_t m);

/// <prod_k T_k^alpha_k> = Gamma(N)/Gamma(m)^n prod_k Gamma(alpha_k + m) / Gamma(sum alpha + N).
double product_moment(const MomentQuery& q);

/// One of the three block-moment derivatives, for n blocks of size m.
double moment_derivatives(DerivativeKind kind, std::uint64_t n, std::uint64_t m);

/// Mean subsystem entropy assembled from the single-block derivative:
/// -n d<T^a>/da at a = 1.
double assembled_mean(std::uint64_t n, std::uint64_t m);

/// Variance assembled from the derivative terms:
/// n(n-1) cross + n same - mean^2. Agrees with subsystem_variance (and with
/// variance_entropy when m = 1).
double assembled_variance(std::uint64_t n, std::uint64_t m);

/// ln n - n/(2m), the large-environment approximation of Page's mean
/// von Neumann entropy (n <= m).
double page_mean_approx(std::uint64_t n, std::uint64_t m);

/// Page's exact mean: sum_{k=m+1}^{nm} 1/k - (n-1)/(2m), n <= m.
double page_mean_exact(std::uint64_t n, std::uint64_t m);

}  // namespace gwvn::analytic
