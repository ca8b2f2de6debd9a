#pragma once

// Real log-gamma, digamma and trigamma for strictly positive arguments.
//
// Arguments below the asymptotic threshold are shifted upward with the
// standard recurrences and then evaluated with the Stirling-type series.
// All three functions throw std::domain_error for x <= 0 or NaN.

namespace gwvn::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

double log_gamma(double x);

/// Psi(x) = d/dx ln Gamma(x).
double digamma(double x);

/// Psi_1(x) = d^2/dx^2 ln Gamma(x).
double trigamma(double x);

/// ln Gamma(x + a) - ln Gamma(x) for x > 0, x + a > 0.
///
/// When `a` is a small nonnegative integer the difference is summed as a
/// rising factorial, which avoids the cancellation of two large log-gamma
/// values at large x.
double log_gamma_ratio(double x, double a);

}  // namespace gwvn::specfun
