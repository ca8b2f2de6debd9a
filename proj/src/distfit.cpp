#include "gwvn/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gwvn/analytic.hpp"
#include "gwvn/specfun.hpp"

namespace gwvn::distfit {

double FDParams::midpoint() const { return mu / std::log(static_cast<double>(dim)); }

FDParams fd_params(std::uint64_t dim) {
  if (dim < 2) throw std::invalid_argument("fd_params: N must be >= 2");
  constexpr double pi2 = specfun::kPi * specfun::kPi;
  const double mu = analytic::mean_entropy(dim);
  const double c = mu * std::sqrt(pi2 * static_cast<double>(dim) / (pi2 - 9.0));
  return {mu, c, dim};
}

double fd_cdf(double s, const FDParams& params) {
  const double x = params.c * (s - params.midpoint());
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double fd_pdf(double s, const FDParams& params) {
  const double e = std::exp(-params.c * std::abs(s - params.midpoint()));
  const double d = 1.0 + e;
  return params.c * e / (d * d);
}

EmpiricalCDF::EmpiricalCDF(std::vector<double> normalized) : s_(std::move(normalized)) {
  for (const double s : s_) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("EmpiricalCDF: value " + std::to_string(s) + " outside [0, 1]");
    }
  }
  std::sort(s_.begin(), s_.end());
}

EmpiricalCDF EmpiricalCDF::from_entropies(std::span<const double> entropies, std::uint64_t dim) {
  if (dim < 2) throw std::invalid_argument("EmpiricalCDF: N must be >= 2");
  const double log_n = std::log(static_cast<double>(dim));
  std::vector<double> s(entropies.size());
  // S <= ln N up to rounding; clamp the rounding.
  std::transform(entropies.begin(), entropies.end(), s.begin(),
                 [log_n](double e) { return std::clamp(e / log_n, 0.0, 1.0); });
  return EmpiricalCDF(std::move(s));
}

double EmpiricalCDF::operator()(double s) const {
  if (s_.empty()) return 0.0;
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  return static_cast<double>(it - s_.begin()) / static_cast<double>(s_.size());
}

double ks_distance(const EmpiricalCDF& samples, const FDParams& params) {
  const auto s = samples.values();
  if (s.empty()) throw std::invalid_argument("ks_distance: no samples");
  const auto m = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = fd_cdf(s[i], params);
    const auto k = static_cast<double>(i);
    d = std::max({d, f - k / m, (k + 1.0) / m - f});
  }
  return std::min(d, 1.0);
}

Histogram freedman_diaconis(const EmpiricalCDF& samples) {
  const auto s = samples.values();
  if (s.size() < 2) throw std::invalid_argument("freedman_diaconis: need at least 2 samples");
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
  };
  const double lo = s.front();
  const double hi = s.back();
  const double iqr = quantile(0.75) - quantile(0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
  std::size_t bins = 1;
  if (width > 0.0 && hi > lo) {
    bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::size_t>(bins, 1, 10000);
  }
  width = (hi > lo) ? (hi - lo) / static_cast<double>(bins) : 1.0;

  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (const double x : s) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    h.counts[std::min(b, bins - 1)] += 1;
  }
  return h;
}

ChiSquare chi_square(const Histogram& hist, std::size_t total, const FDParams& params) {
  if (hist.counts.empty() || hist.edges.size() != hist.counts.size() + 1) {
    throw std::invalid_argument("chi_square: malformed histogram");
  }
  const auto n = static_cast<double>(total);
  ChiSquare out;
  double observed = 0.0;
  double expected = 0.0;
  std::size_t used = 0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    observed += static_cast<double>(hist.counts[b]);
    expected += n * (fd_cdf(hist.edges[b + 1], params) - fd_cdf(hist.edges[b], params));
    const bool last = b + 1 == hist.counts.size();
    if (expected >= 5.0 || last) {
      if (expected > 0.0) {
        const double diff = observed - expected;
        out.statistic += diff * diff / expected;
        ++used;
      }
      observed = 0.0;
      expected = 0.0;
    }
  }
  out.dof = used > 0 ? used - 1 : 0;
  return out;
}

}  // namespace gwvn::distfit
