#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwvn/state.hpp"

// Maximum-entropy weights over energy eigenstates at fixed mean energy.
//
// Only the weights Tr(rho P_Ei) enter the entropy, so the optimization runs
// over distributions on the spectrum. Any observable with a discrete
// spectrum can be passed in place of H.

namespace gwvn::maxent {

/// Energies sorted ascending; repeated values represent degeneracy.
class Spectrum {
 public:
  /// Throws std::invalid_argument for fewer than 2 levels or non-finite values.
  explicit Spectrum(std::vector<double> energies);

  std::size_t size() const { return e_.size(); }
  std::span<const double> energies() const { return e_; }
  double min() const { return e_.front(); }
  double max() const { return e_.back(); }
  /// Mean energy at beta = 0.
  double uniform_mean() const;

 private:
  std::vector<double> e_;
};

struct GibbsState {
  double beta = 0.0;
  ProbabilityVector probs;
};

/// probs_i = exp(-beta (E_i - E_ref)) / Z, with E_ref = E_min for beta >= 0
/// and E_max for beta < 0 so no exponent is positive.
GibbsState gibbs_probs(const Spectrum& spec, double beta);

double mean_energy(const Spectrum& spec, double beta);

/// Var(E) = -d<E>/d beta.
double energy_variance(const Spectrum& spec, double beta);

/// Raised when the target energy is not strictly inside (E_min, E_max).
class EnergyOutOfRange : public std::domain_error {
 public:
  enum class Bound { below_min, above_max };

  EnergyOutOfRange(Bound bound, double target, double limit);
  Bound bound() const { return bound_; }

 private:
  Bound bound_;
};

/// The unique beta with <E>(beta) = target.
///
/// Safeguarded Newton on the decreasing map beta -> <E>(beta) inside an
/// expanding bracket, run until the step is at rounding level in beta.
/// Returns exactly 0 when target equals the uniform mean.
double solve_beta(const Spectrum& spec, double target);

struct StationarityReport {
  std::size_t trials = 0;
  /// No nonzero direction keeps both sum(p) and <E> fixed (e.g. K = 2).
  bool degenerate = false;
  std::size_t decreased = 0;
  /// max over trials of |dS/d eps at eps = 0| / ||omega||.
  double max_first_order = 0.0;
  std::string note;

  bool all_decreased() const { return !degenerate && decreased == trials; }
};

/// Perturbs the Gibbs weights along random directions omega with
/// sum omega = 0 and sum omega E = 0, checking that the first-order entropy
/// change vanishes and that the entropy drops at +eps and -eps.
StationarityReport verify_stationarity(const Spectrum& spec, const GibbsState& state,
                                       std::size_t trials, std::uint64_t seed = 0);

struct FirstLawReport {
  double energy = 0.0;
  double delta = 0.0;
  double beta = 0.0;        ///< solve_beta(energy)
  double derivative = 0.0;  ///< (S(E + dE) - S(E - dE)) / (2 dE)
  double entropy = 0.0;     ///< S at the target energy

  /// derivative / beta; NaN when beta = 0.
  double ratio() const;
};

/// Central difference of the max-entropy curve S(E) against beta.
FirstLawReport first_law_check(const Spectrum& spec, double energy, double delta);

}  // namespace gwvn::maxent
