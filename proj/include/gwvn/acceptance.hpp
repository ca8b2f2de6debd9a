#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Acceptance criteria A1-A11: each runs its experiment at full size and
// compares against closed forms at fixed tolerances.

namespace gwvn::acceptance {

enum class Relation { abs_within, rel_within, at_most, at_least };

/// "abs_within", "rel_within", "at_most", "at_least".
std::string_view relation_name(Relation r);

struct Check {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;  ///< unused for at_most / at_least
  Relation relation = Relation::abs_within;
  bool pass = false;
  /// Reported, not counted toward the criterion's verdict.
  bool informational = false;

  std::string describe() const;
};

Check within_abs(std::string name, double value, double reference, double tolerance);
Check within_rel(std::string name, double value, double reference, double tolerance);
Check at_most(std::string name, double value, double limit);
Check at_least(std::string name, double value, double limit);
Check informational(Check c);

struct Options {
  std::uint64_t seed = 42;
  int threads = 0;
};

struct Criterion {
  std::string_view id;
  std::string_view title;
  double budget_seconds;
  std::vector<Check> (*run)(const Options&);
};

struct Outcome {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;

  bool numeric_pass() const;
  bool within_budget() const { return seconds <= budget_seconds; }
  bool pass() const { return numeric_pass() && within_budget(); }
};

std::span<const Criterion> criteria();

/// nullptr when no criterion has this id.
const Criterion* find(std::string_view id);

/// Runs one criterion and records its wall-clock time.
Outcome evaluate(const Criterion& criterion, const Options& options);

}  // namespace gwvn::acceptance
