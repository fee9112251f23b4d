#pragma once

// Experiment drivers. Each driver builds the model from the configuration,
// derives one random stream per instance from the seed and records one
// check per statement it exercises.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ellrank/rank.hpp"
#include "ellrank/report.hpp"

namespace ellrank {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string experiment;  // lemmas | i1 | f2 | i00 | oo1
  std::uint32_t p = 31;
  std::int64_t a = 2;
  std::int64_t b = 3;
  std::optional<int> n;  // default 8, or 2k+1 for f2 / i00
  std::optional<int> k;  // default 1 for f2 / i00, or (n-1)/2
  int w = 2;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;  // upper-search trials; default 50 p
  std::uint64_t budget = 50'000'000;    // enumeration budget (candidates per search)
  int avoid_size = 5;
  int avoid_sets = 5;
  std::optional<int> instances;  // default per experiment
  int samples = 1000;            // exclusion samples (oo1) and law samples (lemmas)
  unsigned workers = 0;          // 0: hardware concurrency; never changes results
  std::string out;

  static bool known(const std::string& name);

  /// Resolved parameters; throws ConfigError when ranges are violated.
  int resolved_n() const;
  int resolved_k() const;
  std::uint64_t resolved_trials() const { return trials.value_or(50ULL * p); }
  int resolved_instances() const;
  void validate() const;

  Json to_json() const;
};

/// Runs the configured experiment; timing is the only nondeterministic part.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace ellrank
