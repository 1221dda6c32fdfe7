#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace latmorph {

struct SuiteFailure {
  std::string case_description;
  std::string expected;
  std::string actual;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  /// Sorted by case description; at most the first 50 are kept.
  std::vector<SuiteFailure> failures;
  std::vector<std::string> notes;
  double wall_time_s = 0.0;

  bool passed() const { return failure_count == 0; }
};

/// Registered suite identifiers, one per acceptance criterion, in order.
const std::vector<std::string>& suite_ids();

/// Trial count used when the caller passes trials <= 0.
int default_trials(const std::string& id);

/// Deterministic for a given (id, seed, trials). Throws std::invalid_argument
/// on an unknown id.
SuiteReport run_suite(const std::string& id, std::uint64_t seed, int trials);

/// Schema-versioned JSON; `with_time` false drops the wall-time field.
nlohmann::json to_json(const SuiteReport& r, bool with_time = true);

}  // namespace latmorph
