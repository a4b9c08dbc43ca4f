#pragma once

#include <optional>
#include <string>
#include <vector>

#include "digitop/cli/commands.hpp"

namespace digitop::cli {

enum class SuiteScale { tiny, standard };

struct SuiteOptions {
  SuiteScale scale = SuiteScale::standard;
  /// Forces the given criterion to report failure (tests the failure path).
  std::optional<int> inject_fault;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  /// Deterministic evidence (counts, witnesses); no timings.
  Json evidence;
};

inline constexpr int kCriterionCount = 11;

/// Runs one criterion (1..kCriterionCount). Exceptions inside the check are
/// reported as failures, never propagated.
CriterionReport run_criterion(int id, const SuiteOptions& options);

std::vector<CriterionReport> run_suite(const SuiteOptions& options);

/// Certificate bundle for a suite run; exit code 0 iff every criterion passed.
CommandResult cmd_verify_suite(const SuiteOptions& options);

/// Human-readable pass table, one line per criterion.
std::string format_table(const std::vector<CriterionReport>& reports);

/// All continuous self-maps without an approximate fixed point, found by
/// testing every one of the |X|^|X| tables. Independent of the search engine.
std::vector<DigitalMap> brute_force_witnesses(const ImagePtr& image);

/// |C(X)| by testing every one of the |X|^|X| tables.
std::uint64_t brute_force_continuous_count(const ImagePtr& image);

}  // namespace digitop::cli
