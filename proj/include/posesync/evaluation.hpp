#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "posesync/dtw.hpp"
#include "posesync/metrics.hpp"
#include "posesync/perturbation.hpp"

namespace posesync {

inline constexpr std::size_t kDefaultToleranceFrames = 2;

struct Scenario {
  std::string name;
  PerturbationSpec spec;
  std::uint64_t seed = 0;
};

struct EvalReport {
  std::string scenario;
  std::string description;
  std::size_t ref_frames = 0;
  std::size_t test_frames = 0;
  double ref_seconds = 0.0;
  double test_seconds = 0.0;
  std::size_t n_expected = 0;
  std::size_t n_matched = 0;
  double percent_matched = 0.0;  // 0 when nothing is expected
  std::size_t tolerance_frames = 0;
  double total_cost = 0.0;
  double normalized_cost = 0.0;
};

/// Counts reference frames with a defined truth t(i) whose representative
/// lies within `tolerance_frames` of t(i). Throws Error(invalid_argument) when
/// the alignment and the truth disagree on the reference length.
EvalReport score_alignment(const AlignmentResult& result, const GroundTruthMap& truth,
                           std::size_t tolerance_frames);

struct ScenarioOutcome {
  EvalReport report;
  AlignmentResult alignment;
  GroundTruthMap truth;
};

/// Perturb, build the cost matrix, align and score one scenario. Errors are
/// rethrown with the scenario name prepended.
ScenarioOutcome run_scenario(const PoseSequence& base, const Scenario& scenario,
                             const MetricConfig& config, std::size_t tolerance_frames,
                             const DtwOptions& dtw = {});

struct SuiteOptions {
  /// Scenarios evaluated concurrently; reports are identical for any value.
  unsigned parallelism = 1;
  DtwOptions dtw;
};

/// One report per scenario, in input order.
std::vector<EvalReport> run_scenario_suite(const PoseSequence& base,
                                           const std::vector<Scenario>& scenarios,
                                           const MetricConfig& config,
                                           std::size_t tolerance_frames,
                                           const SuiteOptions& options = {});

/// One scenario per perturbation family: identity, reorder, noise and
/// clip insertions, flip, partial and whole-clip speed changes, zoom.
std::vector<Scenario> default_scenario_suite(const PoseSequence& base, std::uint64_t seed);

/// Fixed-width text table: reference length, test description and length,
/// expected, matched, percent.
std::string format_report_table(const std::vector<EvalReport>& reports);

}  // namespace posesync
