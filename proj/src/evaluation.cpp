#include "posesync/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <memory>

#include "posesync/error.hpp"
#include "posesync/synth.hpp"

namespace posesync {

EvalReport score_alignment(const AlignmentResult& result, const GroundTruthMap& truth,
                           std::size_t tolerance_frames) {
  if (result.ref_to_test.size() != truth.n_ref()) {
    throw Error(ErrorKind::invalid_argument,
                "alignment covers " + std::to_string(result.ref_to_test.size()) +
                    " reference frames but ground truth has " + std::to_string(truth.n_ref()));
  }
  EvalReport report;
  report.ref_frames = truth.n_ref();
  report.test_frames = truth.n_test();
  report.tolerance_frames = tolerance_frames;
  report.total_cost = result.total_cost;
  report.normalized_cost = result.normalized_cost;
  for (std::size_t i = 0; i < truth.n_ref(); ++i) {
    const auto& expected = truth.ref_to_test[i];
    if (!expected) continue;
    ++report.n_expected;
    const std::size_t rep = result.ref_to_test[i].representative;
    const std::size_t error = rep > *expected ? rep - *expected : *expected - rep;
    if (error <= tolerance_frames) ++report.n_matched;
  }
  if (report.n_expected > 0) {
    report.percent_matched = 100.0 * static_cast<double>(report.n_matched) /
                             static_cast<double>(report.n_expected);
  }
  return report;
}

ScenarioOutcome run_scenario(const PoseSequence& base, const Scenario& scenario,
                             const MetricConfig& config, std::size_t tolerance_frames,
                             const DtwOptions& dtw) {
  try {
    Perturbed perturbed = apply_perturbation(base, scenario.spec, scenario.seed);
    const CostMatrix cost = build_cost_matrix(base, perturbed.sequence, config);
    AlignmentResult alignment = dtw_align(cost, dtw);
    EvalReport report = score_alignment(alignment, perturbed.truth, tolerance_frames);
    report.scenario = scenario.name;
    report.description = describe(scenario.spec);
    report.ref_seconds = base.duration_seconds();
    report.test_seconds = perturbed.sequence.duration_seconds();
    return {std::move(report), std::move(alignment), std::move(perturbed.truth)};
  } catch (const Error& e) {
    throw e.with_context("scenario '" + scenario.name + "'");
  }
}

std::vector<EvalReport> run_scenario_suite(const PoseSequence& base,
                                           const std::vector<Scenario>& scenarios,
                                           const MetricConfig& config,
                                           std::size_t tolerance_frames,
                                           const SuiteOptions& options) {
  std::vector<EvalReport> reports(scenarios.size());
  const std::size_t batch = std::max<std::size_t>(1, options.parallelism);
  for (std::size_t first = 0; first < scenarios.size(); first += batch) {
    const std::size_t last = std::min(scenarios.size(), first + batch);
    std::vector<std::future<EvalReport>> pending;
    for (std::size_t k = first; k < last; ++k) {
      auto launch = batch > 1 ? std::launch::async : std::launch::deferred;
      pending.push_back(std::async(launch, [&, k] {
        return run_scenario(base, scenarios[k], config, tolerance_frames, options.dtw).report;
      }));
    }
    for (std::size_t k = first; k < last; ++k) reports[k] = pending[k - first].get();
  }
  return reports;
}

std::vector<Scenario> default_scenario_suite(const PoseSequence& base, std::uint64_t seed) {
  using P = InsertPosition;
  const double second_frac = std::min(0.25, 1.0 / base.duration_seconds());
  auto donor = std::make_shared<const PoseSequence>(
      synth_sequence(Motion::squat, 2.0, base.fps, seed + 1000));

  std::vector<Scenario> suite{
      {"same_video", Identity{}, seed},
      {"reorder_halves", ReorderSegments{{0.5}, {1, 0}}, seed},
      {"noise_2s_middle", InsertNoise{2.0, P::middle}, seed + 1},
      {"noise_2s_start", InsertNoise{2.0, P::start}, seed + 2},
      {"noise_2s_end", InsertNoise{2.0, P::end}, seed + 3},
      {"noise_1s_middle", InsertNoise{1.0, P::middle}, seed + 4},
      {"noise_1s_start", InsertNoise{1.0, P::start}, seed + 5},
      {"noise_1s_end", InsertNoise{1.0, P::end}, seed + 6},
      {"clip_2s_middle", InsertClip{2.0, P::middle, donor}, seed},
      {"flip", FlipHorizontal{}, seed},
      {"slow_start", SpeedChange{0.5, 0.0, 2.0 * second_frac}, seed},
      {"slow_middle", SpeedChange{0.5, 0.5 - second_frac, 0.5 + second_frac}, seed},
      {"slow_end", SpeedChange{0.5, 1.0 - 2.0 * second_frac, 1.0}, seed},
      {"slow_x2", SpeedChange{0.5, 0.0, 1.0}, seed},
      {"fast_x2", SpeedChange{2.0, 0.0, 1.0}, seed},
      {"slow_x4", SpeedChange{0.25, 0.0, 1.0}, seed},
      {"zoom_in", Zoom{1.5, 0.5, 0.5}, seed},
  };
  return suite;
}

std::string format_report_table(const std::vector<EvalReport>& reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %7s  %-38s %7s  %8s %7s %9s\n", "scenario", "ref(s)",
                "test video", "test(s)", "expected", "matched", "% matched");
  out += line;
  out += std::string(102, '-') + "\n";
  for (const auto& r : reports) {
    std::string description = r.description;
    if (description.size() > 38) description = description.substr(0, 35) + "...";
    std::snprintf(line, sizeof line, "%-18s %7.2f  %-38s %7.2f  %8zu %7zu %9.2f\n",
                  r.scenario.c_str(), r.ref_seconds, description.c_str(), r.test_seconds,
                  r.n_expected, r.n_matched, r.percent_matched);
    out += line;
  }
  return out;
}

}  // namespace posesync
