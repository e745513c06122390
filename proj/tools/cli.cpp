#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "posesync/alignment_io.hpp"
#include "posesync/dtw.hpp"
#include "posesync/error.hpp"
#include "posesync/evaluation.hpp"
#include "posesync/metric_config_io.hpp"
#include "posesync/scenario_io.hpp"
#include "posesync/sequence_io.hpp"
#include "posesync/synth.hpp"
#include "svg_plot.hpp"

namespace posesync::cli {

namespace {

namespace fs = std::filesystem;

struct MetricOptions {
  std::string metric;  // empty: take from config file or default
  std::string config_path;
  std::vector<double> joint_weights;
};

struct AlignOptions {
  std::string ref_path;
  std::string test_path;
  MetricOptions metric;
  std::string out_path;
  std::string csv_path;
  std::size_t band = 0;
  unsigned threads = 1;
};

struct SynthOptions {
  std::string motion;
  double seconds = 0.0;
  double fps = 0.0;
  std::uint64_t seed = 0;
  std::string out_path;
};

struct EvalOptions {
  std::string base_path;
  std::string synth_motion = "arm_wave";
  double seconds = 8.0;
  double fps = 25.0;
  std::uint64_t seed = 0;
  std::string scenarios_path;
  std::size_t tolerance = kDefaultToleranceFrames;
  MetricOptions metric;
  std::string out_path;
  unsigned jobs = 1;
};

struct PlotOptions {
  std::string alignment_path;
  std::string out_path;
  std::string csv_path;
};

void add_metric_flags(CLI::App* cmd, MetricOptions& opts) {
  cmd->add_option("--metric", opts.metric, "Frame cost metric")
      ->check(CLI::IsMember({"angle-mae", "keypoint-mae", "angle_mae", "keypoint_mae"}));
  cmd->add_option("--metric-config", opts.config_path, "Metric configuration JSON");
  cmd->add_option("--joint-weights", opts.joint_weights,
                  "Comma-separated weights, one per joint triplet")
      ->delimiter(',');
}

void require_input(const std::string& path, const char* what) {
  if (!fs::exists(path)) {
    throw Error(ErrorKind::io, std::string(what) + " '" + path + "' does not exist");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

MetricConfig resolve_metric(const MetricOptions& opts) {
  MetricConfig config;
  if (!opts.config_path.empty()) config = load_metric_config(opts.config_path);
  if (!opts.metric.empty()) config.kind = *metric_kind_from_string(opts.metric);
  if (!opts.joint_weights.empty()) {
    config.joint_set = config.joint_set.with_weights(opts.joint_weights);
  }
  config.validate();
  return config;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int cmd_align(const AlignOptions& opts, bool quiet, std::ostream& out) {
  require_input(opts.ref_path, "reference file");
  require_input(opts.test_path, "test file");
  if (!opts.metric.config_path.empty()) require_input(opts.metric.config_path, "metric config");

  const MetricConfig config = resolve_metric(opts.metric);
  const PoseSequence ref = load_sequence(opts.ref_path);
  const PoseSequence test = load_sequence(opts.test_path);

  const CostMatrix cost = build_cost_matrix(ref, test, config, {opts.threads});
  DtwOptions dtw;
  if (opts.band > 0) dtw.band = opts.band;
  const AlignmentResult result = dtw_align(cost, dtw);

  save_alignment(result, opts.out_path);
  if (!opts.csv_path.empty()) write_text(opts.csv_path, path_to_csv(result.path));

  if (!quiet) {
    out << "ref_frames: " << ref.size() << "\n"
        << "test_frames: " << test.size() << "\n"
        << "path_length: " << result.path.size() << "\n"
        << "total_cost: " << number(result.total_cost) << "\n"
        << "normalized_cost: " << number(result.normalized_cost) << "\n";
  }
  return kSuccess;
}

int cmd_synth(const SynthOptions& opts, bool quiet, std::ostream& out) {
  const auto motion = motion_from_string(opts.motion);
  if (!motion) {
    throw Error(ErrorKind::invalid_argument,
                "unknown motion '" + opts.motion + "' (expected arm_wave, squat or walk_cycle)");
  }
  const PoseSequence seq = synth_sequence(*motion, opts.seconds, opts.fps, opts.seed);
  save_sequence(seq, opts.out_path);
  if (!quiet) out << "wrote " << seq.size() << " frames to " << opts.out_path << "\n";
  return kSuccess;
}

int cmd_eval(const EvalOptions& opts, bool quiet, std::ostream& out) {
  if (!opts.base_path.empty()) require_input(opts.base_path, "base sequence");
  if (!opts.scenarios_path.empty()) require_input(opts.scenarios_path, "scenario file");
  if (!opts.metric.config_path.empty()) require_input(opts.metric.config_path, "metric config");

  const MetricConfig config = resolve_metric(opts.metric);
  PoseSequence base;
  if (!opts.base_path.empty()) {
    base = load_sequence(opts.base_path);
  } else {
    const auto motion = motion_from_string(opts.synth_motion);
    if (!motion) throw Error(ErrorKind::invalid_argument, "unknown motion '" + opts.synth_motion + "'");
    base = synth_sequence(*motion, opts.seconds, opts.fps, opts.seed);
  }

  const std::vector<Scenario> scenarios = opts.scenarios_path.empty()
                                              ? default_scenario_suite(base, opts.seed)
                                              : load_scenarios(opts.scenarios_path, base.fps);
  SuiteOptions suite;
  suite.parallelism = opts.jobs;
  const auto reports = run_scenario_suite(base, scenarios, config, opts.tolerance, suite);

  if (!opts.out_path.empty()) write_text(opts.out_path, serialize_reports(reports));
  if (!quiet) out << format_report_table(reports);
  return kSuccess;
}

int cmd_plot(const PlotOptions& opts, bool quiet, std::ostream& out) {
  require_input(opts.alignment_path, "alignment file");
  const AlignmentResult result = load_alignment(opts.alignment_path);
  write_text(opts.out_path, plot::render_path_svg(result));
  if (!opts.csv_path.empty()) write_text(opts.csv_path, plot::cost_profile_csv(result));
  if (!quiet) out << "wrote " << opts.out_path << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pose-based video synchronization with dynamic time warping", "posesync"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet", quiet, "Suppress the human-readable summary");

  AlignOptions align;
  auto* align_cmd = app.add_subcommand("align", "Align a test sequence to a reference sequence");
  align_cmd->add_option("--ref", align.ref_path, "Reference keypoint JSON")->required();
  align_cmd->add_option("--test", align.test_path, "Test keypoint JSON")->required();
  align_cmd->add_option("--out", align.out_path, "Alignment JSON output")->required();
  align_cmd->add_option("--csv", align.csv_path, "Warping path CSV output");
  align_cmd->add_option("--band", align.band, "Sakoe-Chiba half-width (0 = unconstrained)");
  align_cmd->add_option("--threads", align.threads, "Cost matrix worker threads")
      ->check(CLI::Range(1u, 256u));
  add_metric_flags(align_cmd, align.metric);
  align_cmd->add_flag("--quiet", quiet, "Suppress the summary");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic keypoint sequence");
  synth_cmd->add_option("motion", synth.motion, "arm_wave | squat | walk_cycle")->required();
  synth_cmd->add_option("seconds", synth.seconds, "Duration in seconds")->required();
  synth_cmd->add_option("fps", synth.fps, "Frames per second")->required();
  synth_cmd->add_option("seed,--seed", synth.seed, "Jitter seed");
  synth_cmd->add_option("--out", synth.out_path, "Keypoint JSON output")->required();
  synth_cmd->add_flag("--quiet", quiet, "Suppress the summary");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score alignment accuracy on perturbed copies");
  auto* base_opt = eval_cmd->add_option("--ref", eval.base_path, "Base keypoint JSON");
  eval_cmd->add_option("--synth", eval.synth_motion, "Synthesize the base with this motion")
      ->excludes(base_opt);
  eval_cmd->add_option("--seconds", eval.seconds, "Synthetic base duration");
  eval_cmd->add_option("--fps", eval.fps, "Synthetic base frame rate");
  eval_cmd->add_option("--seed", eval.seed, "Seed for synthesis and perturbations");
  eval_cmd->add_option("--scenarios", eval.scenarios_path, "Scenario suite JSON (default: built-in)");
  eval_cmd->add_option("--tolerance", eval.tolerance, "Frames of slack when counting a match");
  eval_cmd->add_option("--out", eval.out_path, "Report JSON output");
  eval_cmd->add_option("--jobs", eval.jobs, "Scenarios evaluated concurrently")
      ->check(CLI::Range(1u, 64u));
  add_metric_flags(eval_cmd, eval.metric);
  eval_cmd->add_flag("--quiet", quiet, "Suppress the table");

  PlotOptions plot_opts;
  auto* plot_cmd = app.add_subcommand("plot", "Render an alignment as SVG");
  plot_cmd->add_option("alignment,--alignment", plot_opts.alignment_path, "Alignment JSON")
      ->required();
  plot_cmd->add_option("--out", plot_opts.out_path, "SVG output")->required();
  plot_cmd->add_option("--csv", plot_opts.csv_path, "Per-step cost profile CSV output");
  plot_cmd->add_flag("--quiet", quiet, "Suppress the summary");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  try {
    if (*align_cmd) return cmd_align(align, quiet, out);
    if (*synth_cmd) return cmd_synth(synth, quiet, out);
    if (*eval_cmd) return cmd_eval(eval, quiet, out);
    if (*plot_cmd) return cmd_plot(plot_opts, quiet, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::incomparable ? kIncomparable : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace posesync::cli
