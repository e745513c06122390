#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posesync/keypoints.hpp"
#include "posesync/metrics.hpp"

namespace posesync {

/// Dense row-major matrix of non-negative pairwise frame costs; rows index
/// the reference sequence and columns the test sequence.
class CostMatrix {
 public:
  /// Throws Error(invalid_argument) on empty dimensions, size mismatch, or
  /// negative / non-finite cells.
  CostMatrix(std::size_t n_ref, std::size_t n_test, std::vector<double> cells);

  std::size_t n_ref() const { return n_ref_; }
  std::size_t n_test() const { return n_test_; }
  double operator()(std::size_t i, std::size_t j) const { return cells_[i * n_test_ + j]; }
  const std::vector<double>& cells() const { return cells_; }

  CostMatrix transposed() const;

  /// Cost matrix of two scalar series under |a - b|.
  static CostMatrix absolute_difference(const std::vector<double>& ref,
                                        const std::vector<double>& test);

 private:
  std::size_t n_ref_;
  std::size_t n_test_;
  std::vector<double> cells_;
};

struct BuildOptions {
  /// Worker threads for cell evaluation; results are identical for any count.
  unsigned threads = 1;
};

/// cell(i, j) = metric(ref[i], test[j]). Pairs sharing no valid joints are
/// filled with (largest comparable cost + metric range unit). Throws
/// Error(incomparable) if no pair is comparable.
CostMatrix build_cost_matrix(const PoseSequence& ref, const PoseSequence& test,
                             const MetricConfig& config, const BuildOptions& options = {});

struct PathStep {
  std::size_t ref = 0;
  std::size_t test = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

using WarpingPath = std::vector<PathStep>;

struct RefMatch {
  std::size_t ref = 0;
  std::vector<std::size_t> test;  // contiguous, ascending
  std::size_t representative = 0;

  friend bool operator==(const RefMatch&, const RefMatch&) = default;
};

struct AlignmentResult {
  WarpingPath path;
  double total_cost = 0.0;
  double normalized_cost = 0.0;
  std::vector<RefMatch> ref_to_test;
  /// Cell cost of each path step (same length as path); empty when unknown.
  std::vector<double> step_costs;
};

struct DtwOptions {
  /// Sakoe-Chiba half-width; widened to |n_ref - n_test| so a path always exists.
  std::optional<std::size_t> band;
};

/// Minimal-cost symmetric unit-step warping path. Backtracking breaks ties
/// diagonal first, then vertical (advance reference), then horizontal.
AlignmentResult dtw_align(const CostMatrix& cost, const DtwOptions& options = {});

/// For each reference index: matched test indices and their lower median.
std::vector<RefMatch> extract_mapping(const WarpingPath& path);

/// Boundary, continuity, monotonicity and coverage checks; empty when valid.
std::vector<std::string> path_violations(const WarpingPath& path, std::size_t n_ref,
                                         std::size_t n_test);

/// Sum of cells along the path, accumulated from the first step.
double path_cost(const CostMatrix& cost, const WarpingPath& path);

}  // namespace posesync
