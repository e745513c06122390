#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posesync/keypoints.hpp"

namespace posesync {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Vectors shorter than this make an angle undefined.
inline constexpr double kMinVectorNorm = 1e-12;

/// Unsigned angle in [0, pi] between (a - pivot) and (c - pivot), or nullopt
/// when either vector is degenerate. Uses atan2(|cross|, dot).
std::optional<double> angle_at_pivot(Point2 a, Point2 pivot, Point2 c);

/// Three keypoints spanning an articulation angle at `pivot`.
class JointTriplet {
 public:
  /// Throws Error(invalid_argument) if `a` or `c` coincides with the pivot.
  JointTriplet(std::string name, KeypointName a, KeypointName pivot, KeypointName c);

  const std::string& name() const { return name_; }
  KeypointName a() const { return a_; }
  KeypointName pivot() const { return pivot_; }
  KeypointName c() const { return c_; }

 private:
  std::string name_;
  KeypointName a_;
  KeypointName pivot_;
  KeypointName c_;
};

/// Joint triplets with one non-negative weight each (weights sum > 0).
class JointSet {
 public:
  JointSet(std::vector<JointTriplet> triplets, std::vector<double> weights);

  /// Shoulders, elbows, hips, knees and waist with unit weights.
  static JointSet standard();

  const std::vector<JointTriplet>& triplets() const { return triplets_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return triplets_.size(); }

  JointSet with_weights(std::vector<double> weights) const;

 private:
  std::vector<JointTriplet> triplets_;
  std::vector<double> weights_;
};

/// Per-triplet angles in radians; nullopt where undefined or gated out.
struct JointAngleVector {
  std::vector<std::optional<double>> angles;

  bool valid(std::size_t i) const { return angles[i].has_value(); }
  std::size_t valid_count() const;
};

enum class MetricKind { angle_mae, keypoint_mae };
enum class Normalization { none, bounding_box };

inline constexpr double kDefaultConfidenceThreshold = 0.1;

constexpr std::array<double, kNumKeypoints> unit_keypoint_weights() {
  std::array<double, kNumKeypoints> w{};
  w.fill(1.0);
  return w;
}

struct MetricConfig {
  MetricKind kind = MetricKind::angle_mae;
  JointSet joint_set = JointSet::standard();
  std::array<double, kNumKeypoints> keypoint_weights = unit_keypoint_weights();
  double confidence_threshold = kDefaultConfidenceThreshold;
  Normalization normalization = Normalization::none;  // keypoint_mae only

  /// Throws Error(invalid_argument) on out-of-range threshold or weights.
  void validate() const;
};

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> metric_kind_from_string(std::string_view text);
std::string_view to_string(Normalization norm);
std::optional<Normalization> normalization_from_string(std::string_view text);

/// Width of the metric's value range; used to penalise incomparable pairs.
double metric_range_unit(const MetricConfig& config);

JointAngleVector frame_angles(const PoseFrame& frame, const JointSet& joint_set,
                              double confidence_threshold);

/// Weighted mean absolute difference over joints valid in both vectors, with
/// weights renormalised over that subset. Throws Error(incomparable) when the
/// subset is empty or carries zero total weight.
double angle_mae(const JointAngleVector& a, const JointAngleVector& b,
                 std::span<const double> weights);

double angle_mae(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config);

/// Weighted mean Euclidean keypoint distance over keypoints confident in both
/// frames, optionally after mapping each frame into its own bounding box.
double keypoint_mae(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config);

/// Dispatches on config.kind.
double frame_cost(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config);

}  // namespace posesync
