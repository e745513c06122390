#include "posesync/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "posesync/error.hpp"

namespace posesync {

namespace {

void check_weights(std::span<const double> weights, std::string_view what) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::invalid_argument,
                  std::string(what) + " must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                std::string(what) + " must contain at least one positive weight");
  }
}

Point2 point_of(const Keypoint& kp) { return {kp.x, kp.y}; }

struct Box {
  double min_x, min_y, diagonal;
};

Box bounding_box(const PoseFrame& frame, double threshold) {
  double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
  for (const Keypoint& kp : frame.keypoints) {
    if (kp.confidence < threshold) continue;
    min_x = std::min(min_x, kp.x);
    min_y = std::min(min_y, kp.y);
    max_x = std::max(max_x, kp.x);
    max_y = std::max(max_y, kp.y);
  }
  if (!std::isfinite(min_x)) {
    throw Error(ErrorKind::incomparable, "no confident keypoints to bound");
  }
  const double diagonal = std::hypot(max_x - min_x, max_y - min_y);
  if (diagonal < 1e-9) {
    throw Error(ErrorKind::incomparable, "degenerate pose bounding box");
  }
  return {min_x, min_y, diagonal};
}

}  // namespace

std::optional<double> angle_at_pivot(Point2 a, Point2 pivot, Point2 c) {
  const double ux = a.x - pivot.x, uy = a.y - pivot.y;
  const double vx = c.x - pivot.x, vy = c.y - pivot.y;
  if (std::hypot(ux, uy) < kMinVectorNorm || std::hypot(vx, vy) < kMinVectorNorm) {
    return std::nullopt;
  }
  const double cross = ux * vy - uy * vx;
  const double dot = ux * vx + uy * vy;
  return std::atan2(std::abs(cross), dot);
}

JointTriplet::JointTriplet(std::string name, KeypointName a, KeypointName pivot, KeypointName c)
    : name_(std::move(name)), a_(a), pivot_(pivot), c_(c) {
  if (a == pivot || c == pivot) {
    throw Error(ErrorKind::invalid_argument,
                "joint '" + name_ + "' is degenerate: an end point equals the pivot");
  }
}

JointSet::JointSet(std::vector<JointTriplet> triplets, std::vector<double> weights)
    : triplets_(std::move(triplets)), weights_(std::move(weights)) {
  if (triplets_.empty()) {
    throw Error(ErrorKind::invalid_argument, "joint set must contain at least one triplet");
  }
  if (weights_.size() != triplets_.size()) {
    throw Error(ErrorKind::invalid_argument,
                "joint set has " + std::to_string(triplets_.size()) + " triplets but " +
                    std::to_string(weights_.size()) + " weights");
  }
  check_weights(weights_, "joint weights");
}

JointSet JointSet::standard() {
  using K = KeypointName;
  std::vector<JointTriplet> triplets{
      {"left_shoulder_joint", K::left_hip, K::left_shoulder, K::left_elbow},
      {"right_shoulder_joint", K::right_hip, K::right_shoulder, K::right_elbow},
      {"right_elbow_joint", K::right_shoulder, K::right_elbow, K::right_wrist},
      {"left_elbow_joint", K::left_shoulder, K::left_elbow, K::left_wrist},
      {"right_hip_joint", K::left_hip, K::right_hip, K::right_knee},
      {"left_hip_joint", K::right_hip, K::left_hip, K::left_knee},
      {"right_knee_joint", K::right_hip, K::right_knee, K::right_ankle},
      {"left_knee_joint", K::left_hip, K::left_knee, K::left_ankle},
      {"waist_joint", K::left_shoulder, K::left_hip, K::left_knee},
  };
  std::vector<double> weights(triplets.size(), 1.0);
  return JointSet(std::move(triplets), std::move(weights));
}

JointSet JointSet::with_weights(std::vector<double> weights) const {
  return JointSet(triplets_, std::move(weights));
}

std::size_t JointAngleVector::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(angles.begin(), angles.end(), [](const auto& a) { return a.has_value(); }));
}

void MetricConfig::validate() const {
  if (!std::isfinite(confidence_threshold) || confidence_threshold < 0.0 ||
      confidence_threshold > 1.0) {
    throw Error(ErrorKind::invalid_argument, "confidence_threshold must lie in [0, 1]");
  }
  if (kind == MetricKind::keypoint_mae) check_weights(keypoint_weights, "keypoint weights");
}

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::angle_mae ? "angle_mae" : "keypoint_mae";
}

std::optional<MetricKind> metric_kind_from_string(std::string_view text) {
  if (text == "angle_mae" || text == "angle-mae") return MetricKind::angle_mae;
  if (text == "keypoint_mae" || text == "keypoint-mae") return MetricKind::keypoint_mae;
  return std::nullopt;
}

std::string_view to_string(Normalization norm) {
  return norm == Normalization::none ? "none" : "bounding_box";
}

std::optional<Normalization> normalization_from_string(std::string_view text) {
  if (text == "none") return Normalization::none;
  if (text == "bounding_box" || text == "bounding-box") return Normalization::bounding_box;
  return std::nullopt;
}

double metric_range_unit(const MetricConfig& config) {
  // Box-normalised keypoints live in a box of unit diagonal; raw normalised
  // coordinates are measured in image widths.
  return config.kind == MetricKind::angle_mae ? std::numbers::pi : 1.0;
}

JointAngleVector frame_angles(const PoseFrame& frame, const JointSet& joint_set,
                              double confidence_threshold) {
  JointAngleVector out;
  out.angles.reserve(joint_set.size());
  for (const JointTriplet& t : joint_set.triplets()) {
    const Keypoint& a = frame[t.a()];
    const Keypoint& p = frame[t.pivot()];
    const Keypoint& c = frame[t.c()];
    if (a.confidence < confidence_threshold || p.confidence < confidence_threshold ||
        c.confidence < confidence_threshold) {
      out.angles.emplace_back(std::nullopt);
      continue;
    }
    out.angles.push_back(angle_at_pivot(point_of(a), point_of(p), point_of(c)));
  }
  return out;
}

double angle_mae(const JointAngleVector& a, const JointAngleVector& b,
                 std::span<const double> weights) {
  if (a.angles.size() != weights.size() || b.angles.size() != weights.size()) {
    throw Error(ErrorKind::invalid_argument, "angle vectors and weights differ in length");
  }
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!a.valid(i) || !b.valid(i)) continue;
    weighted += weights[i] * std::abs(*a.angles[i] - *b.angles[i]);
    total += weights[i];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::incomparable, "no joint is valid in both frames");
  }
  return weighted / total;
}

double angle_mae(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config) {
  const auto& joints = config.joint_set;
  return angle_mae(frame_angles(a, joints, config.confidence_threshold),
                   frame_angles(b, joints, config.confidence_threshold), joints.weights());
}

double keypoint_mae(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config) {
  const double threshold = config.confidence_threshold;
  std::optional<Box> box_a, box_b;
  if (config.normalization == Normalization::bounding_box) {
    box_a = bounding_box(a, threshold);
    box_b = bounding_box(b, threshold);
  }
  auto normalized = [](const Keypoint& kp, const std::optional<Box>& box) {
    if (!box) return Point2{kp.x, kp.y};
    return Point2{(kp.x - box->min_x) / box->diagonal, (kp.y - box->min_y) / box->diagonal};
  };

  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    const Keypoint& ka = a.keypoints[k];
    const Keypoint& kb = b.keypoints[k];
    if (ka.confidence < threshold || kb.confidence < threshold) continue;
    const double w = config.keypoint_weights[k];
    const Point2 pa = normalized(ka, box_a);
    const Point2 pb = normalized(kb, box_b);
    weighted += w * std::hypot(pa.x - pb.x, pa.y - pb.y);
    total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::incomparable, "no keypoint is valid in both frames");
  }
  return weighted / total;
}

double frame_cost(const PoseFrame& a, const PoseFrame& b, const MetricConfig& config) {
  return config.kind == MetricKind::angle_mae ? angle_mae(a, b, config)
                                              : keypoint_mae(a, b, config);
}

}  // namespace posesync
