#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace posesync {

inline constexpr std::size_t kNumKeypoints = 17;

/// The 17-point single-person skeleton, in the order pose models emit it.
enum class KeypointName : std::uint8_t {
  nose,
  left_eye,
  right_eye,
  left_ear,
  right_ear,
  left_shoulder,
  right_shoulder,
  left_elbow,
  right_elbow,
  left_wrist,
  right_wrist,
  left_hip,
  right_hip,
  left_knee,
  right_knee,
  left_ankle,
  right_ankle,
};

constexpr std::size_t index_of(KeypointName name) {
  return static_cast<std::size_t>(name);
}

/// Throws Error(invalid_argument) for index >= kNumKeypoints.
KeypointName keypoint_at(std::size_t index);

std::string_view name_of(KeypointName name);
std::optional<KeypointName> keypoint_from_name(std::string_view name);

/// The left/right counterpart (nose maps to itself).
KeypointName mirror_of(KeypointName name);

/// All names in canonical order.
const std::array<std::string_view, kNumKeypoints>& keypoint_names();

/// Normalized image coordinates (y grows downward) plus detector confidence.
struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double confidence = 0.0;

  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

struct PoseFrame {
  std::array<Keypoint, kNumKeypoints> keypoints{};

  const Keypoint& operator[](KeypointName name) const { return keypoints[index_of(name)]; }
  Keypoint& operator[](KeypointName name) { return keypoints[index_of(name)]; }

  friend bool operator==(const PoseFrame&, const PoseFrame&) = default;
};

inline constexpr std::string_view kFormatVersion = "1.0";
inline constexpr int kFormatMajor = 1;

struct PoseSequence {
  std::vector<PoseFrame> frames;
  double fps = 25.0;
  std::string source;
  std::string format_version{kFormatVersion};

  std::size_t size() const { return frames.size(); }
  double duration_seconds() const { return static_cast<double>(frames.size()) / fps; }
};

struct Violation {
  std::optional<std::size_t> frame;
  std::optional<KeypointName> keypoint;
  std::string field;  // "x", "y", "confidence", "fps", "frames", "format_version"
  std::string rule;

  std::string describe() const;
};

/// Empty iff every invariant of the sequence holds.
std::vector<Violation> validate_sequence(const PoseSequence& seq);

/// Parses "major.minor"; nullopt when malformed.
std::optional<std::pair<int, int>> parse_format_version(std::string_view version);

}  // namespace posesync
