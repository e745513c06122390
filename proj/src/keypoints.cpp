#include "posesync/keypoints.hpp"

#include <charconv>
#include <cmath>

#include "posesync/error.hpp"

namespace posesync {

namespace {

constexpr std::array<std::string_view, kNumKeypoints> kNames = {
    "nose",          "left_eye",       "right_eye",  "left_ear",    "right_ear",
    "left_shoulder", "right_shoulder", "left_elbow", "right_elbow", "left_wrist",
    "right_wrist",   "left_hip",       "right_hip",  "left_knee",   "right_knee",
    "left_ankle",    "right_ankle",
};

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

KeypointName keypoint_at(std::size_t index) {
  if (index >= kNumKeypoints) {
    throw Error(ErrorKind::invalid_argument,
                "keypoint index " + std::to_string(index) + " out of range");
  }
  return static_cast<KeypointName>(index);
}

std::string_view name_of(KeypointName name) { return kNames[index_of(name)]; }

std::optional<KeypointName> keypoint_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumKeypoints; ++i) {
    if (kNames[i] == name) return static_cast<KeypointName>(i);
  }
  return std::nullopt;
}

KeypointName mirror_of(KeypointName name) {
  // Paired names are adjacent in canonical order: odd index = left, even = right.
  const std::size_t i = index_of(name);
  if (i == 0) return name;
  return static_cast<KeypointName>(i % 2 == 1 ? i + 1 : i - 1);
}

const std::array<std::string_view, kNumKeypoints>& keypoint_names() { return kNames; }

std::string Violation::describe() const {
  std::string out;
  if (frame) out += "frame " + std::to_string(*frame) + ": ";
  if (keypoint) out += std::string(name_of(*keypoint)) + ".";
  out += field + ": " + rule;
  return out;
}

std::optional<std::pair<int, int>> parse_format_version(std::string_view version) {
  const auto dot = version.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto major = parse_int(version.substr(0, dot));
  auto minor = parse_int(version.substr(dot + 1));
  if (!major || !minor || *major < 0 || *minor < 0) return std::nullopt;
  return std::pair{*major, *minor};
}

std::vector<Violation> validate_sequence(const PoseSequence& seq) {
  std::vector<Violation> out;

  const auto version = parse_format_version(seq.format_version);
  if (!version) {
    out.push_back({std::nullopt, std::nullopt, "format_version",
                   "'" + seq.format_version + "' is not of the form major.minor"});
  } else if (version->first != kFormatMajor) {
    out.push_back({std::nullopt, std::nullopt, "format_version",
                   "unsupported major version " + std::to_string(version->first)});
  }
  if (!std::isfinite(seq.fps) || seq.fps <= 0.0) {
    out.push_back({std::nullopt, std::nullopt, "fps", "must be a finite number > 0"});
  }
  if (seq.frames.empty()) {
    out.push_back({std::nullopt, std::nullopt, "frames", "must contain at least one frame"});
  }

  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    for (std::size_t k = 0; k < kNumKeypoints; ++k) {
      const Keypoint& kp = seq.frames[f].keypoints[k];
      const auto name = static_cast<KeypointName>(k);
      if (!std::isfinite(kp.x)) out.push_back({f, name, "x", "must be finite"});
      if (!std::isfinite(kp.y)) out.push_back({f, name, "y", "must be finite"});
      if (!std::isfinite(kp.confidence) || kp.confidence < 0.0 || kp.confidence > 1.0) {
        out.push_back({f, name, "confidence", "must lie in [0, 1]"});
      }
    }
  }
  return out;
}

}  // namespace posesync
