#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "posesync/keypoints.hpp"

namespace posesync {

/// Seeded generator with a platform-independent double conversion; the
/// standard distributions are implementation-defined, so they are not used
/// anywhere output must be reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

enum class Motion { arm_wave, squat, walk_cycle };

std::string_view to_string(Motion motion);
std::optional<Motion> motion_from_string(std::string_view text);

/// Deterministic 17-keypoint animation with llround(seconds * fps) frames.
/// Joint trajectories are smooth and quasi-periodic; keypoints carry seeded
/// jitter of +-0.002 and confidence 1. Throws Error(invalid_argument) unless
/// seconds and fps are positive and seconds * fps >= 2.
PoseSequence synth_sequence(Motion motion, double seconds, double fps, std::uint64_t seed);

/// An anatomically plausible pose with independently random joint angles,
/// placement and confidences in [0.5, 1].
PoseFrame random_pose(Rng& rng);

}  // namespace posesync
