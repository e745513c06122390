#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posesync/keypoints.hpp"

namespace posesync {

enum class InsertPosition { start, middle, end };

std::string_view to_string(InsertPosition position);
std::optional<InsertPosition> insert_position_from_string(std::string_view text);

struct Identity {};

/// Retimes frames [start_frac, end_frac) of the source by `factor`
/// (0.5 plays the region at half speed, i.e. twice as many frames).
struct SpeedChange {
  double factor = 1.0;
  double start_frac = 0.0;
  double end_frac = 1.0;
};

/// Splices llround(duration_seconds * fps) seeded random poses.
struct InsertNoise {
  double duration_seconds = 1.0;
  InsertPosition position = InsertPosition::middle;
};

/// Splices the first llround(duration_seconds * fps) donor frames (cycled
/// if the donor is shorter).
struct InsertClip {
  double duration_seconds = 1.0;
  InsertPosition position = InsertPosition::middle;
  std::shared_ptr<const PoseSequence> donor;
};

/// Cuts the source at the interior fractions `cuts` (strictly increasing,
/// in (0, 1)) and emits the segments in `order`. A full permutation keeps
/// every frame; omitting segments deletes them.
struct ReorderSegments {
  std::vector<double> cuts;
  std::vector<std::size_t> order;
};

/// Mirrors x -> 1 - x and swaps left/right keypoint labels.
struct FlipHorizontal {};

/// Scales every keypoint about (center_x, center_y).
struct Zoom {
  double scale = 1.0;
  double center_x = 0.5;
  double center_y = 0.5;
};

using PerturbationSpec =
    std::variant<Identity, SpeedChange, InsertNoise, InsertClip, ReorderSegments, FlipHorizontal, Zoom>;

std::string_view kind_name(const PerturbationSpec& spec);
std::string describe(const PerturbationSpec& spec);

/// Throws Error(invalid_argument) when the spec is malformed or does not fit a
/// source of `source_length` frames.
void validate_spec(const PerturbationSpec& spec, std::size_t source_length);

/// Frame correspondence induced by a perturbation.
struct GroundTruthMap {
  /// For each reference frame, the true test frame (nullopt if deleted).
  std::vector<std::optional<std::size_t>> ref_to_test;
  /// For each test frame, the reference frame it was derived from (nullopt for noise).
  std::vector<std::optional<std::size_t>> test_to_ref;

  std::size_t n_ref() const { return ref_to_test.size(); }
  std::size_t n_test() const { return test_to_ref.size(); }
  bool is_noise(std::size_t test_index) const { return !test_to_ref[test_index].has_value(); }
  std::size_t expected_count() const;

  enum class Missing { nearest_survivor, no_correspondence };

  /// Builds ref_to_test from test_to_ref: the lower median of the test frames
  /// copied from each reference frame. A reference frame with no copy maps to
  /// the copy of the nearest surviving reference frame (earlier on ties) under
  /// nearest_survivor, which models frames dropped by resampling.
  static GroundTruthMap from_sources(std::size_t n_ref,
                                     std::vector<std::optional<std::size_t>> test_to_ref,
                                     Missing missing);
};

struct Perturbed {
  PoseSequence sequence;
  GroundTruthMap truth;
};

/// Output length predicted from the spec alone.
std::size_t perturbed_length(const PerturbationSpec& spec, std::size_t source_length, double fps);

Perturbed apply_perturbation(const PoseSequence& source, const PerturbationSpec& spec,
                             std::uint64_t seed);

}  // namespace posesync
