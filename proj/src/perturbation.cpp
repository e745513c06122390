#include "posesync/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "posesync/error.hpp"
#include "posesync/synth.hpp"

namespace posesync {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_argument, what);
}

std::size_t frames_for(double seconds, double fps) {
  return static_cast<std::size_t>(std::llround(seconds * fps));
}

std::size_t insert_index(InsertPosition position, std::size_t n) {
  switch (position) {
    case InsertPosition::start:
      return 0;
    case InsertPosition::middle:
      return n / 2;
    case InsertPosition::end:
      return n;
  }
  return n;
}

struct Region {
  std::size_t begin, end, out_length;
};

Region speed_region(const SpeedChange& s, std::size_t n) {
  const auto begin = static_cast<std::size_t>(std::llround(s.start_frac * static_cast<double>(n)));
  const auto end = static_cast<std::size_t>(std::llround(s.end_frac * static_cast<double>(n)));
  if (end <= begin) invalid("speed_change region covers no frames");
  const auto out = std::max<long long>(
      1, std::llround(static_cast<double>(end - begin) / s.factor));
  return {begin, end, static_cast<std::size_t>(out)};
}

std::vector<std::size_t> segment_bounds(const ReorderSegments& r, std::size_t n) {
  std::vector<std::size_t> bounds{0};
  for (double cut : r.cuts) {
    bounds.push_back(static_cast<std::size_t>(std::llround(cut * static_cast<double>(n))));
  }
  bounds.push_back(n);
  for (std::size_t k = 1; k < bounds.size(); ++k) {
    if (bounds[k] <= bounds[k - 1]) invalid("reorder_segments produces an empty segment");
  }
  return bounds;
}

void check_insertion(double duration, const char* kind) {
  if (!std::isfinite(duration) || duration <= 0.0) {
    invalid(std::string(kind) + " duration_seconds must be > 0");
  }
}

PoseFrame mirrored(const PoseFrame& in) {
  PoseFrame out;
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    const Keypoint& src = in[mirror_of(keypoint_at(k))];
    out.keypoints[k] = {1.0 - src.x, src.y, src.confidence};
  }
  return out;
}

}  // namespace

std::string_view to_string(InsertPosition position) {
  switch (position) {
    case InsertPosition::start:
      return "start";
    case InsertPosition::middle:
      return "middle";
    case InsertPosition::end:
      return "end";
  }
  return "unknown";
}

std::optional<InsertPosition> insert_position_from_string(std::string_view text) {
  for (auto p : {InsertPosition::start, InsertPosition::middle, InsertPosition::end}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view kind_name(const PerturbationSpec& spec) {
  return std::visit(overloaded{
                        [](const Identity&) { return "identity"; },
                        [](const SpeedChange&) { return "speed_change"; },
                        [](const InsertNoise&) { return "insert_noise"; },
                        [](const InsertClip&) { return "insert_clip"; },
                        [](const ReorderSegments&) { return "reorder_segments"; },
                        [](const FlipHorizontal&) { return "flip_horizontal"; },
                        [](const Zoom&) { return "zoom"; },
                    },
                    spec);
}

std::string describe(const PerturbationSpec& spec) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Identity&) { out << "same video"; },
                 [&](const SpeedChange& s) {
                   out << "speed x" << s.factor;
                   if (s.start_frac > 0.0 || s.end_frac < 1.0) {
                     out << " over [" << s.start_frac << ", " << s.end_frac << ")";
                   }
                 },
                 [&](const InsertNoise& s) {
                   out << s.duration_seconds << " s noise at " << to_string(s.position);
                 },
                 [&](const InsertClip& s) {
                   out << s.duration_seconds << " s clip";
                   if (s.donor && !s.donor->source.empty()) out << " (" << s.donor->source << ")";
                   out << " at " << to_string(s.position);
                 },
                 [&](const ReorderSegments& s) {
                   out << "segments reordered as";
                   for (auto k : s.order) out << ' ' << k;
                 },
                 [&](const FlipHorizontal&) { out << "flipped video"; },
                 [&](const Zoom& s) { out << "zoom x" << s.scale; },
             },
             spec);
  return out.str();
}

void validate_spec(const PerturbationSpec& spec, std::size_t n) {
  if (n == 0) invalid("cannot perturb an empty sequence");
  std::visit(overloaded{
                 [](const Identity&) {},
                 [&](const SpeedChange& s) {
                   if (!std::isfinite(s.factor) || s.factor <= 0.0) {
                     invalid("speed_change factor must be > 0");
                   }
                   if (!(0.0 <= s.start_frac && s.start_frac < s.end_frac && s.end_frac <= 1.0)) {
                     invalid("speed_change region must satisfy 0 <= start < end <= 1");
                   }
                   speed_region(s, n);
                 },
                 [](const InsertNoise& s) { check_insertion(s.duration_seconds, "insert_noise"); },
                 [](const InsertClip& s) {
                   check_insertion(s.duration_seconds, "insert_clip");
                   if (!s.donor || s.donor->frames.empty()) invalid("insert_clip needs a donor sequence");
                 },
                 [&](const ReorderSegments& s) {
                   for (double c : s.cuts) {
                     if (!(c > 0.0 && c < 1.0)) invalid("reorder_segments cuts must lie in (0, 1)");
                   }
                   const auto segments = segment_bounds(s, n).size() - 1;
                   if (s.order.empty()) invalid("reorder_segments order is empty");
                   std::vector<bool> used(segments, false);
                   for (auto k : s.order) {
                     if (k >= segments || used[k]) {
                       invalid("reorder_segments order must list distinct segment indices below " +
                               std::to_string(segments));
                     }
                     used[k] = true;
                   }
                 },
                 [](const FlipHorizontal&) {},
                 [](const Zoom& s) {
                   if (!std::isfinite(s.scale) || s.scale <= 0.0) invalid("zoom scale must be > 0");
                   if (!std::isfinite(s.center_x) || !std::isfinite(s.center_y)) {
                     invalid("zoom center must be finite");
                   }
                 },
             },
             spec);
}

std::size_t GroundTruthMap::expected_count() const {
  return static_cast<std::size_t>(std::count_if(ref_to_test.begin(), ref_to_test.end(),
                                                [](const auto& t) { return t.has_value(); }));
}

GroundTruthMap GroundTruthMap::from_sources(std::size_t n_ref,
                                            std::vector<std::optional<std::size_t>> test_to_ref,
                                            Missing missing) {
  std::vector<std::vector<std::size_t>> copies(n_ref);
  for (std::size_t j = 0; j < test_to_ref.size(); ++j) {
    if (test_to_ref[j]) copies.at(*test_to_ref[j]).push_back(j);
  }
  GroundTruthMap truth;
  truth.ref_to_test.resize(n_ref);
  for (std::size_t i = 0; i < n_ref; ++i) {
    if (!copies[i].empty()) truth.ref_to_test[i] = copies[i][(copies[i].size() - 1) / 2];
  }
  if (missing == Missing::nearest_survivor) {
    for (std::size_t i = 0; i < n_ref; ++i) {
      if (!copies[i].empty()) continue;
      for (std::size_t d = 1; d < n_ref; ++d) {
        if (i >= d && !copies[i - d].empty()) {
          truth.ref_to_test[i] = truth.ref_to_test[i - d];
          break;
        }
        if (i + d < n_ref && !copies[i + d].empty()) {
          truth.ref_to_test[i] = truth.ref_to_test[i + d];
          break;
        }
      }
    }
  }
  truth.test_to_ref = std::move(test_to_ref);
  return truth;
}

std::size_t perturbed_length(const PerturbationSpec& spec, std::size_t n, double fps) {
  validate_spec(spec, n);
  return std::visit(overloaded{
                        [&](const SpeedChange& s) {
                          const Region r = speed_region(s, n);
                          return n - (r.end - r.begin) + r.out_length;
                        },
                        [&](const InsertNoise& s) { return n + frames_for(s.duration_seconds, fps); },
                        [&](const InsertClip& s) { return n + frames_for(s.duration_seconds, fps); },
                        [&](const ReorderSegments& s) {
                          const auto bounds = segment_bounds(s, n);
                          std::size_t total = 0;
                          for (auto k : s.order) total += bounds[k + 1] - bounds[k];
                          return total;
                        },
                        [&](const auto&) { return n; },
                    },
                    spec);
}

Perturbed apply_perturbation(const PoseSequence& source, const PerturbationSpec& spec,
                             std::uint64_t seed) {
  const std::size_t n = source.size();
  validate_spec(spec, n);

  Perturbed result;
  PoseSequence& out = result.sequence;
  out.fps = source.fps;
  out.format_version = source.format_version;
  out.source = source.source + " | " + describe(spec);

  std::vector<std::optional<std::size_t>> sources;
  auto copy = [&](std::size_t i) {
    out.frames.push_back(source.frames[i]);
    sources.emplace_back(i);
  };
  auto copy_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) copy(i);
  };
  auto insert = [&](InsertPosition position, std::size_t count, auto&& make_frame) {
    const std::size_t at = insert_index(position, n);
    copy_range(0, at);
    for (std::size_t k = 0; k < count; ++k) {
      out.frames.push_back(make_frame(k));
      sources.emplace_back(std::nullopt);
    }
    copy_range(at, n);
  };
  auto missing = GroundTruthMap::Missing::nearest_survivor;

  std::visit(
      overloaded{
          [&](const Identity&) { copy_range(0, n); },
          [&](const SpeedChange& s) {
            const Region r = speed_region(s, n);
            copy_range(0, r.begin);
            for (std::size_t k = 0; k < r.out_length; ++k) {
              // Sample-and-hold: the source frame on screen at output time k.
              const auto offset = static_cast<std::size_t>(
                  std::floor(static_cast<double>(k) * s.factor + 1e-9));
              copy(r.begin + std::min(offset, r.end - r.begin - 1));
            }
            copy_range(r.end, n);
          },
          [&](const InsertNoise& s) {
            Rng rng(seed);
            insert(s.position, frames_for(s.duration_seconds, source.fps),
                   [&](std::size_t) { return random_pose(rng); });
          },
          [&](const InsertClip& s) {
            const auto& donor = s.donor->frames;
            insert(s.position, frames_for(s.duration_seconds, source.fps),
                   [&](std::size_t k) { return donor[k % donor.size()]; });
          },
          [&](const ReorderSegments& s) {
            const auto bounds = segment_bounds(s, n);
            for (auto k : s.order) copy_range(bounds[k], bounds[k + 1]);
            missing = GroundTruthMap::Missing::no_correspondence;
          },
          [&](const FlipHorizontal&) {
            for (std::size_t i = 0; i < n; ++i) {
              out.frames.push_back(mirrored(source.frames[i]));
              sources.emplace_back(i);
            }
          },
          [&](const Zoom& s) {
            for (std::size_t i = 0; i < n; ++i) {
              PoseFrame frame = source.frames[i];
              for (Keypoint& kp : frame.keypoints) {
                kp.x = s.center_x + s.scale * (kp.x - s.center_x);
                kp.y = s.center_y + s.scale * (kp.y - s.center_y);
              }
              out.frames.push_back(frame);
              sources.emplace_back(i);
            }
          },
      },
      spec);

  result.truth = GroundTruthMap::from_sources(n, std::move(sources), missing);
  return result;
}

}  // namespace posesync
