#include <memory>
#include <string>

#include <gtest/gtest.h>

#include "posesync/error.hpp"
#include "posesync/perturbation.hpp"
#include "posesync/synth.hpp"

namespace posesync {
namespace {

using K = KeypointName;

const PoseSequence& base() {
  static const PoseSequence seq = synth_sequence(Motion::arm_wave, 4.0, 25.0, 9);
  return seq;
}

bool same_frame(const PoseFrame& a, const PoseFrame& b) {
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    if (a.keypoints[k].x != b.keypoints[k].x || a.keypoints[k].y != b.keypoints[k].y ||
        a.keypoints[k].confidence != b.keypoints[k].confidence)
      return false;
  }
  return true;
}

// Every test frame with a known source must be a copy of it (modulo the
// geometric perturbations, which are checked separately).
void expect_copies_match(const PoseSequence& src, const Perturbed& p) {
  ASSERT_EQ(p.truth.n_test(), p.sequence.size());
  for (std::size_t j = 0; j < p.sequence.size(); ++j) {
    if (const auto i = p.truth.test_to_ref[j]) {
      EXPECT_TRUE(same_frame(p.sequence.frames[j], src.frames[*i])) << "test frame " << j;
    }
  }
}

void expect_truth_consistent(const GroundTruthMap& truth) {
  for (std::size_t i = 0; i < truth.n_ref(); ++i) {
    if (const auto j = truth.ref_to_test[i]) {
      ASSERT_LT(*j, truth.n_test());
      EXPECT_FALSE(truth.is_noise(*j));
    }
  }
}

TEST(Perturbation, IdentityKeepsEverything) {
  const auto p = apply_perturbation(base(), Identity{}, 0);
  ASSERT_EQ(p.sequence.size(), base().size());
  for (std::size_t i = 0; i < base().size(); ++i) EXPECT_EQ(p.truth.ref_to_test[i], i);
  expect_copies_match(base(), p);
}

TEST(Perturbation, FlipMirrorsAndSwapsLabels) {
  const auto p = apply_perturbation(base(), FlipHorizontal{}, 0);
  ASSERT_EQ(p.sequence.size(), base().size());
  for (std::size_t k = 0; k < base().size(); ++k) {
    const auto& in = base().frames[k];
    const auto& out = p.sequence.frames[k];
    EXPECT_DOUBLE_EQ(out[K::left_shoulder].x, 1.0 - in[K::right_shoulder].x);
    EXPECT_DOUBLE_EQ(out[K::left_shoulder].y, in[K::right_shoulder].y);
    EXPECT_DOUBLE_EQ(out[K::nose].x, 1.0 - in[K::nose].x);
    EXPECT_EQ(p.truth.ref_to_test[k], k);
  }
}

TEST(Perturbation, HalfSpeedDoublesFrames) {
  PoseSequence src = base();
  src.frames.resize(50);
  const auto p = apply_perturbation(src, SpeedChange{0.5, 0.0, 1.0}, 0);
  ASSERT_EQ(p.sequence.size(), 100u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(p.truth.ref_to_test[i], 2 * i);
  expect_copies_match(src, p);
}

TEST(Perturbation, DoubleSpeedDropsFramesToNearestSurvivor) {
  PoseSequence src = base();
  src.frames.resize(50);
  const auto p = apply_perturbation(src, SpeedChange{2.0, 0.0, 1.0}, 0);
  ASSERT_EQ(p.sequence.size(), 25u);
  for (std::size_t j = 0; j < 25; ++j) EXPECT_EQ(p.truth.test_to_ref[j], 2 * j);
  // odd frames were dropped; ties go to the earlier survivor
  for (std::size_t i = 1; i < 49; i += 2) EXPECT_EQ(p.truth.ref_to_test[i], (i - 1) / 2);
  EXPECT_EQ(p.truth.ref_to_test[49], 24u);
  EXPECT_EQ(p.truth.expected_count(), 50u);
}

TEST(Perturbation, PartialSlowdownLeavesTheRestAlone) {
  const auto p = apply_perturbation(base(), SpeedChange{0.5, 0.25, 0.5}, 0);
  // frames [25, 50) are doubled
  ASSERT_EQ(p.sequence.size(), 125u);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i);
  for (std::size_t i = 25; i < 50; ++i) EXPECT_EQ(p.truth.ref_to_test[i], 25 + 2 * (i - 25));
  for (std::size_t i = 50; i < 100; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i + 25);
  expect_copies_match(base(), p);
}

TEST(Perturbation, NoiseInsertedInTheMiddle) {
  const auto p = apply_perturbation(base(), InsertNoise{1.0, InsertPosition::middle}, 4);
  ASSERT_EQ(p.sequence.size(), 125u);
  for (std::size_t j = 50; j < 75; ++j) EXPECT_TRUE(p.truth.is_noise(j));
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i);
  for (std::size_t i = 50; i < 100; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i + 25);
  EXPECT_TRUE(validate_sequence(p.sequence).empty());
  expect_copies_match(base(), p);
}

TEST(Perturbation, NoiseAtStartAndEnd) {
  const auto start = apply_perturbation(base(), InsertNoise{2.0, InsertPosition::start}, 1);
  for (std::size_t j = 0; j < 50; ++j) EXPECT_TRUE(start.truth.is_noise(j));
  EXPECT_EQ(start.truth.ref_to_test[0], 50u);
  const auto end = apply_perturbation(base(), InsertNoise{2.0, InsertPosition::end}, 1);
  for (std::size_t j = 100; j < 150; ++j) EXPECT_TRUE(end.truth.is_noise(j));
  EXPECT_EQ(end.truth.ref_to_test[99], 99u);
}

TEST(Perturbation, NoiseDependsOnSeedOnly) {
  const InsertNoise spec{1.0, InsertPosition::start};
  const auto a = apply_perturbation(base(), spec, 8);
  const auto b = apply_perturbation(base(), spec, 8);
  const auto c = apply_perturbation(base(), spec, 9);
  EXPECT_TRUE(same_frame(a.sequence.frames[3], b.sequence.frames[3]));
  EXPECT_FALSE(same_frame(a.sequence.frames[3], c.sequence.frames[3]));
}

TEST(Perturbation, ClipCyclesAShortDonor) {
  auto donor = std::make_shared<PoseSequence>(synth_sequence(Motion::squat, 0.4, 25.0, 2));
  ASSERT_EQ(donor->size(), 10u);
  const auto p = apply_perturbation(base(), InsertClip{1.0, InsertPosition::end, donor}, 0);
  ASSERT_EQ(p.sequence.size(), 125u);
  for (std::size_t k = 0; k < 25; ++k) {
    EXPECT_TRUE(p.truth.is_noise(100 + k));
    EXPECT_TRUE(same_frame(p.sequence.frames[100 + k], donor->frames[k % 10]));
  }
}

TEST(Perturbation, ReorderSwapsHalves) {
  const auto p = apply_perturbation(base(), ReorderSegments{{0.5}, {1, 0}}, 0);
  ASSERT_EQ(p.sequence.size(), 100u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i + 50);
  for (std::size_t i = 50; i < 100; ++i) EXPECT_EQ(p.truth.ref_to_test[i], i - 50);
  expect_copies_match(base(), p);
}

TEST(Perturbation, ReorderCanDeleteSegments) {
  const auto p = apply_perturbation(base(), ReorderSegments{{0.25, 0.5}, {0, 2}}, 0);
  ASSERT_EQ(p.sequence.size(), 75u);
  EXPECT_EQ(p.truth.expected_count(), 75u);
  for (std::size_t i = 25; i < 50; ++i) EXPECT_FALSE(p.truth.ref_to_test[i].has_value());
  EXPECT_EQ(p.truth.ref_to_test[50], 25u);
}

TEST(Perturbation, ZoomScalesAboutTheCenter) {
  const auto p = apply_perturbation(base(), Zoom{1.5, 0.5, 0.4}, 0);
  for (std::size_t k = 0; k < base().size(); k += 17) {
    const auto& in = base().frames[k][K::left_wrist];
    const auto& out = p.sequence.frames[k][K::left_wrist];
    EXPECT_DOUBLE_EQ(out.x, 0.5 + 1.5 * (in.x - 0.5));
    EXPECT_DOUBLE_EQ(out.y, 0.4 + 1.5 * (in.y - 0.4));
    EXPECT_EQ(out.confidence, in.confidence);
  }
}

TEST(Perturbation, PredictedLengthMatches) {
  auto donor = std::make_shared<PoseSequence>(synth_sequence(Motion::squat, 1.0, 25.0, 2));
  const std::vector<PerturbationSpec> specs = {
      Identity{},
      FlipHorizontal{},
      Zoom{0.7, 0.5, 0.5},
      SpeedChange{0.25, 0.0, 1.0},
      SpeedChange{3.0, 0.1, 0.9},
      SpeedChange{0.7, 0.33, 0.61},
      InsertNoise{0.6, InsertPosition::middle},
      InsertClip{1.3, InsertPosition::start, donor},
      ReorderSegments{{0.3, 0.6}, {2, 0, 1}},
      ReorderSegments{{0.3}, {1}},
  };
  for (const auto& spec : specs) {
    const auto p = apply_perturbation(base(), spec, 1);
    EXPECT_EQ(p.sequence.size(), perturbed_length(spec, base().size(), base().fps))
        << describe(spec);
    expect_truth_consistent(p.truth);
  }
}

TEST(Perturbation, TruthIsMonotoneWithinContiguousSegments) {
  for (const PerturbationSpec& spec :
       {PerturbationSpec{SpeedChange{0.3, 0.2, 0.7}}, PerturbationSpec{SpeedChange{2.5, 0.0, 1.0}},
        PerturbationSpec{InsertNoise{1.5, InsertPosition::middle}}}) {
    const auto p = apply_perturbation(base(), spec, 0);
    std::size_t last = 0;
    for (const auto& t : p.truth.ref_to_test) {
      ASSERT_TRUE(t.has_value());
      EXPECT_GE(*t, last);
      last = *t;
    }
  }
}

TEST(Perturbation, InvalidSpecs) {
  const std::vector<PerturbationSpec> bad = {
      SpeedChange{0.0, 0.0, 1.0},
      SpeedChange{-1.0, 0.0, 1.0},
      SpeedChange{1.0, 0.6, 0.4},
      SpeedChange{1.0, 0.0, 1.5},
      InsertNoise{0.0, InsertPosition::end},
      InsertClip{1.0, InsertPosition::end, nullptr},
      ReorderSegments{{0.5}, {0, 0}},
      ReorderSegments{{0.5}, {2}},
      ReorderSegments{{1.2}, {0}},
      ReorderSegments{{0.5}, {}},
      Zoom{0.0, 0.5, 0.5},
  };
  for (const auto& spec : bad) {
    try {
      apply_perturbation(base(), spec, 0);
      ADD_FAILURE() << "accepted " << describe(spec);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
    }
  }
}

TEST(Perturbation, KindNames) {
  EXPECT_EQ(kind_name(SpeedChange{}), "speed_change");
  EXPECT_EQ(kind_name(FlipHorizontal{}), "flip_horizontal");
  EXPECT_EQ(insert_position_from_string("middle"), InsertPosition::middle);
  EXPECT_FALSE(insert_position_from_string("centre").has_value());
}

}  // namespace
}  // namespace posesync
