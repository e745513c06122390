#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "posesync/error.hpp"
#include "posesync/keypoints.hpp"
#include "test_support.hpp"

namespace posesync {
namespace {

PoseSequence small_sequence(std::size_t frames) {
  PoseSequence seq;
  seq.fps = 25.0;
  seq.source = "unit";
  for (std::size_t f = 0; f < frames; ++f) seq.frames.push_back(testing::t_pose());
  return seq;
}

TEST(KeypointName, IndexNameBijection) {
  for (std::size_t i = 0; i < kNumKeypoints; ++i) {
    const KeypointName name = keypoint_at(i);
    EXPECT_EQ(index_of(name), i);
    auto back = keypoint_from_name(name_of(name));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(index_of(*back), i);
  }
}

TEST(KeypointName, CanonicalOrder) {
  EXPECT_EQ(name_of(KeypointName::nose), "nose");
  EXPECT_EQ(name_of(keypoint_at(5)), "left_shoulder");
  EXPECT_EQ(name_of(keypoint_at(16)), "right_ankle");
  EXPECT_FALSE(keypoint_from_name("neck").has_value());
  EXPECT_THROW(keypoint_at(17), Error);
}

TEST(KeypointName, MirrorSwapsSides) {
  EXPECT_EQ(mirror_of(KeypointName::nose), KeypointName::nose);
  EXPECT_EQ(mirror_of(KeypointName::left_wrist), KeypointName::right_wrist);
  EXPECT_EQ(mirror_of(KeypointName::right_ankle), KeypointName::left_ankle);
  for (std::size_t i = 0; i < kNumKeypoints; ++i) {
    EXPECT_EQ(mirror_of(mirror_of(keypoint_at(i))), keypoint_at(i));
  }
}

TEST(ValidateSequence, ValidSequenceHasNoViolations) {
  EXPECT_TRUE(validate_sequence(small_sequence(3)).empty());
}

TEST(ValidateSequence, ConfidenceOutOfRangeNamesLocation) {
  auto seq = small_sequence(2);
  seq.frames[0][KeypointName::left_wrist].confidence = 1.5;
  auto v = validate_sequence(seq);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].frame, 0u);
  EXPECT_EQ(v[0].keypoint, KeypointName::left_wrist);
  EXPECT_EQ(v[0].field, "confidence");
}

TEST(ValidateSequence, NaNCoordinateNamesLocation) {
  auto seq = small_sequence(3);
  seq.frames[2][KeypointName::nose].x = std::numeric_limits<double>::quiet_NaN();
  auto v = validate_sequence(seq);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].frame, 2u);
  EXPECT_EQ(v[0].keypoint, KeypointName::nose);
  EXPECT_EQ(v[0].field, "x");
  EXPECT_NE(v[0].describe().find("frame 2"), std::string::npos);
}

TEST(ValidateSequence, OutOfFrameCoordinatesAreTolerated) {
  auto seq = small_sequence(1);
  seq.frames[0][KeypointName::left_ankle].y = 1.08;
  seq.frames[0][KeypointName::right_wrist].x = -0.03;
  EXPECT_TRUE(validate_sequence(seq).empty());
}

TEST(ValidateSequence, SequenceLevelRules) {
  auto empty = small_sequence(0);
  auto v = validate_sequence(empty);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "frames");

  auto zero_fps = small_sequence(1);
  zero_fps.fps = 0.0;
  v = validate_sequence(zero_fps);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "fps");

  auto future = small_sequence(1);
  future.format_version = "2.0";
  v = validate_sequence(future);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "format_version");

  auto newer_minor = small_sequence(1);
  newer_minor.format_version = "1.7";
  EXPECT_TRUE(validate_sequence(newer_minor).empty());
}

TEST(FormatVersion, Parsing) {
  EXPECT_EQ(parse_format_version("1.0"), (std::pair{1, 0}));
  EXPECT_EQ(parse_format_version("12.34"), (std::pair{12, 34}));
  EXPECT_FALSE(parse_format_version("1").has_value());
  EXPECT_FALSE(parse_format_version("a.b").has_value());
  EXPECT_FALSE(parse_format_version("1.0.0").has_value());
}

}  // namespace
}  // namespace posesync
