#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "posesync/error.hpp"
#include "posesync/metrics.hpp"
#include "posesync/sequence_io.hpp"
#include "posesync/synth.hpp"

namespace posesync {
namespace {

TEST(Rng, UniformRangeAndDeterminism) {
  Rng a(42), b(42);
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
  }
}

TEST(Synth, ArmWaveOneSecond) {
  const auto seq = synth_sequence(Motion::arm_wave, 1.0, 25.0, 7);
  EXPECT_EQ(seq.size(), 25u);
  EXPECT_EQ(seq.fps, 25.0);
  EXPECT_TRUE(validate_sequence(seq).empty());
}

TEST(Synth, SameSeedSameBytes) {
  const auto a = synth_sequence(Motion::walk_cycle, 2.0, 25.0, 11);
  const auto b = synth_sequence(Motion::walk_cycle, 2.0, 25.0, 11);
  const auto c = synth_sequence(Motion::walk_cycle, 2.0, 25.0, 12);
  EXPECT_EQ(serialize_sequence(a), serialize_sequence(b));
  EXPECT_NE(serialize_sequence(a), serialize_sequence(c));
}

TEST(Synth, SquatBendsTheKnees) {
  const auto seq = synth_sequence(Motion::squat, 2.0, 10.0, 0);
  ASSERT_EQ(seq.size(), 20u);
  const auto joints = JointSet::standard();
  std::size_t knee = joints.size();
  for (std::size_t k = 0; k < joints.size(); ++k)
    if (joints.triplets()[k].pivot() == KeypointName::left_knee) knee = k;
  ASSERT_LT(knee, joints.size());
  double lo = 10.0, hi = -10.0;
  for (const auto& f : seq.frames) {
    const auto angles = frame_angles(f, joints, kDefaultConfidenceThreshold);
    ASSERT_TRUE(angles.valid(knee));
    lo = std::min(lo, *angles.angles[knee]);
    hi = std::max(hi, *angles.angles[knee]);
  }
  EXPECT_GT(hi - lo, 0.5);
}

TEST(Synth, KeypointsStayInFrame) {
  for (Motion m : {Motion::arm_wave, Motion::squat, Motion::walk_cycle}) {
    const auto seq = synth_sequence(m, 8.0, 25.0, 5);
    for (const auto& f : seq.frames)
      for (const auto& kp : f.keypoints) {
        EXPECT_GE(kp.x, 0.0);
        EXPECT_LE(kp.x, 1.0);
        EXPECT_GE(kp.y, 0.0);
        EXPECT_LE(kp.y, 1.0);
      }
  }
}

TEST(Synth, ConsecutiveFramesDiffer) {
  const auto seq = synth_sequence(Motion::arm_wave, 4.0, 25.0, 1);
  MetricConfig config;
  for (std::size_t k = 1; k < seq.size(); ++k)
    EXPECT_GT(angle_mae(seq.frames[k - 1], seq.frames[k], config), 0.0);
}

TEST(Synth, PreconditionViolations) {
  EXPECT_THROW(synth_sequence(Motion::walk_cycle, 0.05, 25.0, 0), Error);
  EXPECT_THROW(synth_sequence(Motion::arm_wave, 1.0, 0.0, 0), Error);
  EXPECT_THROW(synth_sequence(Motion::arm_wave, -1.0, 25.0, 0), Error);
  EXPECT_NO_THROW(synth_sequence(Motion::walk_cycle, 0.08, 25.0, 0));
}

TEST(Synth, MotionNames) {
  for (Motion m : {Motion::arm_wave, Motion::squat, Motion::walk_cycle})
    EXPECT_EQ(motion_from_string(to_string(m)), m);
  EXPECT_FALSE(motion_from_string("jump").has_value());
}

TEST(Synth, RandomPoseIsValid) {
  Rng rng(3);
  PoseSequence seq;
  for (int k = 0; k < 50; ++k) seq.frames.push_back(random_pose(rng));
  EXPECT_TRUE(validate_sequence(seq).empty());
  for (const auto& f : seq.frames)
    for (const auto& kp : f.keypoints) {
      EXPECT_GE(kp.confidence, 0.5);
      EXPECT_LE(kp.confidence, 1.0);
    }
}

}  // namespace
}  // namespace posesync
