#include "posesync/synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "posesync/error.hpp"

namespace posesync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct LimbAngles {
  // Radians from straight down; positive swings away from the body midline.
  double upper_arm = 0.2;
  double forearm = 0.2;
  double thigh = 0.1;
  double shin = 0.05;
};

struct BodyPose {
  double center_x = 0.5;  // hip midpoint
  double center_y = 0.6;
  double height = 0.55;
  double lean = 0.0;  // torso tilt from vertical, positive towards image right
  LimbAngles left;
  LimbAngles right;
};

// Segment lengths as fractions of body height.
constexpr double kTorso = 0.30;
constexpr double kShoulderHalfWidth = 0.11;
constexpr double kHipHalfWidth = 0.08;
constexpr double kUpperArm = 0.19;
constexpr double kForearm = 0.17;
constexpr double kThigh = 0.25;
constexpr double kShin = 0.24;
constexpr double kHead = 0.18;

struct Vec {
  double x, y;
  Vec operator+(Vec o) const { return {x + o.x, y + o.y}; }
  Vec operator-(Vec o) const { return {x - o.x, y - o.y}; }
  Vec operator*(double s) const { return {x * s, y * s}; }
};

// The subject faces the camera, so anatomical left is image right (side = +1).
Vec limb_direction(double side, double angle) { return {side * std::sin(angle), std::cos(angle)}; }

PoseFrame pose_to_frame(const BodyPose& body, double confidence) {
  using K = KeypointName;
  const double h = body.height;
  const Vec up{std::sin(body.lean), -std::cos(body.lean)};
  const Vec across{std::cos(body.lean), std::sin(body.lean)};
  const Vec hip_mid{body.center_x, body.center_y};
  const Vec shoulder_mid = hip_mid + up * (kTorso * h);

  PoseFrame frame;
  auto put = [&](K name, Vec p) { frame[name] = {p.x, p.y, confidence}; };

  const Vec nose = shoulder_mid + up * (0.55 * kHead * h);
  put(K::nose, nose);
  put(K::left_eye, nose + up * (0.17 * kHead * h) + across * (0.14 * kHead * h));
  put(K::right_eye, nose + up * (0.17 * kHead * h) - across * (0.14 * kHead * h));
  put(K::left_ear, nose + up * (0.08 * kHead * h) + across * (0.28 * kHead * h));
  put(K::right_ear, nose + up * (0.08 * kHead * h) - across * (0.28 * kHead * h));

  for (double side : {1.0, -1.0}) {
    const bool left = side > 0;
    const LimbAngles& limb = left ? body.left : body.right;
    const Vec shoulder = shoulder_mid + across * (side * kShoulderHalfWidth * h);
    const Vec elbow = shoulder + limb_direction(side, limb.upper_arm) * (kUpperArm * h);
    const Vec wrist = elbow + limb_direction(side, limb.forearm) * (kForearm * h);
    const Vec hip = hip_mid + across * (side * kHipHalfWidth * h);
    const Vec knee = hip + limb_direction(side, limb.thigh) * (kThigh * h);
    const Vec ankle = knee + limb_direction(side, limb.shin) * (kShin * h);
    put(left ? K::left_shoulder : K::right_shoulder, shoulder);
    put(left ? K::left_elbow : K::right_elbow, elbow);
    put(left ? K::left_wrist : K::right_wrist, wrist);
    put(left ? K::left_hip : K::right_hip, hip);
    put(left ? K::left_knee : K::right_knee, knee);
    put(left ? K::left_ankle : K::right_ankle, ankle);
  }
  return frame;
}

// Slow amplitude modulation so that successive cycles are not identical.
double modulation(double t) { return 1.0 + 0.2 * std::sin(kTwoPi * t / 6.7 + 0.4); }

BodyPose arm_wave_pose(double t) {
  const double w = kTwoPi / 2.0;
  const double m = modulation(t);
  const double raise = 0.5 * (1.0 - std::cos(w * t)) * m;
  BodyPose body;
  body.lean = 0.03 * std::sin(w * t / 3.0);
  LimbAngles limb;
  limb.upper_arm = 0.25 + 2.2 * raise;
  limb.forearm = limb.upper_arm + 0.5 * std::sin(w * t + 0.7) * m;
  limb.thigh = 0.12 + 0.05 * std::sin(w * t / 2.0);
  limb.shin = 0.05;
  body.left = limb;
  body.right = limb;
  return body;
}

BodyPose squat_pose(double t) {
  const double w = kTwoPi / 2.5;
  const double depth = 0.5 * (1.0 - std::cos(w * t)) * modulation(t);
  BodyPose body;
  LimbAngles limb;
  limb.thigh = 0.1 + 0.7 * depth;
  limb.shin = 0.05 - 0.45 * depth;
  limb.upper_arm = 0.3 + 0.9 * depth;
  limb.forearm = limb.upper_arm + 0.2 + 0.3 * depth;
  body.left = limb;
  body.right = limb;
  body.lean = 0.02 * std::sin(w * t / 2.0);
  const double ground = 0.9;
  const double leg = std::cos(limb.thigh) * kThigh + std::cos(limb.shin) * kShin;
  body.center_y = ground - leg * body.height;
  return body;
}

BodyPose walk_pose(double t) {
  const double w = kTwoPi / 1.2;
  const double m = modulation(t);
  BodyPose body;
  body.center_x = 0.35 + 0.04 * t;
  body.center_y = 0.58 + 0.01 * std::sin(2.0 * w * t);
  body.lean = 0.04 * std::sin(w * t);
  for (double side : {1.0, -1.0}) {
    const double stride = 0.5 * (1.0 + std::sin(w * t + (side > 0 ? 0.0 : std::numbers::pi)));
    LimbAngles limb;
    limb.thigh = 0.06 + 0.3 * stride * m;
    limb.shin = limb.thigh - 0.6 * stride * m;
    limb.upper_arm = 0.15 + 0.35 * (1.0 - stride) * m;
    limb.forearm = limb.upper_arm + 0.25 + 0.2 * (1.0 - stride);
    (side > 0 ? body.left : body.right) = limb;
  }
  return body;
}

}  // namespace

std::string_view to_string(Motion motion) {
  switch (motion) {
    case Motion::arm_wave:
      return "arm_wave";
    case Motion::squat:
      return "squat";
    case Motion::walk_cycle:
      return "walk_cycle";
  }
  return "unknown";
}

std::optional<Motion> motion_from_string(std::string_view text) {
  for (Motion m : {Motion::arm_wave, Motion::squat, Motion::walk_cycle}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

PoseSequence synth_sequence(Motion motion, double seconds, double fps, std::uint64_t seed) {
  if (!std::isfinite(seconds) || !std::isfinite(fps) || seconds <= 0.0 || fps <= 0.0) {
    throw Error(ErrorKind::invalid_argument, "seconds and fps must be positive");
  }
  if (seconds * fps < 2.0) {
    throw Error(ErrorKind::invalid_argument, "seconds * fps must be at least 2 frames");
  }
  const auto n = static_cast<std::size_t>(std::llround(seconds * fps));

  PoseSequence seq;
  seq.fps = fps;
  seq.source = "synth:" + std::string(to_string(motion)) + " seconds=" + std::to_string(seconds) +
               " fps=" + std::to_string(fps) + " seed=" + std::to_string(seed);
  seq.frames.reserve(n);

  Rng rng(seed);
  constexpr double kJitter = 0.002;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fps;
    BodyPose body;
    switch (motion) {
      case Motion::arm_wave:
        body = arm_wave_pose(t);
        break;
      case Motion::squat:
        body = squat_pose(t);
        break;
      case Motion::walk_cycle:
        body = walk_pose(t);
        break;
    }
    PoseFrame frame = pose_to_frame(body, 1.0);
    for (Keypoint& kp : frame.keypoints) {
      kp.x += rng.uniform(-kJitter, kJitter);
      kp.y += rng.uniform(-kJitter, kJitter);
    }
    seq.frames.push_back(frame);
  }
  return seq;
}

PoseFrame random_pose(Rng& rng) {
  BodyPose body;
  body.center_x = rng.uniform(0.35, 0.65);
  body.center_y = rng.uniform(0.45, 0.65);
  body.height = rng.uniform(0.4, 0.7);
  body.lean = rng.uniform(-0.3, 0.3);
  for (LimbAngles* limb : {&body.left, &body.right}) {
    limb->upper_arm = rng.uniform(0.0, 2.8);
    limb->forearm = limb->upper_arm + rng.uniform(-1.5, 1.5);
    limb->thigh = rng.uniform(-0.2, 1.0);
    limb->shin = limb->thigh + rng.uniform(-1.2, 0.2);
  }
  PoseFrame frame = pose_to_frame(body, 1.0);
  for (Keypoint& kp : frame.keypoints) kp.confidence = rng.uniform(0.5, 1.0);
  return frame;
}

}  // namespace posesync
