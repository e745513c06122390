#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "posesync/error.hpp"
#include "posesync/sequence_io.hpp"
#include "posesync/synth.hpp"
#include "test_support.hpp"

namespace posesync {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "posesync_sequence_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string valid_text(std::size_t frames = 3) {
  PoseSequence seq;
  seq.fps = 25.0;
  seq.source = "unit";
  for (std::size_t f = 0; f < frames; ++f) seq.frames.push_back(testing::t_pose());
  return serialize_sequence(seq);
}

void expect_schema_error(const std::string& text, const std::string& fragment) {
  try {
    parse_sequence(text, "input.json");
    FAIL() << "expected a schema error mentioning '" << fragment << "'";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::schema);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(SequenceIo, LoadsThreeFrameFile) {
  const auto path = temp_file("three.json");
  std::ofstream(path) << valid_text(3);
  const PoseSequence seq = load_sequence(path);
  EXPECT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq.fps, 25.0);
  EXPECT_EQ(seq.source, "unit");
  EXPECT_EQ(seq.format_version, "1.0");
}

TEST(SequenceIo, OneFrameIsValidJsonWithOneFrame) {
  const json doc = json::parse(valid_text(1));
  ASSERT_TRUE(doc["frames"].is_array());
  EXPECT_EQ(doc["frames"].size(), 1u);
  EXPECT_EQ(doc["frames"][0].size(), 17u);
  EXPECT_EQ(doc["keypoint_order"][0], "nose");
  EXPECT_EQ(doc["keypoint_order"][16], "right_ankle");
}

TEST(SequenceIo, FpsSerializedLosslessly) {
  PoseSequence seq;
  seq.fps = 29.97;
  seq.frames.push_back(testing::t_pose());
  const std::string text = serialize_sequence(seq);
  EXPECT_NE(text.find("\"fps\": 29.97,"), std::string::npos);
  EXPECT_EQ(parse_sequence(text).fps, 29.97);
}

TEST(SequenceIo, RoundTripProperty) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> coord(-0.1, 1.1), conf(0.0, 1.0), fps(1.0, 240.0);
  for (int trial = 0; trial < 50; ++trial) {
    PoseSequence seq;
    seq.fps = fps(gen);
    seq.source = "trial " + std::to_string(trial) + " \"quoted\" \\ path";
    const auto frames = 1 + gen() % 20;
    for (std::size_t f = 0; f < frames; ++f) {
      PoseFrame frame;
      for (auto& kp : frame.keypoints) kp = {coord(gen), coord(gen), conf(gen)};
      seq.frames.push_back(frame);
    }
    const PoseSequence back = parse_sequence(serialize_sequence(seq));
    ASSERT_EQ(back.size(), seq.size());
    EXPECT_EQ(back.source, seq.source);
    EXPECT_EQ(back.format_version, seq.format_version);
    EXPECT_NEAR(back.fps, seq.fps, 1e-9);
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t k = 0; k < kNumKeypoints; ++k) {
        EXPECT_NEAR(back.frames[f].keypoints[k].x, seq.frames[f].keypoints[k].x, 1e-9);
        EXPECT_NEAR(back.frames[f].keypoints[k].y, seq.frames[f].keypoints[k].y, 1e-9);
        EXPECT_NEAR(back.frames[f].keypoints[k].confidence,
                    seq.frames[f].keypoints[k].confidence, 1e-9);
      }
    }
  }
}

TEST(SequenceIo, FileRoundTripOfSynthetic) {
  const PoseSequence seq = synth_sequence(Motion::walk_cycle, 2.0, 30.0, 11);
  const auto path = temp_file("walk.json");
  save_sequence(seq, path);
  const PoseSequence back = load_sequence(path);
  ASSERT_EQ(back.size(), seq.size());
  for (std::size_t f = 0; f < seq.size(); ++f) EXPECT_EQ(back.frames[f], seq.frames[f]);
}

TEST(SequenceIo, RejectsSixteenKeypointsNamingFrame) {
  json doc = json::parse(valid_text(3));
  doc["frames"][1].erase(doc["frames"][1].size() - 1);
  expect_schema_error(doc.dump(), "frame 1");
}

TEST(SequenceIo, RejectsZeroFps) {
  json doc = json::parse(valid_text(2));
  doc["fps"] = 0;
  expect_schema_error(doc.dump(), "fps");
}

TEST(SequenceIo, RejectsMissingFields) {
  for (const char* key : {"format_version", "fps", "source", "keypoint_order", "frames"}) {
    json doc = json::parse(valid_text(2));
    doc.erase(key);
    expect_schema_error(doc.dump(), key);
  }
}

TEST(SequenceIo, RejectsEmptyFrameList) {
  json doc = json::parse(valid_text(2));
  doc["frames"] = json::array();
  expect_schema_error(doc.dump(), "frames");
}

TEST(SequenceIo, RejectsUnknownMajorVersionOnly) {
  json doc = json::parse(valid_text(1));
  doc["format_version"] = "2.0";
  expect_schema_error(doc.dump(), "major");
  doc["format_version"] = "1.3";
  EXPECT_NO_THROW(parse_sequence(doc.dump()));
}

TEST(SequenceIo, RejectsWrongKeypointOrder) {
  json doc = json::parse(valid_text(1));
  std::swap(doc["keypoint_order"][1], doc["keypoint_order"][2]);
  expect_schema_error(doc.dump(), "keypoint_order[1]");
}

TEST(SequenceIo, RejectsNonFiniteTokensAndBadTriples) {
  std::string text = valid_text(1);
  const auto pos = text.find("0.5");
  ASSERT_NE(pos, std::string::npos);
  expect_schema_error(text.substr(0, pos) + "NaN" + text.substr(pos + 3), "invalid JSON");

  json doc = json::parse(valid_text(2));
  doc["frames"][1][4] = json::array({0.1, 0.2});
  expect_schema_error(doc.dump(), "frame 1, right_ear");

  doc = json::parse(valid_text(2));
  doc["frames"][0][9][2] = 1.5;
  expect_schema_error(doc.dump(), "frame 0: left_wrist.confidence");
}

TEST(SequenceIo, MissingFileIsIoError) {
  try {
    load_sequence("/nonexistent/dir/seq.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/seq.json"), std::string::npos);
  }
}

TEST(SequenceIo, SaveRefusesInvalidSequence) {
  PoseSequence seq;
  seq.frames.push_back(testing::t_pose());
  seq.frames[0][KeypointName::nose].y = std::nan("");
  EXPECT_THROW(serialize_sequence(seq), Error);
}

// Loader acceptance and validate_sequence agree on field-level invariants.
TEST(SequenceIo, LoaderAgreesWithValidator) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> conf(-0.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    PoseSequence seq;
    seq.frames.push_back(testing::t_pose());
    seq.frames.push_back(testing::t_pose());
    seq.frames[gen() % 2].keypoints[gen() % 17].confidence = conf(gen);
    json doc = json::parse(valid_text(2));
    for (std::size_t f = 0; f < 2; ++f) {
      for (std::size_t k = 0; k < 17; ++k) {
        doc["frames"][f][k][2] = seq.frames[f].keypoints[k].confidence;
      }
    }
    seq.fps = 25.0;
    seq.source = "unit";
    const bool valid = validate_sequence(seq).empty();
    bool loaded = true;
    try {
      parse_sequence(doc.dump());
    } catch (const Error&) {
      loaded = false;
    }
    EXPECT_EQ(valid, loaded);
  }
}

}  // namespace
}  // namespace posesync
