#include "posesync/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "posesync/error.hpp"
#include "posesync/json_format.hpp"

namespace posesync {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(std::string_view origin, const std::string& what) {
  throw Error(ErrorKind::schema, std::string(origin) + ": " + what);
}

const json& require(const json& doc, const char* key, std::string_view origin) {
  auto it = doc.find(key);
  if (it == doc.end()) schema_error(origin, std::string("missing field '") + key + "'");
  return *it;
}

PoseFrame parse_frame(const json& value, std::size_t index, std::string_view origin) {
  const std::string where = "frame " + std::to_string(index);
  if (!value.is_array()) schema_error(origin, where + ": expected an array of keypoints");
  if (value.size() != kNumKeypoints) {
    schema_error(origin, where + ": expected " + std::to_string(kNumKeypoints) +
                             " keypoints, found " + std::to_string(value.size()));
  }
  PoseFrame frame;
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    const json& triple = value[k];
    const std::string at = where + ", " + std::string(name_of(keypoint_at(k)));
    if (!triple.is_array() || triple.size() != 3) {
      schema_error(origin, at + ": expected [x, y, confidence]");
    }
    for (const auto& component : triple) {
      if (!component.is_number()) schema_error(origin, at + ": non-numeric value");
    }
    frame.keypoints[k] = {triple[0].get<double>(), triple[1].get<double>(),
                          triple[2].get<double>()};
  }
  return frame;
}

}  // namespace

PoseSequence parse_sequence(std::string_view json_text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    schema_error(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error(origin, "top-level value must be an object");

  PoseSequence seq;

  const json& version = require(doc, "format_version", origin);
  if (!version.is_string()) schema_error(origin, "format_version must be a string");
  seq.format_version = version.get<std::string>();

  const json& fps = require(doc, "fps", origin);
  if (!fps.is_number()) schema_error(origin, "fps must be a number");
  seq.fps = fps.get<double>();

  const json& source = require(doc, "source", origin);
  if (!source.is_string()) schema_error(origin, "source must be a string");
  seq.source = source.get<std::string>();

  const json& order = require(doc, "keypoint_order", origin);
  if (!order.is_array() || order.size() != kNumKeypoints) {
    schema_error(origin, "keypoint_order must list exactly 17 names");
  }
  for (std::size_t k = 0; k < kNumKeypoints; ++k) {
    if (!order[k].is_string() || order[k].get<std::string>() != keypoint_names()[k]) {
      schema_error(origin, "keypoint_order[" + std::to_string(k) + "] must be '" +
                               std::string(keypoint_names()[k]) + "'");
    }
  }

  const json& frames = require(doc, "frames", origin);
  if (!frames.is_array()) schema_error(origin, "frames must be an array");
  seq.frames.reserve(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    seq.frames.push_back(parse_frame(frames[f], f, origin));
  }

  if (auto violations = validate_sequence(seq); !violations.empty()) {
    schema_error(origin, violations.front().describe());
  }
  return seq;
}

PoseSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::io, "failed reading '" + path.string() + "'");
  return parse_sequence(buffer.str(), path.string());
}

std::string serialize_sequence(const PoseSequence& seq) {
  if (auto violations = validate_sequence(seq); !violations.empty()) {
    throw Error(ErrorKind::schema, "refusing to save invalid sequence: " +
                                       violations.front().describe());
  }
  nlohmann::ordered_json doc;
  doc["format_version"] = seq.format_version;
  doc["fps"] = seq.fps;
  doc["source"] = seq.source;
  auto order = nlohmann::ordered_json::array();
  for (auto name : keypoint_names()) order.push_back(name);
  doc["keypoint_order"] = std::move(order);
  auto frames = nlohmann::ordered_json::array();
  for (const PoseFrame& frame : seq.frames) {
    auto row = nlohmann::ordered_json::array();
    for (const Keypoint& kp : frame.keypoints) row.push_back({kp.x, kp.y, kp.confidence});
    frames.push_back(std::move(row));
  }
  doc["frames"] = std::move(frames);
  return dump_document(doc);
}

void save_sequence(const PoseSequence& seq, const std::filesystem::path& path) {
  const std::string text = serialize_sequence(seq);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

}  // namespace posesync
