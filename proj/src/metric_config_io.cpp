#include "posesync/metric_config_io.hpp"

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

std::vector<double> number_array(const json& value, const char* key, std::string_view origin) {
  if (!value.is_array()) schema_error(origin, std::string(key) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) schema_error(origin, std::string(key) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

KeypointName keypoint_field(const json& triplet, const char* key, std::size_t index,
                            std::string_view origin) {
  const std::string where = "triplets[" + std::to_string(index) + "]." + key;
  auto it = triplet.find(key);
  if (it == triplet.end() || !it->is_string()) schema_error(origin, where + " must be a string");
  auto name = keypoint_from_name(it->get<std::string>());
  if (!name) schema_error(origin, where + ": unknown keypoint '" + it->get<std::string>() + "'");
  return *name;
}

}  // namespace

MetricConfig parse_metric_config(std::string_view json_text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    schema_error(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error(origin, "top-level value must be an object");

  MetricConfig config;
  try {
    if (auto it = doc.find("metric"); it != doc.end()) {
      auto kind = it->is_string() ? metric_kind_from_string(it->get<std::string>()) : std::nullopt;
      if (!kind) schema_error(origin, "metric must be \"angle_mae\" or \"keypoint_mae\"");
      config.kind = *kind;
    }
    if (auto it = doc.find("confidence_threshold"); it != doc.end()) {
      if (!it->is_number()) schema_error(origin, "confidence_threshold must be a number");
      config.confidence_threshold = it->get<double>();
    }
    if (auto it = doc.find("normalization"); it != doc.end()) {
      auto norm = it->is_string() ? normalization_from_string(it->get<std::string>())
                                  : std::nullopt;
      if (!norm) schema_error(origin, "normalization must be \"none\" or \"bounding_box\"");
      config.normalization = *norm;
    }

    std::vector<JointTriplet> triplets = config.joint_set.triplets();
    if (auto it = doc.find("triplets"); it != doc.end()) {
      if (!it->is_array()) schema_error(origin, "triplets must be an array");
      triplets.clear();
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& t = (*it)[i];
        if (!t.is_object()) schema_error(origin, "triplets[" + std::to_string(i) + "] must be an object");
        std::string name = "joint_" + std::to_string(i);
        if (auto n = t.find("name"); n != t.end() && n->is_string()) name = n->get<std::string>();
        triplets.emplace_back(name, keypoint_field(t, "a", i, origin),
                              keypoint_field(t, "pivot", i, origin),
                              keypoint_field(t, "c", i, origin));
      }
    }
    std::vector<double> joint_weights(triplets.size(), 1.0);
    if (auto it = doc.find("joint_weights"); it != doc.end()) {
      joint_weights = number_array(*it, "joint_weights", origin);
    }
    config.joint_set = JointSet(std::move(triplets), std::move(joint_weights));

    if (auto it = doc.find("keypoint_weights"); it != doc.end()) {
      auto weights = number_array(*it, "keypoint_weights", origin);
      if (weights.size() != kNumKeypoints) {
        schema_error(origin, "keypoint_weights must have 17 entries");
      }
      std::copy(weights.begin(), weights.end(), config.keypoint_weights.begin());
    }
    config.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::schema) throw;
    throw Error(ErrorKind::schema, std::string(origin) + ": " + e.what());
  }
  return config;
}

MetricConfig load_metric_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_metric_config(buffer.str(), path.string());
}

std::string serialize_metric_config(const MetricConfig& config) {
  nlohmann::ordered_json doc;
  doc["metric"] = to_string(config.kind);
  doc["confidence_threshold"] = config.confidence_threshold;
  doc["normalization"] = to_string(config.normalization);
  auto triplets = nlohmann::ordered_json::array();
  for (const auto& t : config.joint_set.triplets()) {
    triplets.push_back({{"name", t.name()},
                        {"a", name_of(t.a())},
                        {"pivot", name_of(t.pivot())},
                        {"c", name_of(t.c())}});
  }
  doc["triplets"] = std::move(triplets);
  doc["joint_weights"] = config.joint_set.weights();
  doc["keypoint_weights"] = config.keypoint_weights;
  return dump_document(doc);
}

}  // namespace posesync
