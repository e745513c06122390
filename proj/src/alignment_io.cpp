#include "posesync/alignment_io.hpp"

#include <cmath>
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

std::size_t index_value(const json& v, std::string_view origin, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    schema_error(origin, where + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double cost_value(const json& doc, const char* key, std::string_view origin) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) schema_error(origin, std::string("missing numeric '") + key + "'");
  const double v = it->get<double>();
  if (!std::isfinite(v) || v < 0.0) schema_error(origin, std::string(key) + " must be finite and >= 0");
  return v;
}

}  // namespace

std::string serialize_alignment(const AlignmentResult& result) {
  nlohmann::ordered_json doc;
  doc["total_cost"] = result.total_cost;
  doc["normalized_cost"] = result.normalized_cost;
  auto path = nlohmann::ordered_json::array();
  for (const auto& s : result.path) path.push_back({s.ref, s.test});
  doc["path"] = std::move(path);
  auto mapping = nlohmann::ordered_json::array();
  for (const auto& m : result.ref_to_test) {
    nlohmann::ordered_json entry;
    entry["ref"] = m.ref;
    entry["test"] = m.test;
    entry["rep"] = m.representative;
    mapping.push_back(std::move(entry));
  }
  doc["ref_to_test"] = std::move(mapping);
  if (!result.step_costs.empty()) doc["step_costs"] = result.step_costs;
  return dump_document(doc);
}

AlignmentResult parse_alignment(std::string_view json_text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    schema_error(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error(origin, "top-level value must be an object");

  AlignmentResult result;
  result.total_cost = cost_value(doc, "total_cost", origin);
  result.normalized_cost = cost_value(doc, "normalized_cost", origin);

  auto path_it = doc.find("path");
  if (path_it == doc.end() || !path_it->is_array()) schema_error(origin, "missing 'path' array");
  if (path_it->empty()) schema_error(origin, "path is empty");
  for (std::size_t k = 0; k < path_it->size(); ++k) {
    const json& pair = (*path_it)[k];
    const std::string where = "path[" + std::to_string(k) + "]";
    if (!pair.is_array() || pair.size() != 2) schema_error(origin, where + " must be [i, j]");
    result.path.push_back({index_value(pair[0], origin, where), index_value(pair[1], origin, where)});
  }
  const std::size_t n_ref = result.path.back().ref + 1;
  const std::size_t n_test = result.path.back().test + 1;
  if (auto problems = path_violations(result.path, n_ref, n_test); !problems.empty()) {
    schema_error(origin, "invalid path: " + problems.front());
  }

  auto map_it = doc.find("ref_to_test");
  if (map_it == doc.end() || !map_it->is_array()) schema_error(origin, "missing 'ref_to_test' array");
  for (std::size_t k = 0; k < map_it->size(); ++k) {
    const json& entry = (*map_it)[k];
    const std::string where = "ref_to_test[" + std::to_string(k) + "]";
    if (!entry.is_object() || !entry.contains("ref") || !entry.contains("test") ||
        !entry.contains("rep") || !entry["test"].is_array()) {
      schema_error(origin, where + " must have ref, test and rep");
    }
    RefMatch match;
    match.ref = index_value(entry["ref"], origin, where + ".ref");
    for (const auto& t : entry["test"]) match.test.push_back(index_value(t, origin, where + ".test"));
    match.representative = index_value(entry["rep"], origin, where + ".rep");
    result.ref_to_test.push_back(std::move(match));
  }
  if (result.ref_to_test != extract_mapping(result.path)) {
    schema_error(origin, "ref_to_test is inconsistent with path");
  }

  if (auto it = doc.find("step_costs"); it != doc.end()) {
    if (!it->is_array() || it->size() != result.path.size()) {
      schema_error(origin, "step_costs must have one entry per path step");
    }
    for (const auto& c : *it) {
      if (!c.is_number() || c.get<double>() < 0.0) schema_error(origin, "step_costs must be >= 0");
      result.step_costs.push_back(c.get<double>());
    }
  }
  return result;
}

void save_alignment(const AlignmentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << serialize_alignment(result);
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

AlignmentResult load_alignment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_alignment(buffer.str(), path.string());
}

std::string path_to_csv(const WarpingPath& path) {
  std::string out = "ref,test\n";
  for (const auto& s : path) out += std::to_string(s.ref) + "," + std::to_string(s.test) + "\n";
  return out;
}

}  // namespace posesync
