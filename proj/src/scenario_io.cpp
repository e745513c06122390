#include "posesync/scenario_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "posesync/error.hpp"
#include "posesync/json_format.hpp"
#include "posesync/sequence_io.hpp"
#include "posesync/synth.hpp"

namespace posesync {

namespace {

using nlohmann::json;

struct EntryError {
  std::string message;
};

double number(const json& params, const char* key, std::optional<double> fallback = std::nullopt) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw EntryError{std::string("missing parameter '") + key + "'"};
  }
  if (!it->is_number()) throw EntryError{std::string("parameter '") + key + "' must be a number"};
  return it->get<double>();
}

InsertPosition position(const json& params) {
  auto it = params.find("position");
  if (it == params.end()) return InsertPosition::middle;
  auto p = it->is_string() ? insert_position_from_string(it->get<std::string>()) : std::nullopt;
  if (!p) throw EntryError{"position must be \"start\", \"middle\" or \"end\""};
  return *p;
}

std::shared_ptr<const PoseSequence> donor(const json& params, double duration,
                                          const ScenarioContext& context) {
  if (auto it = params.find("donor_path"); it != params.end()) {
    if (!it->is_string()) throw EntryError{"donor_path must be a string"};
    std::filesystem::path path = it->get<std::string>();
    if (path.is_relative()) path = context.base_dir / path;
    return std::make_shared<const PoseSequence>(load_sequence(path));
  }
  auto it = params.find("donor");
  if (it == params.end() || !it->is_object()) {
    throw EntryError{"insert_clip needs 'donor_path' or a 'donor' object"};
  }
  auto motion_it = it->find("motion");
  auto motion = motion_it != it->end() && motion_it->is_string()
                    ? motion_from_string(motion_it->get<std::string>())
                    : std::nullopt;
  if (!motion) throw EntryError{"donor.motion must be arm_wave, squat or walk_cycle"};
  const auto seed = static_cast<std::uint64_t>(number(*it, "seed", 0.0));
  const double seconds = number(*it, "seconds", duration);
  return std::make_shared<const PoseSequence>(synth_sequence(*motion, seconds, context.fps, seed));
}

std::vector<std::size_t> index_list(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end() || !it->is_array()) throw EntryError{std::string("missing array '") + key + "'"};
  std::vector<std::size_t> out;
  for (const auto& v : *it) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw EntryError{std::string(key) + " must hold non-negative integers"};
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

PerturbationSpec parse_spec(const std::string& kind, const json& params,
                            const ScenarioContext& context) {
  if (kind == "identity") return Identity{};
  if (kind == "flip_horizontal") return FlipHorizontal{};
  if (kind == "speed_change") {
    return SpeedChange{number(params, "factor"), number(params, "start_frac", 0.0),
                       number(params, "end_frac", 1.0)};
  }
  if (kind == "insert_noise") return InsertNoise{number(params, "duration_seconds"), position(params)};
  if (kind == "insert_clip") {
    const double duration = number(params, "duration_seconds");
    return InsertClip{duration, position(params), donor(params, duration, context)};
  }
  if (kind == "reorder_segments") {
    ReorderSegments spec;
    auto it = params.find("cuts");
    if (it == params.end() || !it->is_array()) throw EntryError{"missing array 'cuts'"};
    for (const auto& c : *it) {
      if (!c.is_number()) throw EntryError{"cuts must hold numbers"};
      spec.cuts.push_back(c.get<double>());
    }
    spec.order = index_list(params, "order");
    return spec;
  }
  if (kind == "zoom") {
    Zoom spec{number(params, "scale"), 0.5, 0.5};
    if (auto it = params.find("center"); it != params.end()) {
      if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
        throw EntryError{"center must be [x, y]"};
      }
      spec.center_x = (*it)[0].get<double>();
      spec.center_y = (*it)[1].get<double>();
    }
    return spec;
  }
  throw EntryError{"unknown perturbation kind '" + kind + "'"};
}

}  // namespace

std::vector<Scenario> parse_scenarios(std::string_view json_text, const ScenarioContext& context,
                                      std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, std::string(origin) + ": invalid JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("scenarios")) doc = doc["scenarios"];
  if (!doc.is_array()) {
    throw Error(ErrorKind::schema, std::string(origin) + ": expected an array of scenarios");
  }

  std::vector<Scenario> scenarios;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string where = std::string(origin) + ": scenarios[" + std::to_string(k) + "]";
    const json& entry = doc[k];
    try {
      if (!entry.is_object()) throw EntryError{"entry must be an object"};
      auto kind = entry.find("kind");
      if (kind == entry.end() || !kind->is_string()) throw EntryError{"missing string 'kind'"};
      const json params = entry.value("parameters", json::object());
      if (!params.is_object()) throw EntryError{"parameters must be an object"};

      Scenario scenario;
      scenario.name = entry.value("name", kind->get<std::string>() + "_" + std::to_string(k));
      if (auto seed = entry.find("seed"); seed != entry.end()) {
        if (!seed->is_number_unsigned()) throw EntryError{"seed must be a non-negative integer"};
        scenario.seed = seed->get<std::uint64_t>();
      }
      scenario.spec = parse_spec(kind->get<std::string>(), params, context);
      scenarios.push_back(std::move(scenario));
    } catch (const EntryError& e) {
      throw Error(ErrorKind::schema, where + ": " + e.message);
    } catch (const Error& e) {
      throw Error(ErrorKind::schema, where + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::schema, where + ": " + e.what());
    }
  }
  return scenarios;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path, double fps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenarios(buffer.str(), {fps, path.parent_path()}, path.string());
}

std::string serialize_reports(const std::vector<EvalReport>& reports) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json entry;
    entry["scenario"] = r.scenario;
    entry["description"] = r.description;
    entry["ref_frames"] = r.ref_frames;
    entry["test_frames"] = r.test_frames;
    entry["ref_seconds"] = r.ref_seconds;
    entry["test_seconds"] = r.test_seconds;
    entry["n_expected"] = r.n_expected;
    entry["n_matched"] = r.n_matched;
    entry["percent_matched"] = r.percent_matched;
    entry["tolerance_frames"] = r.tolerance_frames;
    entry["total_cost"] = r.total_cost;
    entry["normalized_cost"] = r.normalized_cost;
    list.push_back(std::move(entry));
  }
  nlohmann::ordered_json doc;
  doc["reports"] = std::move(list);
  return dump_document(doc);
}

}  // namespace posesync
