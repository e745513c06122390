#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "posesync/evaluation.hpp"

namespace posesync {

// A scenario file is a JSON array (or {"scenarios": [...]}) of entries
//
//   {"name": "noise_mid", "kind": "insert_noise", "seed": 3,
//    "parameters": {"duration_seconds": 2, "position": "middle"}}
//
// Parameters per kind:
//   identity, flip_horizontal  -
//   speed_change               factor, start_frac = 0, end_frac = 1
//   insert_noise               duration_seconds, position = "middle"
//   insert_clip                duration_seconds, position = "middle", and either
//                              donor_path (relative to the scenario file) or
//                              donor: {"motion": "...", "seed": n}
//   reorder_segments           cuts: [fractions], order: [segment indices]
//   zoom                       scale, center: [x, y] = [0.5, 0.5]

struct ScenarioContext {
  double fps = 25.0;                 // frame rate for synthesized donors
  std::filesystem::path base_dir;    // resolves relative donor_path entries
};

/// Throws Error(schema) naming the offending entry index.
std::vector<Scenario> parse_scenarios(std::string_view json_text, const ScenarioContext& context,
                                      std::string_view origin = "<memory>");
std::vector<Scenario> load_scenarios(const std::filesystem::path& path, double fps);

std::string serialize_reports(const std::vector<EvalReport>& reports);

}  // namespace posesync
