#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "posesync/metrics.hpp"

namespace posesync {

// Configuration file layout (every member optional):
//
//   {
//     "metric": "angle_mae" | "keypoint_mae",
//     "confidence_threshold": 0.1,
//     "triplets": [{"name": "...", "a": "left_hip", "pivot": "left_shoulder", "c": "left_elbow"}],
//     "joint_weights": [1, 1, ...],          // one per triplet
//     "keypoint_weights": [1, 1, ...],       // 17 entries, canonical keypoint order
//     "normalization": "none" | "bounding_box"
//   }

MetricConfig parse_metric_config(std::string_view json_text, std::string_view origin = "<memory>");
MetricConfig load_metric_config(const std::filesystem::path& path);
std::string serialize_metric_config(const MetricConfig& config);

}  // namespace posesync
