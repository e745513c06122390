#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "posesync/keypoints.hpp"

namespace posesync {

/// Reads and validates a keypoint-sequence JSON file. Throws Error(io) when the
/// file cannot be read and Error(schema) naming the first offending frame and
/// field otherwise.
PoseSequence load_sequence(const std::filesystem::path& path);

/// `origin` prefixes error messages (usually the file name).
PoseSequence parse_sequence(std::string_view json_text, std::string_view origin = "<memory>");

/// Throws Error(schema) if `seq` is invalid.
std::string serialize_sequence(const PoseSequence& seq);

void save_sequence(const PoseSequence& seq, const std::filesystem::path& path);

}  // namespace posesync
