#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "posesync/dtw.hpp"

namespace posesync {

// {"total_cost": c, "normalized_cost": c / len, "path": [[i, j], ...],
//  "ref_to_test": [{"ref": i, "test": [j, ...], "rep": j}, ...],
//  "step_costs": [c_0, ...]}            <- optional, one entry per path step
std::string serialize_alignment(const AlignmentResult& result);

/// Throws Error(schema) on malformed documents, including an empty or invalid
/// path or a ref_to_test list inconsistent with the path.
AlignmentResult parse_alignment(std::string_view json_text, std::string_view origin = "<memory>");

void save_alignment(const AlignmentResult& result, const std::filesystem::path& path);
AlignmentResult load_alignment(const std::filesystem::path& path);

/// Two-column "ref,test" CSV of the warping path.
std::string path_to_csv(const WarpingPath& path);

}  // namespace posesync
