#pragma once

#include <string>

#include <json.hpp>

namespace posesync {

/// Renders a JSON object with one member per line and one array element per
/// line; everything below that depth is written compactly. Member order is
/// preserved and numbers use the shortest round-trip representation.
std::string dump_document(const nlohmann::ordered_json& doc);

}  // namespace posesync
