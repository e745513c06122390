#include "posesync/json_format.hpp"

namespace posesync {

namespace {

void append_value(std::string& out, const nlohmann::ordered_json& value, int indent) {
  if (!value.is_array() || value.empty()) {
    out += value.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  out += "[\n";
  for (std::size_t i = 0; i < value.size(); ++i) {
    out += pad;
    out += value[i].dump();
    out += i + 1 < value.size() ? ",\n" : "\n";
  }
  out += std::string(static_cast<std::size_t>(indent), ' ');
  out += "]";
}

}  // namespace

std::string dump_document(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) {
    std::string out;
    append_value(out, doc, 0);
    out += "\n";
    return out;
  }
  std::string out = "{\n";
  std::size_t i = 0;
  for (const auto& [key, value] : doc.items()) {
    out += "  ";
    out += nlohmann::ordered_json(key).dump();
    out += ": ";
    append_value(out, value, 2);
    out += ++i < doc.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace posesync
