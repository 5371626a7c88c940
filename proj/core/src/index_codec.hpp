#pragma once

#include <json.hpp>

#include "tuxqa/index.hpp"

namespace tuxqa::detail {

// JSON form of a TfIdfIndex, shared by the standalone index artifact and the
// engine bundle. from_json throws ParseError on structural problems.
struct IndexCodec {
  static nlohmann::json to_json(const TfIdfIndex& index);
  static TfIdfIndex from_json(const nlohmann::json& j);
};

// Throws FormatVersionMismatch unless j["format_version"] == kIndexFormatVersion.
void check_format_version(const nlohmann::json& j);

}  // namespace tuxqa::detail
