#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace axtherm::detail {

/// Parses JSON text; syntax errors become ParseError with line/column.
nlohmann::json parse_json_text(const std::string& text,
                               const std::string& what);

/// Reads a whole file; IoError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Typed field access with schema errors naming the field path.
const nlohmann::json& require(const nlohmann::json& object,
                              const std::string& key,
                              const std::string& context);
double require_number(const nlohmann::json& value, const std::string& path);
std::int64_t require_integer(const nlohmann::json& value,
                             const std::string& path);

}  // namespace axtherm::detail
