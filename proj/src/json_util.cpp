#include "json_util.hpp"

#include <fstream>
#include <sstream>

#include "axtherm/errors.hpp"

namespace axtherm::detail {

namespace {

void line_column(const std::string& text, std::size_t byte, std::size_t& line,
                 std::size_t& column) {
  line = 1;
  column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text,
                               const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 0;
    std::size_t column = 0;
    // e.byte is 1-based and points one past the offending character.
    line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
    throw ParseError(what + ": malformed JSON", line, column);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const nlohmann::json& require(const nlohmann::json& object,
                              const std::string& key,
                              const std::string& context) {
  if (!object.is_object()) {
    throw ParseError(context + ": expected an object");
  }
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(context + ": missing field '" + key + "'");
  }
  return *it;
}

double require_number(const nlohmann::json& value, const std::string& path) {
  if (!value.is_number()) throw ParseError(path + ": expected a number");
  return value.get<double>();
}

std::int64_t require_integer(const nlohmann::json& value,
                             const std::string& path) {
  if (!value.is_number_integer()) {
    throw ParseError(path + ": expected an integer");
  }
  return value.get<std::int64_t>();
}

}  // namespace axtherm::detail
