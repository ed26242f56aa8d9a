#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hoskip/config.hpp"

namespace hoskip {

/// Empty, number, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; independent of the global locale.
std::string format_double(double v);

/// CSV: '#' comment lines with tool, version, command and the resolved
/// config, then a header row and one line per row. JSON: an object with
/// "meta", "columns" and "rows".
void write_table(std::ostream& out, const Table& table, OutputFormat format, const nlohmann::json& meta);

/// Writes to `path`, or stdout when `path` is empty or "-". Throws IoError.
void write_table_file(const std::filesystem::path& path, const Table& table, OutputFormat format,
                      const nlohmann::json& meta);

}  // namespace hoskip
