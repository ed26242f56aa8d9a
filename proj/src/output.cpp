#include "hoskip/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

namespace hoskip {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::json json_cell(const Cell& c) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double v) const { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_table(std::ostream& out, const Table& table, OutputFormat format, const nlohmann::json& meta) {
  if (format == OutputFormat::Json) {
    nlohmann::json doc;
    doc["meta"] = meta;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json r = nlohmann::json::array();
      for (const Cell& c : row) r.push_back(json_cell(c));
      doc["rows"].push_back(std::move(r));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : meta.items()) out << "# " << key << ": " << value.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_table_file(const std::filesystem::path& path, const Table& table, OutputFormat format,
                      const nlohmann::json& meta) {
  if (path.empty() || path == "-") {
    write_table(std::cout, table, format, meta);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file " + path.string());
  write_table(out, table, format, meta);
  out.flush();
  if (!out) throw IoError("failed writing output file " + path.string());
}

}  // namespace hoskip
