#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace psesk::cli {

// Shortest round-trip form; infinities as "+inf" / "-inf".
std::string format_double(double v);

// JSON value for a double, with infinities as the same strings.
nlohmann::json json_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void save(const std::string& path) const;

 private:
  std::string text_;
  std::size_t columns_;
};

void write_json(const std::string& path, const nlohmann::json& doc);
void write_text(const std::string& path, const std::string& text);
void ensure_directory(const std::string& dir);
std::string join_path(const std::string& dir, const std::string& name);

}  // namespace psesk::cli
