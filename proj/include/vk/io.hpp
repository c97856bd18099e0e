// JSON, CSV and file output with 17 significant digits.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace vk {

std::string format_number(double v);

/// nlohmann::json dump with every floating value printed as %.17g (non-finite as null).
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& fields);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes content to dir/name, creating dir. Returns the path.
std::string write_output(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace vk
