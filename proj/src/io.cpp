#include "vk/io.hpp"

#include "vk/types.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vk {

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(const nlohmann::ordered_json& j, int indent, int depth, std::ostringstream& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* sep = indent >= 0 ? ": " : ":";
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        out << nlohmann::json(it.key()).dump() << sep;
        dump(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out << '}';
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_primitive(); });
      if (flat) {
        out << '[';
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (it != j.begin()) out << (indent >= 0 ? ", " : ",");
          dump(*it, indent, depth + 1, out);
        }
        out << ']';
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        dump(v, indent, depth + 1, out);
      }
      pad(depth);
      out << ']';
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      out << (std::isfinite(v) ? format_number(v) : "null");
      return;
    }
    default:
      out << j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::ostringstream out;
  dump(j, indent, 0, out);
  out << '\n';
  return out.str();
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> f;
  f.reserve(values.size());
  for (double v : values) f.push_back(format_number(v));
  add_row(f);
}

void CsvTable::add_row(const std::vector<std::string>& fields) {
  if (fields.size() != header_.size())
    throw Error("cli", "csv", "row has " + std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(header_.size()));
  rows_.push_back(fields);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::string write_output(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  p /= name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cli", "write_output", "cannot write '" + p.string() + "'");
  out << content;
  return p.string();
}

}  // namespace vk
