// Flat key-value configuration with one section per command.
#pragma once

#include "vk/body.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vk {

/// Text format:
///   # comment
///   [section]
///   key = value
/// Keys before the first section header belong to section "".
class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  std::string get_string(const std::string& section, const std::string& key,
                         const std::optional<std::string>& fallback = std::nullopt) const;
  double get_double(const std::string& section, const std::string& key,
                    const std::optional<double>& fallback = std::nullopt) const;
  int get_int(const std::string& section, const std::string& key, const std::optional<int>& fallback = std::nullopt) const;
  /// Comma or whitespace separated numbers.
  std::vector<double> get_list(const std::string& section, const std::string& key) const;

  /// Positive real; ConfigError otherwise.
  double get_tolerance(const std::string& section, const std::string& key, double fallback) const;
  /// Power of two in [2^5, 2^12].
  int get_resolution(const std::string& section, const std::string& key, int fallback) const;

  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;
  const std::string& source() const { return source_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& section, const std::string& key) const;
  std::string where(const Entry& e) const;

  std::string source_;
  std::map<std::string, std::map<std::string, Entry>> data_;
};

/// Body from a section with key "kind" and kind-specific parameters:
/// disk (radius), square (half_side), superellipse (n), stadium (half_length, radius),
/// polygon (vertices = x0,y0, x1,y1, ...), ellipse (ax, ay, angle).
/// Optional affine image: matrix = a11,a12,a21,a22 and shift = t1,t2.
ConvexBody body_from_config(const Config& cfg, const std::string& section = "body");

}  // namespace vk
