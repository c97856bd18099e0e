#include "vk/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace vk {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

ConfigError config_error(const std::string& what) { return ConfigError("cli", "config", what); }

bool parse_number(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string loc = source + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error(loc + "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw config_error(loc + "empty section name");
      cfg.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error(loc + "expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw config_error(loc + "missing key");
    if (key.find_first_of(" \t[]") != std::string::npos) throw config_error(loc + "invalid key '" + key + "'");
    auto& sec = cfg.data_[section];
    if (sec.count(key)) throw config_error(loc + "duplicate key '" + key + "' in [" + section + "]");
    sec[key] = {value, line_no};
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = data_.find(section);
  return it != data_.end() && it->second.count(key) > 0;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  data_[section][key] = {value, 0};
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
  auto it = data_.find(section);
  if (it == data_.end() || !it->second.count(key))
    throw config_error(source_ + ": missing key '" + key + "' in [" + section + "]");
  return it->second.at(key);
}

std::string Config::where(const Entry& e) const {
  return e.line > 0 ? source_ + ":" + std::to_string(e.line) + ": " : "command line: ";
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::optional<std::string>& fallback) const {
  if (!has(section, key) && fallback) return *fallback;
  return entry(section, key).value;
}

double Config::get_double(const std::string& section, const std::string& key, const std::optional<double>& fallback) const {
  if (!has(section, key) && fallback) return *fallback;
  const Entry& e = entry(section, key);
  double v = 0.0;
  if (!parse_number(e.value, v) || !std::isfinite(v))
    throw config_error(where(e) + "'" + key + "' is not a finite number: '" + e.value + "'");
  return v;
}

int Config::get_int(const std::string& section, const std::string& key, const std::optional<int>& fallback) const {
  if (!has(section, key) && fallback) return *fallback;
  const Entry& e = entry(section, key);
  int v = 0;
  auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size())
    throw config_error(where(e) + "'" + key + "' is not an integer: '" + e.value + "'");
  return v;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  std::vector<double> out;
  std::string tok;
  std::istringstream ss(e.value);
  while (ss >> tok) {
    std::size_t start = 0;
    while (start <= tok.size()) {
      const auto comma = tok.find(',', start);
      const std::string piece = tok.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      start = comma == std::string::npos ? tok.size() + 1 : comma + 1;
      if (piece.empty()) continue;
      double v = 0.0;
      if (!parse_number(piece, v) || !std::isfinite(v))
        throw config_error(where(e) + "'" + key + "' has a bad entry '" + piece + "'");
      out.push_back(v);
    }
  }
  return out;
}

double Config::get_tolerance(const std::string& section, const std::string& key, double fallback) const {
  const double v = get_double(section, key, fallback);
  if (!(v > 0.0)) throw config_error((has(section, key) ? where(entry(section, key)) : std::string()) + "'" + key + "' must be positive");
  return v;
}

int Config::get_resolution(const std::string& section, const std::string& key, int fallback) const {
  const int v = get_int(section, key, fallback);
  if (v < 32 || v > 4096 || (v & (v - 1)) != 0)
    throw config_error((has(section, key) ? where(entry(section, key)) : std::string()) + "'" + key +
                       "' must be a power of two between 32 and 4096");
  return v;
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : data_) out.push_back(k);
  return out;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto it = data_.find(section);
  if (it != data_.end())
    for (const auto& [k, v] : it->second) out.push_back(k);
  return out;
}

ConvexBody body_from_config(const Config& cfg, const std::string& section) {
  const std::string kind = cfg.get_string(section, "kind");
  ConvexBody body = [&] {
    if (kind == "disk") return make_disk(cfg.get_double(section, "radius", 1.0));
    if (kind == "square") return make_square(cfg.get_double(section, "half_side", 1.0));
    if (kind == "superellipse") return make_superellipse(cfg.get_double(section, "n", 2.0));
    if (kind == "stadium")
      return make_stadium(cfg.get_double(section, "half_length", 2.0), cfg.get_double(section, "radius", 1.0));
    if (kind == "ellipse")
      return make_ellipse(cfg.get_double(section, "ax"), cfg.get_double(section, "ay"), cfg.get_double(section, "angle", 0.0));
    if (kind == "polygon") {
      const std::vector<double> v = cfg.get_list(section, "vertices");
      if (v.size() % 2 != 0) throw config_error("polygon vertices need an even number of coordinates");
      std::vector<Vec2> pts;
      for (std::size_t i = 0; i < v.size(); i += 2) pts.emplace_back(v[i], v[i + 1]);
      return make_polygon(pts);
    }
    throw config_error("unknown body kind '" + kind + "'");
  }();
  if (cfg.has(section, "matrix") || cfg.has(section, "shift")) {
    Mat2 A = Mat2::Identity();
    Vec2 t = Vec2::Zero();
    if (cfg.has(section, "matrix")) {
      const auto m = cfg.get_list(section, "matrix");
      if (m.size() != 4) throw config_error("matrix needs 4 entries");
      A << m[0], m[1], m[2], m[3];
    }
    if (cfg.has(section, "shift")) {
      const auto s = cfg.get_list(section, "shift");
      if (s.size() != 2) throw config_error("shift needs 2 entries");
      t << s[0], s[1];
    }
    body = make_affine(body, A, t);
  }
  return body;
}

}  // namespace vk
