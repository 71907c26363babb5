#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "advdiff/serialize.hpp"

namespace advdiff::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

Config Config::parse(std::string_view text, const std::string& origin) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const std::string where = origin + ":" + std::to_string(number);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' has an empty value");
    if (auto it = cfg.entries_.find(key); it != cfg.entries_.end())
      throw ConfigError(where + ": key '" + key + "' already set at " + it->second.where);
    cfg.entries_[key] = {value, where, false};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value, const std::string& origin) {
  if (!valid_key(key)) throw ConfigError(origin + ": invalid key '" + key + "'");
  const std::string v(trim(value));
  if (v.empty()) throw ConfigError(origin + ": key '" + key + "' has an empty value");
  entries_[key] = {v, origin, false};
}

Config::Entry* Config::find(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

void Config::fail(const std::string& key, const std::string& message) const {
  const auto it = entries_.find(key);
  const std::string where = it == entries_.end() ? std::string("default") : it->second.where;
  throw ConfigError(where + ": " + key + ": " + message);
}

std::optional<std::string> Config::take(const std::string& key) {
  if (Entry* e = find(key)) return e->value;
  return std::nullopt;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  const Entry* e = find(key);
  const std::string v = e ? e->value : fallback;
  resolved_[key] = v;
  return v;
}

std::string Config::get_choice(const std::string& key, const std::string& fallback,
                               const std::vector<std::string>& choices) {
  const std::string v = get_string(key, fallback);
  if (std::find(choices.begin(), choices.end(), v) == choices.end()) {
    std::string list;
    for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
    fail(key, "expected one of {" + list + "}, got '" + v + "'");
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) {
  double v = fallback;
  if (const Entry* e = find(key)) {
    const auto parsed = parse_number(e->value);
    if (!parsed) fail(key, "expected a number, got '" + e->value + "'");
    v = *parsed;
  }
  resolved_[key] = format_number(v);
  return v;
}

long Config::get_int(const std::string& key, long fallback, long min_value, long max_value) {
  long v = fallback;
  if (const Entry* e = find(key)) {
    const std::string& s = e->value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(key, "expected an integer, got '" + s + "'");
  }
  if (v < min_value || v > max_value)
    fail(key, "value " + std::to_string(v) + " outside [" + std::to_string(min_value) + ", " +
                  std::to_string(max_value) + "]");
  resolved_[key] = std::to_string(v);
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) {
  bool v = fallback;
  if (const Entry* e = find(key)) {
    if (e->value == "true" || e->value == "1" || e->value == "yes") v = true;
    else if (e->value == "false" || e->value == "0" || e->value == "no") v = false;
    else fail(key, "expected true or false, got '" + e->value + "'");
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::vector<double> Config::get_list(const std::string& key, const std::string& fallback) {
  const Entry* e = find(key);
  const std::string text = e ? e->value : fallback;
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto v = parse_number(item);
    if (!v) fail(key, "expected a comma-separated list of numbers, got '" + text + "'");
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  resolved_[key] = format_list(out);
  return out;
}

void Config::check_unused() const {
  std::string msg;
  for (const auto& [key, e] : entries_)
    if (!e.used) msg += (msg.empty() ? "" : "; ") + e.where + ": unknown key '" + key + "'";
  if (!msg.empty()) throw ConfigError(msg);
}

std::string Config::canonical() const {
  std::string s;
  for (const auto& [k, v] : resolved_) s += k + "=" + v + "\n";
  return s;
}

std::string Config::hash() const { return hex64(fnv1a64(canonical())); }

}  // namespace advdiff::cli
