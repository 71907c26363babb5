#pragma once

// Flat `key = value` experiment configuration with dotted namespaces.
// Lines starting with '#' (or trailing '# ...') are comments. Every value
// read through a getter, defaulted or not, is recorded for the manifest.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace advdiff::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  /// Override (flags and --set); replaces any file value.
  void set(const std::string& key, const std::string& value, const std::string& origin = "command line");
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback);
  /// Value must be one of `choices`.
  std::string get_choice(const std::string& key, const std::string& fallback,
                         const std::vector<std::string>& choices);
  double get_double(const std::string& key, double fallback);
  long get_int(const std::string& key, long fallback, long min_value, long max_value);
  bool get_bool(const std::string& key, bool fallback);
  /// Comma-separated numbers ("1,2,inf").
  std::vector<double> get_list(const std::string& key, const std::string& fallback);
  /// Raw value if present (marks the key as used, records nothing).
  std::optional<std::string> take(const std::string& key);

  /// Records a resolved value computed by the command (e.g. an automatic gamma).
  void echo(const std::string& key, const std::string& value) { resolved_[key] = value; }

  /// Throws ConfigError naming every key that no command parameter consumed.
  void check_unused() const;

  const std::map<std::string, std::string>& resolved() const noexcept { return resolved_; }
  /// "key=value\n" lines in key order; the manifest hash is FNV-1a of this text.
  std::string canonical() const;
  std::string hash() const;

  /// Throws ConfigError mentioning the key and where it was set.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  struct Entry {
    std::string value;
    std::string where;  // "file:line" or "command line"
    bool used = false;
  };
  Entry* find(const std::string& key);
  std::map<std::string, Entry> entries_;
  std::map<std::string, std::string> resolved_;
};

/// Parses "inf", "-inf" and decimal literals; the whole string must be consumed.
std::optional<double> parse_number(std::string_view text);

}  // namespace advdiff::cli
