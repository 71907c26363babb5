#pragma once

// Deterministic text output: shortest round-trip numbers, CSV tables,
// JSON descriptors of specs and profiles, atomic file writes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "advdiff/counterexamples.hpp"
#include "advdiff/estimates.hpp"
#include "advdiff/velocity.hpp"

namespace advdiff {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to the same double; "inf", "-inf", "nan".
std::string format_number(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& row);
  /// Preformatted cells (labels, empty cells for not-applicable values).
  void add_text_row(std::vector<std::string> row);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& header() const noexcept { return header_; }

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// JSON objects (pretty-printed, keys sorted).
std::string to_json(const GaussianPerturbationSpec& spec);
std::string to_json(const SelfSimilarProfile1D& profile);
std::string to_json(const SelfSimilarProfileRadial& profile);
std::string to_json(const VelocityFieldSpec& field);
std::string to_json(const RegimeClassification& c);

}  // namespace advdiff
