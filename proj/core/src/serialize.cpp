#include "advdiff/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace advdiff {

using nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  if (res.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) cells.push_back(format_number(v));
  rows_.push_back(std::move(cells));
}

void CsvTable::add_text_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) s[static_cast<std::size_t>(i)] = digits[value & 0xf];
  return s;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

json spec_json(const GaussianPerturbationSpec& s) {
  return {{"family", "gaussian"},
          {"d", s.d},
          {"gamma", s.gamma},
          {"beta", s.beta},
          {"datum_cutoff_radius", s.datum_cutoff_radius},
          {"truncate_drift", s.truncate_drift},
          {"schema_version", kSchemaVersion}};
}

}  // namespace

std::string to_json(const GaussianPerturbationSpec& spec) { return spec_json(spec).dump(2); }

std::string to_json(const SelfSimilarProfile1D& profile) {
  json coeffs = json::array();
  for (double c : profile.extension_coefficients()) coeffs.push_back(c);
  json j = {{"family", "selfsim1d"},
            {"d", 1},
            {"alpha", SelfSimilarProfile1D::alpha},
            {"gamma", SelfSimilarProfile1D::gamma},
            {"C", SelfSimilarProfile1D::C},
            {"M", SelfSimilarProfile1D::M},
            {"extension", {{"kind", "odd_polynomial"}, {"powers", {1, 3, 5, 7, 9, 11}}, {"coefficients", coeffs}}},
            {"schema_version", kSchemaVersion}};
  return j.dump(2);
}

std::string to_json(const SelfSimilarProfileRadial& profile) {
  json j = {{"family", "selfsim_radial"},
            {"d", profile.dimension()},
            {"alpha", profile.alpha()},
            {"gamma", profile.gamma()},
            {"C", profile.C()},
            {"M", profile.M()},
            {"L", profile.L()},
            {"cutoff", {{"kind", "logistic_bump"}, {"steepness", profile.cutoff_steepness()}}},
            {"schema_version", kSchemaVersion}};
  return j.dump(2);
}

std::string to_json(const VelocityFieldSpec& field) {
  json params = json::object();
  for (const auto& [k, v] : field.params()) params[k] = number(v);
  json j = {{"family", to_string(field.family())},
            {"name", field.name()},
            {"d", field.dimension()},
            {"singular_at_one", field.singular_at_one()},
            {"params", params},
            {"schema_version", kSchemaVersion}};
  if (field.singular_time()) j["singular_time"] = *field.singular_time();
  return j.dump(2);
}

std::string to_json(const RegimeClassification& c) {
  json witnesses = json::object();
  if (c.gnl_alpha) witnesses["gnl_alpha"] = *c.gnl_alpha;
  if (c.beta_interval) witnesses["beta_interval"] = {c.beta_interval->first, c.beta_interval->second};
  if (c.beta_choice) witnesses["beta"] = *c.beta_choice;
  json j = {{"r", number(c.triple.r)},
            {"q", number(c.triple.q)},
            {"d", c.triple.d},
            {"sum", c.sum},
            {"regime", to_string(c.regime)},
            {"flags",
             {{"EnergyEstimate", c.energy_estimate},
              {"StrictDuhamel", c.strict_duhamel},
              {"Borderline", c.borderline},
              {"BlowupPossible", c.blowup_possible}}},
            {"witnesses", witnesses},
            {"schema_version", kSchemaVersion}};
  return j.dump(2);
}

}  // namespace advdiff
