#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "advdiff/serialize.hpp"

using namespace advdiff;

TEST_CASE("numbers round-trip through their shortest form") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(-kInf) == "-inf");
}

TEST_CASE("csv tables") {
  CsvTable t({"t", "L2"});
  t.add_row({0.5, 2.0});
  t.add_text_row({"1", ""});
  CHECK(t.str() == "t,L2\n0.5,2\n1,\n");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = std::filesystem::temp_directory_path() / "advdiff_serialize_test";
  std::filesystem::remove_all(dir);
  atomic_write(dir / "x.txt", "first");
  atomic_write(dir / "x.txt", "second");
  std::ifstream f(dir / "x.txt");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "x.txt.tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("descriptors carry the schema version and are stable") {
  const SelfSimilarProfile1D p;
  const std::string a = to_json(p), b = to_json(p);
  CHECK(a == b);
  CHECK(a.find("\"schema_version\": 1") != std::string::npos);
  CHECK(to_json(SelfSimilarProfileRadial(3)).find("\"L\"") != std::string::npos);
  CHECK(to_json(classify(ExponentTriple(kInf, 2, 2))).find("Borderline") != std::string::npos);
  CHECK(to_json(VelocityFieldSpec::zero(2)).find("\"d\": 2") != std::string::npos);
}
