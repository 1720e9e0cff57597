#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modrate/cli.hpp"

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"modrate"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return modrate::cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path tmp(const std::string& n) { return std::filesystem::temp_directory_path() / ("modrate_unit_" + n); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}) == modrate::cli::kUsage);
  CHECK(run({"modulus", "--name", "nosuch"}) == modrate::cli::kUsage);
  CHECK(run({"modulus", "--name", "indicator", "--param", "a=1/3"}) == modrate::cli::kUsage);
  CHECK(run({"modulus"}) == modrate::cli::kUsage);
  CHECK(run({"rate", "--name", "harmonic", "--kind", "nope"}) == modrate::cli::kUsage);
}

TEST_CASE("modulus report in json") {
  const auto out = tmp("mod.json");
  REQUIRE(run({"modulus", "--name", "harmonic", "--p", "2", "--n-max", "3", "--out", out.string()}) == 0);
  const auto j = nlohmann::json::parse(read(out));
  CHECK(j["command"] == "modulus");
  CHECK(j["profiles"][0]["entries"][0][1] == 3);
}

TEST_CASE("config file with flag override") {
  const auto cfg = tmp("cfg.json");
  const auto out = tmp("cfg_out.csv");
  std::ofstream(cfg) << R"({"name": "indicator", "n_max": 2, "format": "csv", "p": ["2"]})";
  REQUIRE(run({"modulus", "--config", cfg.string(), "--n-max", "3", "--out", out.string()}) == 0);
  const std::string text = read(out);
  CHECK(text.rfind("function,p,kind,n,m,entry_kind\n", 0) == 0);
  CHECK(text.find("indicator,2,modulus,3,7,exact") != std::string::npos);
}

TEST_CASE("function files round trip") {
  const auto f = tmp("fn.json");
  const auto out = tmp("fn_out.json");
  std::ofstream(f) << R"({"kind": "step", "values": [[1, 0], [0, 0]]})";
  REQUIRE(run({"rate", "--kind", "step", "--function", f.string(), "--n-max", "3", "--out", out.string()}) == 0);
  const auto j = nlohmann::json::parse(read(out));
  CHECK(j["profiles"][0]["entries"][3][1] == 1);
}

TEST_CASE("entropy path report carries the bound as a decimal string") {
  const auto out = tmp("ent.json");
  REQUIRE(run({"entropy", "--class", "paths", "--mu", "2", "--n", "0", "--out", out.string()}) == 0);
  const auto j = nlohmann::json::parse(read(out));
  CHECK(j["path_count_bound"] == "81");
  CHECK(j["label"] == "trend check only");
}
