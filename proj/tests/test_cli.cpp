#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>

#include "f1kit/cli.hpp"
#include "f1kit/genseries.hpp"
#include "f1kit/treeop.hpp"

using namespace f1kit;
using cli::main_with_args;

namespace {

std::string out(const std::vector<std::string>& args) {
  const auto r = main_with_args(args);
  INFO(r.error);
  CHECK(r.status == 0);
  return r.output;
}

int status(const std::vector<std::string>& args) { return main_with_args(args).status; }

std::string run_tool(const std::string& args) {
  std::string cmd = std::string(F1KIT_TOOL_PATH) + " " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe.get())) > 0) result.append(buf, got);
  return result;
}

}  // namespace

TEST_CASE("documented examples") {
  CHECK(out({"classes", "--space", "mbar0", "--n", "6", "--basis", "L"}) == "L^3+16L^2+16L+1\n");
  CHECK(out({"points", "--space", "mbar0", "--n", "5", "--m", "0"}) == "7\n");
  CHECK(out({"blueprint", "--n", "4"}) == "x{1,2} + x{1,4} == x{1,3}\n");
  CHECK(out({"classes", "--space", "tdn", "--d", "1", "--n", "4"}) == to_string(tdn_class(1, 4)) + "\n");
}

TEST_CASE("outputs equal library results") {
  CHECK(out({"classes", "--space", "tdn", "--d", "2", "--n", "5"}) == to_string(tdn_class(2, 5)) + "\n");
  CHECK(out({"classes", "--space", "open", "--d", "1", "--n", "4"}) == "T^2-3T+2\n");
  CHECK(out({"classes", "--space", "proj", "--d", "2", "--basis", "L"}) == "L^2+L+1\n");
  CHECK(out({"points", "--space", "tdn", "--d", "1", "--n", "5", "--m", "0"}) == "34\n");
  CHECK(out({"points", "--space", "mbar0", "--n", "30", "--m", "123456789012345678901234567890"}) ==
        count_points(mbar0_class(30), BigInt("123456789012345678901234567890")).str() + "\n");
}

TEST_CASE("strata table") {
  const auto r = main_with_args({"strata", "--d", "1", "--n", "4", "--format", "csv"});
  REQUIRE(r.status == 0);
  std::size_t lines = 0;
  for (char c : r.output) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 27);
  CHECK(r.output.rfind("tree,vertices,class\n", 0) == 0);
  const auto text = out({"strata", "--d", "1", "--n", "4"});
  CHECK(text.find("strata: 26\n") != std::string::npos);
  CHECK(text.find("sum: T^2+7T+7") != std::string::npos);
  const auto j = nlohmann::ordered_json::parse(out({"strata", "--d", "2", "--n", "4", "--format", "json"}));
  CHECK(j["count"] == 26);
  CHECK(j["verified"] == true);
  CHECK(mot_class_from_json(j["sum"]) == tdn_class(2, 4));
}

TEST_CASE("series") {
  CHECK(out({"series", "--d", "1", "--order", "5", "--format", "csv"}) ==
        "n,class\n1,1\n2,1\n3,T+2\n4,T^2+7T+7\n5,T^3+19T^2+51T+34\n");
  const auto j = nlohmann::ordered_json::parse(out({"series", "--d", "2", "--format", "json"}));
  CHECK(j["series"]["order"] == 10);
}

TEST_CASE("json schema") {
  const auto j = nlohmann::ordered_json::parse(out({"classes", "--space", "proj", "--d", "1", "--format", "json"}));
  CHECK(j["class"].dump() == R"({"basis":"T","coeffs":["2","1"]})");
  CHECK(j["poincare"] == "1+q^2");
}

TEST_CASE("blueprint and crossed") {
  const auto five = out({"blueprint", "--n", "5"});
  CHECK(std::count(five.begin(), five.end(), '\n') == 5);
  CHECK(out({"blueprint", "--n", "4", "--localize", "2"}) == "x{1,2}/f^2 + x{1,4}/f^2 == x{1,3}/f^2\n");
  const auto j = nlohmann::ordered_json::parse(out({"crossed", "--g", "2", "--n", "6", "--format", "json"}));
  CHECK(j["group_order"] == 8);
  CHECK(j["relations"].size() == 120);
  const auto text = out({"crossed", "--g", "1", "--n", "4"});
  CHECK(text.rfind("group order: 2\nrelations: 2\n", 0) == 0);
}

TEST_CASE("torify") {
  CHECK(out({"torify", "--space", "proj", "--d", "1"}) == "A0:{}  1\nA1:{}  1\nA1:{1}  T\ntotal: T+2\nf1-constructible: yes\n");
  const auto j = nlohmann::ordered_json::parse(out({"torify", "--space", "open", "--d", "2", "--n", "4", "--format", "json"}));
  CHECK(mot_class_from_json(j["total_class"]) == open_stratum_class(2, 4));
  CHECK(out({"torify", "--expr", R"({"op":"complement","ambient":{"op":"torus","dim":1},"removed":{"op":"torus","dim":0}})"}) ==
        "valid: yes\nclass: T-1\n");
  const auto bad = out({"torify", "--expr", R"({"op":"complement","ambient":{"op":"torus","dim":1},"removed":{"op":"torus","dim":1}})"});
  CHECK(bad.rfind("valid: no\n", 0) == 0);
  CHECK(out({"torify", "--space", "tree", "--tree", R"({"inputs":[1],"children":[{"inputs":[2,3],"children":[]}]})"})
            .find("total: 2T+3\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(status({}) == cli::kUsage);
  CHECK(status({"frobnicate"}) == cli::kUsage);
  CHECK(status({"classes", "--space", "mbar0", "--n", "5", "--bogus"}) == cli::kUsage);
  CHECK(status({"classes", "--space", "mbar0"}) == cli::kUsage);
  CHECK(status({"classes", "--space", "tdn", "--n", "3"}) == cli::kUsage);
  CHECK(status({"classes", "--space", "mbar0", "--n", "5", "--format", "xml"}) == cli::kUsage);
  CHECK(status({"points", "--space", "mbar0", "--n", "5", "--m", "abc"}) == cli::kUsage);
  CHECK(status({"classes", "--space", "mbar0", "--n", "1"}) == cli::kRange);
  CHECK(status({"classes", "--space", "tdn", "--d", "0", "--n", "3"}) == cli::kRange);
  CHECK(status({"points", "--space", "mbar0", "--n", "5", "--m", "-1"}) == cli::kRange);
  CHECK(status({"strata", "--d", "1", "--n", "9"}) == cli::kRange);
  CHECK(status({"blueprint", "--n", "3"}) == cli::kRange);
  CHECK(status({"crossed", "--g", "3", "--n", "5"}) == cli::kRange);
  CHECK(status({"torify", "--expr", "{not json"}) == cli::kRange);
  const auto help = main_with_args({"--help"});
  CHECK(help.status == 0);
  CHECK(help.output.find("classes") != std::string::npos);
  CHECK(main_with_args({"classes", "--help"}).output.find("--space") != std::string::npos);
}

TEST_CASE("cache directory") {
  const auto dir = std::filesystem::temp_directory_path() / "f1kit_cli_cache_test";
  std::filesystem::remove_all(dir);
  REQUIRE(setenv("F1KIT_CACHE_DIR", dir.c_str(), 1) == 0);
  const auto first = out({"classes", "--space", "mbar0", "--n", "9"});
  CHECK(std::filesystem::exists(dir / "mbar0.json"));
  CHECK(out({"classes", "--space", "mbar0", "--n", "9"}) == first);
  CHECK(out({"classes", "--space", "mbar0", "--n", "5"}) == to_string(mbar0_class(5)) + "\n");
  CHECK(out({"classes", "--space", "tdn", "--d", "2", "--n", "6"}) == to_string(tdn_class(2, 6)) + "\n");
  CHECK(std::filesystem::exists(dir / "tdn_d2.json"));
  {
    std::FILE* f = std::fopen((dir / "mbar0.json").c_str(), "w");
    std::fputs("{\"values\":[{\"basis\":\"T\",\"coeffs\":[\"5\"]}]}", f);
    std::fclose(f);
  }
  CHECK(status({"classes", "--space", "mbar0", "--n", "9"}) == cli::kInvariant);
  unsetenv("F1KIT_CACHE_DIR");
  std::filesystem::remove_all(dir);
  CHECK(out({"classes", "--space", "mbar0", "--n", "9"}) == first);
}

TEST_CASE("separate processes agree") {
  const std::string args = "strata --d 2 --n 5 --format json";
  CHECK(run_tool(args) == run_tool(args));
  CHECK(run_tool("classes --space mbar0 --n 6 --basis L") == "L^3+16L^2+16L+1\n");
}
