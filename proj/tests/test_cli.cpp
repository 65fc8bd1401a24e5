#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfzeta/cli.hpp"
#include "support.hpp"

using namespace qfzeta;
using qfzeta::test::group_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qfzeta-test-" + name)).string();
}

}  // namespace

TEST_CASE("argument parsing") {
  const RunConfig c = parse_arguments({"f", group_path("cyclic.grp"), "--n", "3", "--max-word-len", "5",
                                       "--m-trunc", "10", "--seed", "9", "--deterministic"});
  CHECK(c.command == "f");
  CHECK(c.n == 3);
  CHECK(c.max_word_len == 5);
  CHECK(c.m_trunc == 10);
  CHECK(c.seed == 9);
  CHECK(c.deterministic);
  for (const std::vector<std::string>& bad : std::vector<std::vector<std::string>>{
           {"f"},
           {"frobnicate", group_path("cyclic.grp")},
           {"f", group_path("cyclic.grp"), "--n", "1"},
           {"f", group_path("cyclic.grp"), "--max-word-len", "-2"},
           {"f", group_path("cyclic.grp"), "--quad-order", "0"},
           {"kappa", group_path("octagon.grp"), "--quad-tol", "0"},
           {"kappa", group_path("octagon.grp"), "--condition-bound", "0.5"},
           {"f", group_path("cyclic.grp"), "--bogus"},
           {"zeta", group_path("cyclic.grp"), "--s", "abc"}}) {
    try {
      parse_arguments(bad);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == "cli.ParseError");
    }
  }
}

TEST_CASE("f on the cyclic group matches the closed-form product") {
  const Run r = run_cli({"f", group_path("cyclic.grp"), "--n", "2", "--deterministic"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  validate_report(j);
  double expected = 1.0;
  for (int m = 0; m < 40; ++m) expected *= std::pow(1.0 - std::pow(0.1, 2 + m), 2);
  CHECK(std::abs(j["result"]["value"]["re"].get<double>() - expected) < 1e-15);
  CHECK(j["result"]["value"]["im"].get<double>() == 0.0);
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["max_word_len"] == 6);
  CHECK(!j.contains("timing"));
  CHECK(j["config"]["tolerances"]["quad_tol"] == 1e-6);
}

TEST_CASE("malformed group file: exit 2 and only an error object") {
  const std::string path = temp_path("bad.grp");
  {
    std::ofstream f(path);
    f << "type free 1\ngen a = (2,0 0,0 0,0)\n";
  }
  const Run r = run_cli({"classes", path, "--out", temp_path("never.json")});
  CHECK(r.code == 2);
  const Json j = Json::parse(r.out);
  CHECK(j.size() == 2);
  CHECK(j["schema"] == 1);
  CHECK(j["error"]["code"] == "moebius.ParseError");
  CHECK(j["error"]["module"] == "moebius");
  CHECK(!std::filesystem::exists(temp_path("never.json")));
  CHECK(run_cli({"classes", "/nonexistent/x.grp"}).code == 2);
  CHECK(run_cli({"classes"}).code == 2);
}

TEST_CASE("downstream errors exit 3") {
  const Run r = run_cli({"zeta", group_path("schottky-complex.grp"), "--max-word-len", "3"});
  CHECK(r.code == 3);
  CHECK(Json::parse(r.out)["error"]["code"] == "zeta.NotFuchsian");
  CHECK(run_cli({"period", group_path("schottky.grp")}).code == 3);
}

TEST_CASE("deterministic output is byte identical") {
  const std::vector<std::string> args{"classes", group_path("octagon.grp"), "--max-word-len", "3", "--deterministic"};
  const Run a = run_cli(args), b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["result"]["count"].get<std::size_t>() == j["result"]["classes"].size());
}

TEST_CASE("--out writes the report atomically") {
  const std::string path = temp_path("series.json");
  std::filesystem::remove(path);
  const Run r = run_cli({"series", group_path("schottky.grp"), "--max-word-len", "5", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(!std::filesystem::exists(path + ".tmp"));
  std::ifstream f(path);
  const Json j = Json::parse(f);
  validate_report(j);
  CHECK(j["command"] == "series");
  CHECK(j["result"].contains("tail_estimate"));
  CHECK(j.contains("timing"));
}

TEST_CASE("every command's report validates") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"classes", group_path("schottky.grp"), "--max-word-len", "3"},
           {"series", group_path("octagon-bent.grp"), "--max-word-len", "4"},
           {"zeta", group_path("octagon.grp"), "--s", "2.5", "--max-word-len", "4"},
           {"f", group_path("schottky-complex.grp"), "--n", "3", "--max-word-len", "5"},
           {"domain", group_path("octagon.grp")}}) {
    const Run r = run_cli(args);
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK_NOTHROW(validate_report(j));
    CHECK(j["command"] == args[0]);
  }
}

TEST_CASE("check on real and complex free groups") {
  Run r = run_cli({"check", group_path("schottky.grp"), "--max-word-len", "6", "--deterministic"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  validate_report(j);
  CHECK(j["result"]["all_passed"] == true);
  r = run_cli({"check", group_path("schottky-complex.grp"), "--max-word-len", "6", "--deterministic"});
  CHECK(r.code == 0);
  j = Json::parse(r.out);
  for (const auto& c : j["result"]["checks"]) {
    if (c["name"] == "fuchsian_F_real") CHECK(c["skipped"] == true);
    if (c["name"] == "reflection_F") CHECK(c["passed"] == true);
  }
}

TEST_CASE("schema validation") {
  Json ok{{"schema", 1}, {"command", "f"}, {"result", Json{{"value", Json{{"re", 1.0}, {"im", 0.0}}}}}};
  CHECK_NOTHROW(validate_report(ok));
  Json wrong_version = ok;
  wrong_version["schema"] = 2;
  CHECK_THROWS_AS(validate_report(wrong_version), Error);
  Json unknown = ok;
  unknown["result"]["surprise"] = 3;
  try {
    validate_report(unknown);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "cli.SchemaError");
    CHECK(std::string(e.what()).find("surprise") != std::string::npos);
  }
}

TEST_CASE("help exits 0") {
  const Run r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa") != std::string::npos);
  const Run f = run_cli({"f", "--help"});
  CHECK(f.code == 0);
  CHECK(f.out.find("--max-word-len") != std::string::npos);
}
