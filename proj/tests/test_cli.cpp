#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "limitp/run_config.hpp"

using namespace limitp;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "limitp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse_config reads flags") {
  const RunConfig c = parse({"residue", "--pair", "1:2", "--pair", "0:3", "-x", "5000", "-q", "9", "-b", "2",
                             "--format", "json", "-o", "out.json"});
  CHECK(c.command == "residue");
  CHECK(c.tuple.to_string() == "1:2,0:3");
  CHECK(c.x == 5000);
  CHECK(c.q == 9);
  CHECK(c.b == 2);
  CHECK(c.format == OutputFormat::json);
  CHECK(c.output == "out.json");

  const RunConfig d = parse({"constant", "--pair", "1:2"});
  CHECK(d.P == 1'000'000);
  CHECK_FALSE(d.series_requested);
  CHECK(parse({"constant", "--pair", "1:2", "-Q", "50"}).series_requested);
  CHECK(parse({"dft-check", "--pair", "0:2", "-x", "1e3"}).x == 1000);
}

TEST_CASE("parse_config rejects bad input") {
  CHECK_THROWS_AS(parse({"constant", "--pair", "1:1"}), UsageError);
  CHECK_THROWS_AS(parse({"constant", "--pair", "-1:2"}), UsageError);
  CHECK_THROWS_AS(parse({"constant", "--pair", "1:2", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse({"frobnicate", "--pair", "1:2"}), UsageError);
  CHECK_THROWS_AS(parse({"constant"}), UsageError);
  CHECK_THROWS_AS(parse({"--help"}), HelpRequested);
  try {
    parse({"constant", "--pair", "1:1"});
  } catch (const UsageError& e) {
    CHECK_FALSE(e.usage().empty());
    CHECK(exit_code_for(e) == kExitUsage);
  }
}

TEST_CASE("config file values yield to the command line") {
  const auto path = std::filesystem::temp_directory_path() / "limitp_test_config.txt";
  {
    std::ofstream out(path);
    out << "# sample\npair=1:2\npair=3:2\nx=2000\nq=5\n";
  }
  const RunConfig c = parse({"residue", "--config", path.string(), "-q", "7"});
  CHECK(c.tuple.to_string() == "1:2,3:2");
  CHECK(c.x == 2000);
  CHECK(c.q == 7);
  std::filesystem::remove(path);
}

TEST_CASE("CSV and JSON formatting round trip") {
  std::vector<EmpiricalReport> reports = {make_report(100, 25, 24.5, 1e-6, "plain"),
                                          make_report(7, 1.5, 0, 0, "has, comma \"quoted\"")};
  const std::string csv = format_reports(reports, OutputFormat::csv);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find("100,25,24.5,1.02040816327,1e-06,plain") != std::string::npos);
  for (OutputFormat fmt : {OutputFormat::csv, OutputFormat::json}) {
    const auto back = parse_reports(format_reports(reports, fmt), fmt);
    REQUIRE(back.size() == 2);
    CHECK(back[0].x == 100);
    CHECK(back[0].observed == 25);
    CHECK(back[1].notes == reports[1].notes);
    CHECK(std::isnan(back[1].ratio));
  }
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::nan("")).empty());
}

TEST_CASE("emit_report exit codes") {
  CHECK(emit_report({}, OutputFormat::csv, "-") == kExitEmptyReport);
  CHECK(emit_report({make_report(1, 1, 1, 0, "")}, OutputFormat::csv, "/nonexistent/dir/out.csv") == kExitIo);
  const auto path = std::filesystem::temp_directory_path() / "limitp_test_out.csv";
  CHECK(emit_report({make_report(1, 1, 1, 0, "")}, OutputFormat::csv, path.string()) == kExitOk);
  std::filesystem::remove(path);
}

TEST_CASE("commands run and are deterministic") {
  for (const std::string& cmd : kCommands) {
    std::vector<std::string> args = {cmd, "--pair", "1:2", "-x", "20000", "-P", "10000", "-Q", "20", "--pmax",
                                     "10"};
    if (cmd == "dft-check") args[4] = "500";
    const RunConfig c = parse(args);
    const auto first = run_command(c);
    REQUIRE_FALSE(first.empty());
    const auto second = run_command(c);
    REQUIRE(format_reports(first, OutputFormat::csv) == format_reports(second, OutputFormat::csv));
    REQUIRE(format_reports(first, OutputFormat::json) == format_reports(second, OutputFormat::json));
  }
}

TEST_CASE("inadmissible tuples map to their exit code") {
  const RunConfig c = parse({"singular", "--pair", "0:2", "--pair", "1:2", "--pair", "2:2", "--pair", "3:2"});
  try {
    (void)run_command(c);
    FAIL("expected InadmissibleError");
  } catch (const InadmissibleError& e) {
    CHECK(exit_code_for(e) == kExitInadmissible);
  }
  CHECK(exit_code_for(CapacityError("big")) == kExitCapacity);
}
