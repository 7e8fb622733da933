#include <doctest.h>

#include <fstream>

#include "cli.hpp"

using namespace symspec::cli;

namespace {

RunResult run_args(const std::vector<std::string>& args) { return run(parse(args)); }

}  // namespace

TEST_CASE("parse fills defaults and applies flags") {
  const RunConfig c = parse({"hardy", "check", "--p", "3", "--q", "4", "--adjoint", "--seed", "11"});
  CHECK(c.command == "hardy check");
  CHECK(c.params["p"] == 3.0);
  CHECK(c.params["q"] == 4.0);
  CHECK(c.params["adjoint"] == true);
  CHECK(c.params["trials"] == 100);
  CHECK(c.params["u_exp"].is_null());
  CHECK(c.seed == 11);
  CHECK(c.format == "json");
  const RunConfig w = parse({"wave", "linear", "--T", "3", "--dt-record", "0.5", "--factors", "3"});
  CHECK(w.params["T"] == 3.0);
  CHECK(w.params["dt_record"] == 0.5);
  CHECK(w.params["factors"] == json::array({3}));
}

TEST_CASE("parse rejects bad input") {
  CHECK_THROWS_AS(parse({"hardy", "check", "--bogus", "1"}), UsageError);
  CHECK_THROWS_AS(parse({"hardy", "check", "--p", "two"}), UsageError);
  CHECK_THROWS_AS(parse({"hardy", "frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse({"kernel", "table"}), UsageError);
  CHECK_THROWS_AS(parse({"space", "info", "--format", "xml"}), UsageError);
  CHECK_THROWS_AS(parse({"space", "info", "--factors", "3,x"}), UsageError);
}

TEST_CASE("config files") {
  {
    std::ofstream f("cfg_test.txt");
    f << "# comment\nb = 1\nm=4\nT=2\n";
  }
  const RunConfig c = parse({"wave", "linear", "--config", "cfg_test.txt", "--T", "1"});
  CHECK(c.params["b"] == 1.0);
  CHECK(c.params["m"] == 4.0);
  CHECK(c.params["T"] == 1.0);
  {
    std::ofstream f("cfg_test.json");
    f << R"({"sigma": 2, "factors": [3, 3], "points": 5})";
  }
  const RunConfig j = parse({"kernel", "table", "--config", "cfg_test.json"});
  CHECK(j.params["sigma"] == 2.0);
  CHECK(j.params["factors"] == json::array({3, 3}));
  {
    std::ofstream f("cfg_bad.json");
    f << R"({"sigma": 2, "nope": 1})";
  }
  CHECK_THROWS_WITH_AS(parse({"kernel", "table", "--config", "cfg_bad.json"}), doctest::Contains("nope"), UsageError);
  {
    std::ofstream f("cfg_type.json");
    f << R"({"points": 2.5, "sigma": 1})";
  }
  CHECK_THROWS_AS(parse({"kernel", "table", "--config", "cfg_type.json"}), UsageError);
}

TEST_CASE("space info") {
  const RunResult r = run_args({"space", "info", "--factors", "3,3"});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["rank"] == 2);
  CHECK(r.report["result"]["n"] == 6);
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["version"] == kVersion);
}

TEST_CASE("inadmissible inequality exits 2 with the failed relations") {
  const RunResult r = run_args({"ineq", "run", "--kind", "hls", "--params", "sigma=1,p=2,q=2"});
  CHECK(r.exit_code == 2);
  const json reasons = r.report["error"]["reasons"];
  CHECK(std::find(reasons.begin(), reasons.end(), "p < q") != reasons.end());
  const RunResult u = run_args({"ineq", "run", "--kind", "hls", "--params", "sigma=1,p=2,zeta=3"});
  CHECK(u.exit_code == 2);
  CHECK(u.report["error"]["type"] == "usage");
}

TEST_CASE("hardy precondition failure exits 2") {
  const RunResult r = run_args({"hardy", "check", "--u-pow", "0", "--u-exp", "0", "--trials", "1"});
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"]["type"] == "inadmissible");
}

TEST_CASE("seeded runs repeat") {
  const std::vector<std::string> h = {"hardy", "check", "--trials", "10", "--seed", "3"};
  CHECK(canonical(run_args(h).report) == canonical(run_args(h).report));
  const std::vector<std::string> i = {"ineq", "run", "--kind", "sobolev", "--params", "sigma=1,p=2,q=6", "--family",
                                      "bumps", "--budget", "12", "--count", "4", "--width-lo", "0.5", "--grid-n",
                                      "512", "--grid-m", "512", "--grid-r-max", "20", "--grid-lam-max", "32"};
  const RunResult a = run_args(i), b = run_args(i);
  CHECK(a.exit_code == 0);
  CHECK(canonical(a.report) == canonical(b.report));
  CHECK(a.report["grid"]["n_radial"] == 512);
}

TEST_CASE("csv output") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  const RunConfig c = parse({"kernel", "table", "--sigma", "1", "--points", "4", "--out", "kernel_test.csv"});
  CHECK(c.format == "csv");
  const RunResult r = run(c);
  CHECK(r.exit_code == 0);
  std::ifstream in("kernel_test.csv");
  std::string head, cols;
  std::getline(in, head);
  std::getline(in, cols);
  CHECK(head.rfind("# {", 0) == 0);
  CHECK(cols == "r,G");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("every command has a schema") {
  for (const char* id : {"space info", "spherical eval", "transform roundtrip", "kernel table", "kernel asym",
                         "hardy check", "ineq run", "wave linear", "wave semilinear"})
    CHECK(command_spec(id).id() == id);
  CHECK_THROWS_AS(command_spec("nope"), UsageError);
}
