#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "csc/cli.hpp"
#include "csc/table.hpp"

using namespace csc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/csc_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("full-precision decimals") {
  CHECK(format_full(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_full(2.0) == "2");
  CHECK(format_full(-0.009936) == "-0.0099360000000000004");
}

TEST_CASE("empty table renders as a bare header") {
  ResultTable t;
  t.add_column("a");
  t.add_column("b");
  CHECK(to_csv(t) == "a,b\n");
}

TEST_CASE("one-row table round-trips through the json reader") {
  ResultTable t;
  t.add_meta("n", "3");
  t.add_column("x").push_back(0.1 + 0.2);
  t.add_column("y").push_back(-1.5e-300);
  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j["meta"]["n"] == "3");
  CHECK(j["columns"]["x"][0].get<double>() == 0.1 + 0.2);
  CHECK(j["columns"]["y"][0].get<double>() == -1.5e-300);
}

TEST_CASE("ragged tables are rejected") {
  ResultTable t;
  t.add_column("a").push_back(1.0);
  t.add_column("b");
  CHECK_THROWS(to_csv(t));
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(cli::run({"bogus-subcommand"}) == 2);
  CHECK(cli::run({}) == 2);
  CHECK(cli::run({"spherical", "--n", "2"}) == 2);
  CHECK(cli::run({"spherical", "--n", "3", "--xi", "1,2"}) == 2);
}

TEST_CASE("cli: io failure exits with code 1") {
  CHECK(cli::run({"spherical", "--n", "3", "--out",
                  "/nonexistent-dir/never/x.csv"}) == 1);
}

TEST_CASE("cli: spherical emits the volume integral") {
  TempFile f("spherical.csv");
  CHECK(cli::run({"spherical", "--n", "3", "--out", f.path}) == 0);
  const std::string body = slurp(f.path);
  CHECK(body.find("mass") != std::string::npos);
  CHECK(body.find("2.46740110") != std::string::npos);
}

TEST_CASE("cli: identical configurations give identical bytes") {
  TempFile f1("det1.json"), f2("det2.json");
  CHECK(cli::run({"kelvin", "--n", "3", "--lambda", "2", "--xi", "1,0,0",
                  "--format", "json", "--seed", "7", "--out", f1.path}) == 0);
  CHECK(cli::run({"kelvin", "--n", "3", "--lambda", "2", "--xi", "1,0,0",
                  "--format", "json", "--seed", "7", "--out", f2.path}) == 0);
  const std::string b1 = slurp(f1.path);
  CHECK(!b1.empty());
  CHECK(b1 == slurp(f2.path));
  // the transformed parameters appear in the output
  const auto j = nlohmann::json::parse(b1);
  CHECK(j["columns"]["lambda_t"][0].get<double>() == doctest::Approx(0.4));
}

TEST_CASE("cli: period map rows") {
  TempFile f("period.csv");
  CHECK(cli::run({"period-map", "--n", "3", "--eps", "0.1:0.3:geometric:3",
                  "--out", f.path}) == 0);
  const std::string body = slurp(f.path);
  // header plus three data rows plus meta comments
  int rows = 0;
  for (char ch : body) rows += (ch == '\n');
  CHECK(rows >= 4);
  CHECK(body.find("T_quadrature") != std::string::npos);
}

TEST_CASE("cli: cylinder table has vanishing energy column") {
  TempFile f("cyl.json");
  CHECK(cli::run({"cylinder", "--n", "3", "--count", "17", "--format", "json",
                  "--out", f.path}) == 0);
  const auto j = nlohmann::json::parse(slurp(f.path));
  for (const auto& h : j["columns"]["H"]) {
    CHECK(std::abs(h.get<double>()) < 1e-13);
  }
}
