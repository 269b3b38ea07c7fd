#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wordperc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wordperc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("vn") {
  const Run r = run({"vn", "--M", "2", "--N", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n2,5,8,") != std::string::npos);
  const Run zero = run({"vn", "--M", "2", "--N", "0"});
  CHECK(zero.out.find("\n0,1,1,") != std::string::npos);
  const Run big = run({"vn", "--M", "5", "--N", "400", "--format", "json"});
  REQUIRE(big.code == 0);
  const auto j = json_of(big);
  const double ratio = std::stod(j["rows"].back()["ratio_next"].get<std::string>());
  CHECK(std::abs(ratio - 0.9978) < 5e-5);
}

TEST_CASE("exact against oracle") {
  const Run a = run({"exact", "--word", "1100", "--M", "2"});
  const Run b = run({"exact", "--word", "1100", "--M", "2", "--oracle"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(json_of(a)["probability"] == json_of(b)["probability"]);
  const Run c = run({"exact", "--twoblock", "2", "2", "--M", "2"});
  CHECK(json_of(c)["probability"] == json_of(a)["probability"]);
  const Run f = run({"exact", "--constant", "--n", "3", "--M", "2", "--float"});
  CHECK(json_of(f)["probability"].get<double>() == doctest::Approx(27.0 / 64.0));
  CHECK(run({"exact", "--word", "10", "--M", "2", "--p", "1/3", "--oracle"}).code == 2);
  CHECK(run({"exact", "--word", "10", "--M", "2", "--dump"}).out.find("on1->") != std::string::npos);
}

TEST_CASE("maxword and cm") {
  const Run m = run({"maxword", "--n", "1", "--M", "2"});
  CHECK(json_of(m)["max"]["exact"] == "3/4");
  const Run c = run({"cm", "--M", "2"});
  REQUIRE(c.code == 0);
  const auto j = json_of(c);
  CHECK(std::abs(j["c_generating_function"].get<double>() - 4.0 / 3.0) < 1e-9);
  CHECK(std::abs(j["c_ratio"].get<double>() - 4.0 / 3.0) < 1e-9);
}

TEST_CASE("json output round-trips") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"renewal", "--M", "2", "--N", "5", "--format", "json"},
           {"twoblock", "--M", "2", "--p", "2", "--q", "2", "--format", "json"},
           {"simulate", "--alternating", "--n", "3", "--M", "2", "--trials", "500", "--seed", "3"},
           {"grid", "--x", "10", "--y", "0110", "--M", "2", "--format", "json"}}) {
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const auto j = json_of(r);
    CHECK(j.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("simulate is reproducible and echoes the seed") {
  const std::vector<std::string> args{"simulate", "--word", "101", "--M", "2", "--trials", "1000", "--seed", "17"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(json_of(a)["seed"] == 17);
  const Run rw = run({"simulate", "--n", "4", "--M", "2", "--p-x", "0.5", "--p-y", "0.5", "--trials", "200"});
  CHECK(rw.code == 0);
}

TEST_CASE("verify suites") {
  CHECK(run({"verify", "thm1a", "--M", "2", "--n", "6"}).code == 0);
  CHECK(run({"verify", "renewal", "--M", "2", "--N", "100"}).code == 0);
  CHECK(run({"verify", "thm3", "--M", "2", "--n", "4"}).code == 0);
  CHECK(run({"verify", "lemma43", "--M", "3", "--n", "4"}).code == 0);
  CHECK(run({"verify", "thm1a", "--M", "2", "--n", "-1"}).code == 2);
  CHECK(run({"verify", "nosuch"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"vn", "--M", "1", "--N", "3"}).code == 2);
  CHECK(run({"exact", "--M", "2"}).code == 2);
  CHECK(run({"exact", "--word", "12", "--M", "2"}).code == 2);
  CHECK(run({"exact", "--word", "1", "--constant", "--n", "2", "--M", "2"}).code == 2);
  CHECK(run({"grid", "--x", "10", "--y", "01", "--M", "2", "--format", "json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("grid pbm") {
  const Run r = run({"grid", "--x", "10", "--y", "0110", "--M", "2"});
  CHECK(r.out.rfind("P1\n5 3", 0) == 0);
}
