#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "asep/cli.hpp"

using namespace asep;
using namespace asep::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "asep_cli");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("command names") {
  CHECK(parse_command("mpa") == Command::Mpa);
  CHECK(to_string(Command::Compare) == "compare");
  CHECK_THROWS_AS(parse_command("nope"), ValidationError);
}

TEST_CASE("flags resolve to model parameters") {
  const auto cfg = merge_config(Command::Exact, {}, {{"n", "6"}, {"q", "0.5"}, {"alpha", "0.25"}, {"beta", "0.25"}});
  const auto p = resolve_params(cfg, 6);
  CHECK(p.u == doctest::Approx(1.0));
  CHECK(p.v == doctest::Approx(1.0));

  const auto qvk = merge_config(Command::Mpa, {}, {{"q", "0.5"}, {"v", "1"}, {"k", "1"}});
  const auto p2 = resolve_params(qvk, 3);
  CHECK(p2.u == doctest::Approx(2.0));

  const auto w = merge_config(Command::Polymer, {}, {{"epsilon", "0.5"}, {"c_q", "1"}});
  CHECK(resolve_params(w, 16).q == doctest::Approx(std::exp(-0.25)));
}

TEST_CASE("flags override file values with a warning") {
  const auto cfg = merge_config(Command::Exact, {{"n", "4"}, {"q", "0.1"}}, {{"q", "0.2"}});
  CHECK(cfg.get("q", "") == "0.2");
  CHECK(cfg.get_int("n", 0) == 4);
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("q") != std::string::npos);
}

TEST_CASE("intervals") {
  const auto cfg = merge_config(Command::Motzkin, {}, {{"interval", "3:5"}});
  const auto I = resolve_interval(cfg);
  REQUIRE(I.has_value());
  CHECK(I->first == 3);
  CHECK(I->last == 5);
  CHECK_FALSE(resolve_interval(merge_config(Command::Motzkin, {}, {})).has_value());
  CHECK_THROWS_AS(resolve_interval(merge_config(Command::Motzkin, {}, {{"interval", "5:3"}})), ValidationError);
}

TEST_CASE("config files") {
  std::istringstream ok("# comment\n[run]\nn = 5\nq=0.3 # trailing\n\nalpha=0.5\n");
  const auto v = read_config_file(ok, "test.ini");
  CHECK(v.at("n") == "5");
  CHECK(v.at("q") == "0.3");
  CHECK(v.at("alpha") == "0.5");

  std::istringstream bad("n=5\nbogus=1\n");
  try {
    read_config_file(bad, "bad.ini");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
}

TEST_CASE("type errors name the key") {
  const auto cfg = merge_config(Command::Exact, {}, {{"n", "six"}});
  try {
    cfg.require_int("n");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'n'") != std::string::npos);
  }
  try {
    cfg.require_double("q");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'q'") != std::string::npos);
  }
}

TEST_CASE("mpa report") {
  const auto r = invoke({"mpa", "--k", "1", "--v", "1", "--q", "0.5", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# asep ") == 0);
  CHECK(r.out.find("\n1,0.4") != std::string::npos);
}

TEST_CASE("json report") {
  const auto r = invoke({"exact", "--n", "2", "--q", "0", "--alpha", "1", "--beta", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["version"].get<std::string>().rfind("asep ", 0) == 0);
  CHECK(j["config"]["n"] == "2");
  CHECK(j["current"].get<double>() == doctest::Approx(0.4));
  CHECK(j["distribution"].size() == 4);
}

TEST_CASE("compare report columns") {
  const auto r = invoke({"compare", "--q", "0.5", "--u", "0", "--v", "0", "--n_list", "20,40"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\nn,tv_distance\n") != std::string::npos);
}

TEST_CASE("dry run and exit codes") {
  const auto d = invoke({"exact", "--n", "6", "--q", "0.5", "--alpha", "0.25", "--beta", "0.25", "--dry-run"});
  CHECK(d.code == 0);
  CHECK(d.out.find("u=1 v=1") != std::string::npos);

  CHECK(invoke({"exact", "--n", "5", "--bogus", "1"}).code == 1);
  const auto bad = invoke({"exact", "--n", "five"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("'n'") != std::string::npos);
  CHECK(invoke({"exact", "--n", "5", "--q", "1.5"}).code == 1);
  CHECK(invoke({"exact", "--n", "24", "--alpha", "1", "--beta", "1"}).code == 2);
  CHECK(invoke({"teleport", "--n", "3"}).code == 1);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> args{"sim", "--n", "4", "--alpha", "0.7", "--beta", "0.4", "--samples", "2000",
                                      "--burn_in", "10", "--seed", "9", "--replicas", "2"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("every command runs") {
  CHECK(invoke({"motzkin", "--n", "30", "--q", "0.3", "--alpha", "0.6", "--beta", "0.6", "--interval", "14:16"})
            .code == 0);
  CHECK(invoke({"polymer", "--n", "20", "--q", "0.5", "--u", "0", "--v", "0"}).code == 0);
  CHECK(invoke({"shock", "--n", "4", "--q", "0.5", "--v", "1", "--k", "2"}).code == 0);
  CHECK(invoke({"lpp", "--n", "5", "--t", "3", "--seed", "2"}).code == 0);
}
