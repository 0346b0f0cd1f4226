#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "rdmlab/engine.hpp"
#include "rdmlab/prob.hpp"
#include "rdmlab/tournament.hpp"

using namespace rdmlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
  args.insert(args.begin(), "rdmlab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, hooks);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RDMLAB_DATA_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rdmlab_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("dist") {
  Run r = run({"dist", data("three_cycle.trn")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1/3 1/3 1/3\n", 0) == 0);

  r = run({"dist", data("lower_bound.json"), "--coalition", "u,v,w"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "29/60"));

  r = run({"dist", data("single.trn")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1/1\n", 0) == 0);

  r = run({"dist", data("lower_bound.json"), "--mc", "1000", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "mc "));
}

TEST_CASE("manipulate") {
  Run r = run({"manipulate", data("lower_bound.json"), "--coalition", "u,v,w"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "gain: 31/60"));
  CHECK(contains(r.out, "base: 29/60"));

  r = run({"manipulate", data("lower_bound.json"), "--coalition", "u,v,w,a,b"});
  CHECK(contains(r.out, "gain: 0/1"));

  r = run({"manipulate", data("three_cycle.json"), "--coalition", "b,c"});
  CHECK(contains(r.out, "gain: 1/3"));
}

TEST_CASE("search") {
  Run r = run({"search", "--n", "5", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "= 31/60"));
  CHECK(contains(run({"search", "--n", "3", "--k", "2"}).out, "= 1/3"));
  CHECK(contains(run({"search", "--n", "3", "--k", "3"}).out, "= 0/1"));
  CHECK(contains(run({"search", "--n", "4", "--k", "3", "--no-iso", "--threads", "2"}).out, "= 1/2"));
}

TEST_CASE("sybil") {
  Run r = run({"sybil", data("three_cycle.json"), "--team", "a", "--m-max", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p(1) = 2/3"));

  r = run({"sybil", data("condorcet.trn"), "--team", "0"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "condorcet: sybils win w.p. 1"));
  const auto j = nlohmann::json::parse(run({"sybil", data("condorcet.trn"), "--team", "0", "--json"}).out);
  CHECK(j["results"]["status"] == "condorcet: sybils win w.p. 1");

  r = run({"sybil", data("three_cycle.json"), "--team", "a", "--enumerate", "--m-max", "3"});
  CHECK(contains(r.out, "invariance: OK (8 configs)"));
}

TEST_CASE("json output re-parses to exact values and is byte-stable") {
  const std::vector<std::vector<std::string>> commands = {
      {"dist", data("lower_bound.json"), "--coalition", "u,v,w", "--mc", "500", "--json"},
      {"manipulate", data("lower_bound.json"), "--coalition", "u,v,w", "--json"},
      {"search", "--n", "5", "--k", "3", "--json"},
      {"sybil", data("three_cycle.json"), "--team", "a", "--m-max", "12", "--json"},
  };
  for (const auto& cmd : commands) {
    const Run a = run(cmd);
    const Run b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::accept(a.out));
  }
  const auto m = nlohmann::json::parse(run(commands[1]).out);
  CHECK(parse_fraction(m["results"]["gain"].get<std::string>()) == make_prob(31, 60));
  CHECK(parse_fraction(m["results"]["base"].get<std::string>()) == make_prob(29, 60));
  for (const auto& w : m["results"]["witnesses"]) {
    const Tournament t = parse_tournament_json(w.dump());
    CHECK(coalition_win_prob(t, TeamSet::of({0, 1, 2})) == 1);
  }
  const auto s = nlohmann::json::parse(run(commands[3]).out);
  CHECK(s["results"]["scan"][0]["p"] == "2/3");
  CHECK(s["results"]["scan"][0]["p_decimal"] == "0.666667");
  CHECK(s["results"]["scan"].size() == 12);
  CHECK_FALSE(contains(run(commands[2]).out, "timing"));
  CHECK(contains(run({"--timing", "search", "--n", "4", "--k", "2", "--json"}).out, "timing"));
}

TEST_CASE("witness files re-verify") {
  const fs::path dir = scratch("witness");
  Run r = run({"search", "--n", "5", "--k", "3", "--out", dir.string(), "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  std::string coalition;
  for (const auto& v : j["results"]["coalition"]) coalition += (coalition.empty() ? "" : ",") + v.get<std::string>();
  r = run({"manipulate", (dir / "witness.trn").string(), "--coalition", coalition});
  CHECK(contains(r.out, "gain: 31/60"));
  r = run({"dist", (dir / "manipulated.trn").string(), "--coalition", coalition, "--json"});
  const auto d = nlohmann::json::parse(r.out);
  const Prob base = parse_fraction(j["results"]["base"].get<std::string>());
  CHECK(parse_fraction(d["results"]["coalition"]["exact"].get<std::string>()) - base == make_prob(31, 60));

  const fs::path mdir = scratch("manip");
  r = run({"manipulate", data("lower_bound.json"), "--coalition", "u,v,w", "--out", mdir.string()});
  CHECK(fs::exists(mdir / "witness_1.trn"));
  CHECK(fs::exists(mdir / "witness_2.trn"));
  CHECK(run({"dist", (mdir / "witness_1.trn").string(), "--coalition", "0,1,2"}).out.find("coalition {0,1,2}: 1/1") !=
        std::string::npos);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("errors");
  write(dir / "bad.trn", "3\n010\n000\n100\n");
  Run r = run({"dist", (dir / "bad.trn").string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unresolved"));
  CHECK(run({"dist", (dir / "missing.trn").string()}).code == 2);
  CHECK(run({"dist", data("lower_bound.json"), "--coalition", "u,zz"}).code == 2);
  CHECK(run({"manipulate", data("three_cycle.json")}).code == 2);

  write(dir / "big.trn", to_trn(Tournament::transitive(8)));
  r = run({"manipulate", (dir / "big.trn").string(), "--coalition", "0,1,2,3,4,5,6"});
  CHECK(r.code == 2);
  r = run({"search", "--n", "7", "--k", "3"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "allow-large"));
  CHECK(run({"sybil", data("three_cycle.json"), "--team", "q"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"dist", "--help"}).code == 0);
}

TEST_CASE("verify-paper passes and notices a broken engine") {
  Run r = run({"verify-paper"});
  CHECK(r.code == 0);
  CHECK_FALSE(contains(r.out, "FAIL"));
  CHECK(contains(r.out, "11/11 criteria passed"));

  const auto j = nlohmann::json::parse(run({"verify-paper", "--json"}).out);
  CHECK(j["results"]["passed"] == true);
  CHECK(j["results"]["criteria"].size() == 11);
  CHECK(run({"verify-paper", "--json"}).out == run({"verify-paper", "--json"}).out);

  cli::Hooks broken;
  // Swaps the first two teams' probabilities whenever they differ.
  broken.engine = [](const Tournament& t) {
    WinDistribution d = win_distribution(t);
    if (d.size() >= 2) std::swap(d.probs[0], d.probs[1]);
    return d;
  };
  r = run({"verify-paper"}, broken);
  CHECK(r.code == 1);
  CHECK(contains(r.out, "FAIL"));

  cli::Hooks off_by_a_bit;
  off_by_a_bit.engine = [](const Tournament& t) {
    WinDistribution d = win_distribution(t);
    if (t.size() >= 4) {
      d.probs[0] += make_prob(1, 1000);
      d.probs[1] -= make_prob(1, 1000);
    }
    return d;
  };
  CHECK(run({"verify-paper"}, off_by_a_bit).code == 1);
}
