#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rdmlab/acceptance.hpp"
#include "rdmlab/report.hpp"
#include "rdmlab/sybil.hpp"

namespace rdmlab::cli {

namespace {

using nlohmann::json;

struct Common {
  bool json = false;
  bool timing = false;
  int threads = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int resolve_team(const Tournament& t, const std::string& token) {
  const std::optional<int> id = t.find_team(token);
  if (!id) throw UsageError("unknown team '" + token + "'");
  return *id;
}

TeamSet resolve_coalition(const Tournament& t, const std::string& text) {
  TeamSet s;
  for (const std::string& token : split_list(text)) s = s.with(resolve_team(t, token));
  return s;
}

std::string set_label(const Tournament& t, TeamSet s) {
  std::string out;
  for (int i : s.members()) out += (out.empty() ? "" : ",") + t.name(i);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void emit(std::ostream& out, const Common& c, json report, double seconds) {
  if (c.timing) report["timing"] = json{{"seconds", seconds}};
  out << report.dump(2) << "\n";
}

struct DistArgs {
  std::string file;
  std::string coalition;
  std::uint64_t mc = 0;
  std::uint64_t seed = 1;
};

void cmd_dist(const DistArgs& a, const Common& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Tournament t = load_tournament(a.file);
  const WinDistribution d = win_distribution(t);
  std::optional<EmpiricalDistribution> mc;
  if (a.mc > 0) mc = win_distribution_montecarlo(t, a.mc, a.seed);
  std::optional<TeamSet> s;
  if (!a.coalition.empty()) s = resolve_coalition(t, a.coalition);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (c.json) {
    json teams = json::array();
    for (int i = 0; i < t.size(); ++i) {
      json row{{"team", t.name(i)}, {"exact", to_fraction(d[i])}, {"decimal", to_decimal(d[i])}};
      if (mc) row["mc"] = mc->freq[static_cast<std::size_t>(i)];
      teams.push_back(std::move(row));
    }
    json inputs{{"file", a.file}};
    json results{{"teams", std::move(teams)}};
    if (mc) {
      inputs["mc_samples"] = a.mc;
      inputs["seed"] = a.seed;
    }
    if (s) {
      const Prob r = d.coalition(*s);
      inputs["coalition"] = report::team_list(t, *s);
      results["coalition"] = json{{"exact", to_fraction(r)}, {"decimal", to_decimal(r)}};
    }
    emit(out, c, json{{"command", "dist"}, {"inputs", std::move(inputs)}, {"results", std::move(results)}}, secs);
    return;
  }

  for (int i = 0; i < t.size(); ++i) out << (i ? " " : "") << to_fraction(d[i]);
  out << "\n";
  for (int i = 0; i < t.size(); ++i) {
    out << std::left << std::setw(8) << t.name(i) << std::setw(14) << to_fraction(d[i]) << to_decimal(d[i]);
    if (mc) out << "  mc " << std::fixed << std::setprecision(6) << mc->freq[static_cast<std::size_t>(i)];
    out << "\n";
  }
  if (mc) out << "monte carlo: " << a.mc << " samples, seed " << a.seed << "\n";
  if (s) {
    const Prob r = d.coalition(*s);
    out << "coalition {" << set_label(t, *s) << "}: " << to_fraction(r) << " (" << to_decimal(r) << ")\n";
  }
  if (c.timing) out << "time: " << secs << " s\n";
}

struct ManipulateArgs {
  std::string file;
  std::string coalition;
  std::string out_dir;
};

void cmd_manipulate(const ManipulateArgs& a, const Common& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Tournament t = load_tournament(a.file);
  const TeamSet s = resolve_coalition(t, a.coalition);
  if (s.empty()) throw UsageError("coalition is empty");
  const ManipulationResult r = manipulation_gain(t, s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      write_file(std::filesystem::path(a.out_dir) / ("witness_" + std::to_string(i + 1) + ".trn"),
                 to_trn(r.witnesses[i]));
    }
  }
  if (c.json) {
    json inputs{{"file", a.file}, {"coalition", report::team_list(t, s)}};
    emit(out, c, json{{"command", "manipulate"}, {"inputs", std::move(inputs)}, {"results", report::manipulation(t, s, r)}},
         secs);
    return;
  }
  out << "coalition: " << set_label(t, s) << "\n";
  out << "base: " << to_fraction(r.base_prob) << " (" << to_decimal(r.base_prob) << ")\n";
  out << "best: " << to_fraction(r.best_prob) << " (" << to_decimal(r.best_prob) << ")\n";
  out << "gain: " << to_fraction(r.gain) << " (" << to_decimal(r.gain) << ")\n";
  out << "witnesses: " << r.witnesses.size() << "\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    out << "witness " << i + 1 << ":\n" << to_trn(r.witnesses[i]);
  }
  if (c.timing) out << "time: " << secs << " s\n";
}

struct SearchArgs {
  int n = 0;
  int k = 0;
  bool allow_large = false;
  bool no_iso = false;
  std::string out_dir;
};

void cmd_search(const SearchArgs& a, const Common& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  SearchOptions opts;
  opts.threads = c.threads;
  opts.allow_large = a.allow_large;
  opts.isomorphism_reduction = !a.no_iso;
  const WorstCaseResult r = worst_case(a.n, a.k, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    write_file(std::filesystem::path(a.out_dir) / "witness.trn", to_trn(r.witness));
    write_file(std::filesystem::path(a.out_dir) / "manipulated.trn", to_trn(r.manipulated));
  }
  if (c.json) {
    json inputs{{"n", a.n}, {"k", a.k}, {"isomorphism_reduction", !a.no_iso}};
    emit(out, c, json{{"command", "search"}, {"inputs", std::move(inputs)}, {"results", report::worst_case(r)}}, secs);
    return;
  }
  out << "alpha_{" << a.k << "," << a.n << "} = " << to_fraction(r.alpha) << " (" << to_decimal(r.alpha) << ")\n";
  out << "tournaments examined: " << r.tournaments_examined << ", instances: " << r.instances_examined << "\n";
  out << "coalition: " << set_label(r.witness, r.coalition) << "\n";
  out << "base: " << to_fraction(r.base_prob) << "\n";
  out << "witness:\n" << to_trn(r.witness) << "manipulated:\n" << to_trn(r.manipulated);
  if (c.timing) out << "time: " << secs << " s\n";
}

struct SybilArgs {
  std::string file;
  std::string team;
  int m_max = 10;
  bool enumerate = false;
};

void cmd_sybil(const SybilArgs& a, const Common& c, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Tournament t = load_tournament(a.file);
  const int u1 = resolve_team(t, a.team);
  const SybilScan scan = p_scan(t, u1, a.m_max);
  std::optional<InvarianceReport> inv;
  if (a.enumerate && scan.status == ScanStatus::Ok) {
    inv = sybil_invariance_check(t, u1, std::min(a.m_max, kMaxEnumeratedSybils));
  }
  const std::optional<int> below = first_m_below(scan, make_prob(1, 20));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const char* condorcet = "condorcet: sybils win w.p. 1";

  if (c.json) {
    json inputs{{"file", a.file}, {"team", t.name(u1)}, {"m_max", a.m_max}, {"enumerate", a.enumerate}};
    json results;
    if (scan.status == ScanStatus::CondorcetAttacker) {
      results = json{{"status", condorcet}};
    } else {
      results = json{{"status", "ok"},
                     {"scan", report::sybil_scan(scan)},
                     {"recursions_agree", scan.recursions_agree},
                     {"full_dp_agree", scan.full_dp_agree},
                     {"full_dp_checked_through", scan.full_dp_checked_through},
                     {"first_m_below_0.05", below ? json(*below) : json(nullptr)}};
      if (inv) results["invariance"] = report::invariance(*inv);
    }
    emit(out, c, json{{"command", "sybil"}, {"inputs", std::move(inputs)}, {"results", std::move(results)}}, secs);
    return;
  }
  if (scan.status == ScanStatus::CondorcetAttacker) {
    out << condorcet << "\n";
    return;
  }
  out << "attacker: " << t.name(u1) << "\n";
  for (const SybilScanEntry& e : scan.entries) {
    out << "p(" << e.m << ") = " << to_fraction(e.p) << "  h = " << to_fraction(e.h) << "  g = " << to_fraction(e.g)
        << "  (" << to_decimal(e.p) << ")" << (e.full_dp_checked ? "  [engine-checked]" : "") << "\n";
  }
  if (below) out << "first m with p < 0.05: " << *below << "\n";
  if (!scan.recursions_agree || !scan.full_dp_agree) out << "cross-check: MISMATCH\n";
  if (inv) {
    out << "invariance: " << (inv->ok() ? "OK" : "FAILED") << " (" << inv->configs << " configs) at m=" << inv->m
        << ", clone total " << to_fraction(inv->sybil_total) << "\n";
  }
  if (c.timing) out << "time: " << secs << " s\n";
}

bool cmd_verify(bool n6, const Common& c, const Hooks& hooks, std::ostream& out) {
  AcceptanceOptions opts;
  opts.engine = hooks.engine;
  opts.include_n6 = n6;
  opts.search.threads = c.threads;
  const std::vector<CriterionResult> results = run_acceptance(opts);
  bool all = true;
  for (const CriterionResult& r : results) all = all && r.passed;

  if (c.json) {
    json rows = json::array();
    double total = 0;
    for (const CriterionResult& r : results) {
      json row{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
      if (c.timing) row["seconds"] = r.seconds;
      total += r.seconds;
      rows.push_back(std::move(row));
    }
    emit(out, c, json{{"command", "verify-paper"}, {"inputs", json{{"n6", n6}}}, {"results", json{{"criteria", std::move(rows)}, {"passed", all}}}},
         total);
    return all;
  }
  int passed = 0;
  for (const CriterionResult& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << ": " << r.detail;
    if (c.timing) out << " [" << r.seconds << " s]";
    out << "\n";
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
  return all;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Exact analysis of Randomized Death Match tournaments", "rdmlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "Machine-readable JSON output");
  app.add_flag("--timing", common.timing, "Report wall-clock time");
  app.add_option("--threads", common.threads, "Worker threads (default: RDMLAB_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  DistArgs dist;
  CLI::App* dist_cmd = app.add_subcommand("dist", "Exact winner distribution");
  dist_cmd->add_option("file", dist.file, "Tournament (.trn or JSON)")->required();
  dist_cmd->add_option("--coalition", dist.coalition, "Comma-separated teams; prints r_S");
  dist_cmd->add_option("--mc", dist.mc, "Monte Carlo samples for a sanity column");
  dist_cmd->add_option("--seed", dist.seed, "Monte Carlo seed");

  ManipulateArgs manip;
  CLI::App* manip_cmd = app.add_subcommand("manipulate", "Best gain from rewiring a coalition's internal matches");
  manip_cmd->add_option("file", manip.file, "Tournament (.trn or JSON)")->required();
  manip_cmd->add_option("--coalition", manip.coalition, "Comma-separated teams")->required();
  manip_cmd->add_option("--out", manip.out_dir, "Directory for witness .trn files");

  SearchArgs search;
  CLI::App* search_cmd = app.add_subcommand("search", "Exhaustive worst case alpha_{k,n}");
  search_cmd->add_option("--n", search.n, "Number of teams")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--k", search.k, "Coalition size")->required()->check(CLI::PositiveNumber);
  search_cmd->add_flag("--allow-large", search.allow_large, "Permit n = 7");
  search_cmd->add_flag("--no-iso", search.no_iso, "Search every labeled tournament");
  search_cmd->add_option("--out", search.out_dir, "Directory for witness .trn files");

  SybilArgs sybil;
  CLI::App* sybil_cmd = app.add_subcommand("sybil", "Sybil attack scan");
  sybil_cmd->add_option("file", sybil.file, "Tournament (.trn or JSON)")->required();
  sybil_cmd->add_option("--team", sybil.team, "Attacking team")->required();
  sybil_cmd->add_option("--m-max", sybil.m_max, "Largest clone count")->check(CLI::PositiveNumber);
  sybil_cmd->add_flag("--enumerate", sybil.enumerate, "Check invariance over every clone configuration");

  bool n6 = false;
  CLI::App* verify_cmd = app.add_subcommand("verify-paper", "Run every acceptance criterion");
  verify_cmd->add_flag("--n6", n6, "Extend the sweeps to n = 6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dist_cmd) cmd_dist(dist, common, out);
    if (*manip_cmd) cmd_manipulate(manip, common, out);
    if (*search_cmd) cmd_search(search, common, out);
    if (*sybil_cmd) cmd_sybil(sybil, common, out);
    if (*verify_cmd) return cmd_verify(n6, common, hooks, out) ? kExitOk : kExitVerifyFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace rdmlab::cli
