// End-to-end checks of the command-line tool: every library operation is
// reachable through exactly one registered subcommand path, reports parse as
// JSON (or CSV where documented), exit codes follow the usage contract, and
// seeded reports are byte-stable.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "registry.hpp"
#include "wiretap/info.hpp"
#include "wiretap/secrecy.hpp"

namespace {

using nlohmann::json;
using wiretap::cli::command_registry;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

const std::string& fixture_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/wiretap_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    const std::string d = tmpl;
    const auto put = [&](const char* name, const char* text) {
      std::ofstream out(d + "/" + name);
      REQUIRE(out.good());
      out << text;
    };
    put("qubit0.json",
        R"({"dim": 2, "entries": [[0.8, 0.0], [0.0, 0.0], [0.0, 0.0], [0.2, 0.0]]})");
    put("qubit1.json",
        R"({"dim": 2, "entries": [[0.5, 0.0], [0.25, -0.25], [0.25, 0.25], [0.5, 0.0]]})");
    // amplitude damping with decay 0.36; every entry is an exact decimal
    put("kraus.json", R"({"kraus_ops": [
      {"rows": 2, "cols": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.8, 0.0]]},
      {"rows": 2, "cols": 2, "entries": [[0.0, 0.0], [0.6, 0.0], [0.0, 0.0], [0.0, 0.0]]}]})");
    // binary cq channel sending 0 to |0> and 1 to |+>
    put("cq.json", R"({"inputs": ["0", "1"], "dim": 2, "states": {
      "0": {"dim": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]},
      "1": {"dim": 2, "entries": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]}}})");
    return d;
  }();
  return dir;
}

std::string substitute(std::string arg) {
  const auto sub = [&](const std::string& tag, const std::string& value) {
    const std::size_t at = arg.find(tag);
    if (at != std::string::npos) arg = arg.substr(0, at) + value + arg.substr(at + tag.size());
  };
  sub("@QUBIT0@", fixture_dir() + "/qubit0.json");
  sub("@QUBIT1@", fixture_dir() + "/qubit1.json");
  sub("@KRAUS@", fixture_dir() + "/kraus.json");
  sub("@CQ@", fixture_dir() + "/cq.json");
  return arg;
}

std::string command_for(const wiretap::cli::RegistryEntry& e) {
  std::string cmd = WIRETAP_CLI_PATH;
  for (const auto& a : e.args) cmd += " " + shell_quote(substitute(a));
  return cmd;
}

json parse_report(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

TEST_CASE("registry covers every operation exactly once", "[cli]") {
  const std::vector<std::string> expected = {
      "binary_entropy", "shannon_entropy", "mutual_information", "conditional_entropy",
      "cascade", "compose", "transmit", "forward_conceptual", "conditional_mi_given_z",
      "cs", "cs_bar_bsc", "cs_bar_upper", "thm4_lower",
      "von_neumann_entropy", "apply_channel", "tensor", "trace_distance", "fidelity",
      "relative_entropy", "check_dpi", "check_contractivity",
      "holevo_chi", "secrecy_rate", "optimize_secrecy_rate",
      "fano_min_error", "lemma323_bound", "helstrom_multistate_lower", "helstrom_two_state",
      "c_eve_gap",
      "split_minus", "split_plus", "conservation_residual", "polarize", "secure_index_set",
      "overlap", "prune", "rate_branch", "select_branch", "evaluate_rate", "adaptive_rates",
      "build_code", "run_transmission", "resource_distance", "authentication_probability",
      "domination_experiment",
      "bias", "win_probability", "classical_optimum", "epsilon_optimality_check",
      "multiplayer_bias",
      "dispatch"};

  std::set<std::string> seen;
  for (const auto& e : command_registry()) {
    INFO("registry op " << e.op);
    REQUIRE(seen.insert(e.op).second);
  }
  for (const auto& name : expected) {
    INFO("expected op " << name);
    REQUIRE(seen.count(name) == 1);
  }
  REQUIRE(seen.size() == expected.size());
}

TEST_CASE("every registered command runs and emits a JSON report", "[cli]") {
  for (const auto& e : command_registry()) {
    const std::string cmd = command_for(e) + " 2>/dev/null";
    INFO(e.op << ": " << cmd);
    const RunResult r = run(cmd);
    REQUIRE(r.exit_code == 0);
    REQUIRE_FALSE(r.out.empty());
    const json j = parse_report(r.out);
    REQUIRE(j.is_object());
  }
}

TEST_CASE("documented invocation examples", "[cli]") {
  const std::string cli = WIRETAP_CLI_PATH;

  SECTION("secrecy capacity of a concrete pair") {
    const RunResult r = run(cli + " secrecy cs --eps 0.1 --delta 0.2");
    REQUIRE(r.exit_code == 0);
    const json j = parse_report(r.out);
    REQUIRE(j.at("cs").get<double>() == Catch::Approx(wiretap::cs(0.1, 0.2)).margin(1e-9));
    REQUIRE(j.at("config").at("eps").get<double>() == 0.1);
  }
  SECTION("out-of-domain crossover exits with code 2") {
    REQUIRE(run(cli + " secrecy cs --eps 0.7 --delta 0.2 2>/dev/null").exit_code == 2);
    REQUIRE(run(cli + " secrecy cs --eps 0.7 2>/dev/null").exit_code == 2);
  }
  SECTION("cascade of a half with anything stays a half") {
    const RunResult r = run(cli + " cascade --eps 0.5 --delta 0.3");
    REQUIRE(r.exit_code == 0);
    REQUIRE(parse_report(r.out).at("cascade").get<double>() == 0.5);
  }
  SECTION("unknown flags exit with code 2 and print usage") {
    const RunResult r = run(cli + " cascade --eps 0.5 --delta 0.3 --bogus 2>&1");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.out.find("Usage") != std::string::npos);
  }
  SECTION("missing required flags are reported together") {
    const RunResult r = run(cli + " simulate 2>&1");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.out.find("--n") != std::string::npos);
    REQUIRE(r.out.find("--seed") != std::string::npos);
  }
  SECTION("binary entropy golden value") {
    const RunResult r = run(cli + " entropy binary --p 0.25");
    REQUIRE(r.exit_code == 0);
    REQUIRE(parse_report(r.out).at("entropy").get<double>() ==
            Catch::Approx(wiretap::binary_entropy(0.25)).margin(1e-9));
  }
}

TEST_CASE("seeded reports are byte-identical across worker counts", "[cli]") {
  const std::string base = std::string(WIRETAP_CLI_PATH) +
                           " simulate --n 16 --p 0.05 --q 0.25 --rate 0.5 --tau 0.2"
                           " --trials 500 --seed 77";
  const RunResult w1 = run(base + " --workers 1");
  const RunResult w4 = run(base + " --workers 4");
  const RunResult env = run("WIRETAP_LAB_WORKERS=2 " + base);
  REQUIRE(w1.exit_code == 0);
  REQUIRE(w1.out == w4.out);
  REQUIRE(w1.out == env.out);
  // the parallelism cap never leaks into the echoed configuration
  REQUIRE_FALSE(parse_report(w1.out).at("config").contains("workers"));
}

TEST_CASE("config files mirror flags and flags override them", "[cli]") {
  const std::string cli = WIRETAP_CLI_PATH;
  const std::string cfg = fixture_dir() + "/cs.json";
  {
    std::ofstream out(cfg);
    out << R"({"eps": 0.1, "delta": 0.2})";
  }
  const RunResult from_flags = run(cli + " secrecy cs --eps 0.1 --delta 0.2");
  const RunResult from_file = run(cli + " secrecy cs --config " + cfg);
  REQUIRE(from_file.exit_code == 0);
  REQUIRE(from_file.out == from_flags.out);

  const RunResult overridden = run(cli + " secrecy cs --config " + cfg + " --delta 0.3");
  REQUIRE(overridden.exit_code == 0);
  const json j = parse_report(overridden.out);
  REQUIRE(j.at("config").at("delta").get<double>() == 0.3);
  REQUIRE(j.at("config").at("eps").get<double>() == 0.1);

  {
    std::ofstream out(cfg);
    out << R"({"eps": 0.1, "delta": 0.2, "mystery": 1})";
  }
  REQUIRE(run(cli + " secrecy cs --config " + cfg + " 2>/dev/null").exit_code == 2);
}

TEST_CASE("polar csv output round-trips through a parser", "[cli]") {
  const RunResult r = run(std::string(WIRETAP_CLI_PATH) + " polar --channel " + fixture_dir() +
                          "/cq.json --depth 2 --eve-map " + fixture_dir() +
                          "/kraus.json --theta 0.2 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 5);
  REQUIRE(lines[0] == "index,path,chi_bob,chi_eve,selected");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    REQUIRE(f.size() == 5);
    REQUIRE(std::stoul(f[0]) == i - 1);
    REQUIRE(f[1].size() == 2);
    const double cb = std::stod(f[2]);
    const double ce = std::stod(f[3]);
    REQUIRE((cb >= 0.0 && cb <= 1.0));
    REQUIRE((ce >= 0.0 && ce <= 1.0));
    REQUIRE((f[4] == "0" || f[4] == "1"));
  }
  // csv needs the eavesdropper columns to be meaningful
  REQUIRE(run(std::string(WIRETAP_CLI_PATH) + " polar --channel " + fixture_dir() +
              "/cq.json --depth 2 --format csv 2>/dev/null")
              .exit_code == 2);
}

TEST_CASE("per-trial dump agrees with the aggregated report", "[cli]") {
  const std::string dump = fixture_dir() + "/dump.csv";
  const RunResult r = run(std::string(WIRETAP_CLI_PATH) +
                          " simulate --n 16 --p 0.05 --q 0.25 --rate 0.5 --tau 0.2"
                          " --trials 200 --seed 11 --dump " +
                          dump);
  REQUIRE(r.exit_code == 0);
  const json rep = parse_report(r.out);

  std::ifstream in(dump);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto lines = split_lines(ss.str());
  REQUIRE(lines.size() == 201);
  REQUIRE(lines[0] == "trial,de,fa,ee");
  int de = 0, fa = 0, ee = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    REQUIRE(f.size() == 4);
    REQUIRE(std::stoul(f[0]) == i - 1);
    for (int c = 1; c < 4; ++c) REQUIRE((f[c] == "0" || f[c] == "1"));
    de += f[1] == "1";
    fa += f[2] == "1";
    ee += f[3] == "1";
  }
  REQUIRE(rep.at("p_de").at("value").get<double>() == Catch::Approx(de / 200.0).margin(1e-9));
  REQUIRE(rep.at("p_fa").at("value").get<double>() == Catch::Approx(fa / 200.0).margin(1e-9));
  REQUIRE(rep.at("eve_error").at("value").get<double>() ==
          Catch::Approx(ee / 200.0).margin(1e-9));
}

TEST_CASE("transmit reports a consistent flip count", "[cli]") {
  const RunResult r = run(std::string(WIRETAP_CLI_PATH) +
                          " simulate transmit --crossover 0.3 --word 0101100111 --seed 3");
  REQUIRE(r.exit_code == 0);
  const json j = parse_report(r.out);
  const std::string in = j.at("input").get<std::string>();
  const std::string out = j.at("output").get<std::string>();
  REQUIRE(in == "0101100111");
  REQUIRE(out.size() == in.size());
  int flips = 0;
  for (std::size_t i = 0; i < in.size(); ++i) flips += in[i] != out[i];
  REQUIRE(j.at("flips").get<int>() == flips);
}

TEST_CASE("three-player game reaches the algebraic maximum", "[cli]") {
  const RunResult r =
      run(std::string(WIRETAP_CLI_PATH) + " games multi --game mermin --strategy ghz");
  REQUIRE(r.exit_code == 0);
  REQUIRE(parse_report(r.out).at("bias").get<double>() == Catch::Approx(1.0).margin(1e-9));
}
