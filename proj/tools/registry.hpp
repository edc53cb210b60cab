#pragma once

#include <string>
#include <vector>

namespace wiretap::cli {

// One library operation mapped to the single subcommand path that exposes it,
// with a small self-contained invocation for the coverage test. Arguments of
// the form @NAME@ are fixture-file placeholders the test substitutes before
// running. Several operations share a path when one report carries them all
// (for example the two-state discrimination report also carries the trace
// distance and fidelity of the pair); each operation still has exactly one
// home.
struct RegistryEntry {
  const char* op;
  const char* path;
  std::vector<std::string> args;
};

inline const std::vector<RegistryEntry>& command_registry() {
  static const std::vector<RegistryEntry> entries = {
      // information measures
      {"binary_entropy", "entropy binary", {"entropy", "binary", "--p", "0.15"}},
      {"shannon_entropy", "entropy shannon", {"entropy", "shannon", "--probs", "[0.5,0.25,0.25]"}},
      {"mutual_information", "entropy mutual",
       {"entropy", "mutual", "--rows", "[[0.4,0.1],[0.1,0.4]]"}},
      {"conditional_entropy", "entropy conditional",
       {"entropy", "conditional", "--rows", "[[0.4,0.1],[0.1,0.4]]"}},
      {"cascade", "cascade", {"cascade", "--eps", "0.1", "--delta", "0.2"}},

      // channel plumbing
      {"compose", "cascade", {"cascade", "--eps", "0.1", "--delta", "0.2"}},
      {"transmit", "simulate transmit",
       {"simulate", "transmit", "--crossover", "0.1", "--word", "010110", "--seed", "7"}},
      {"forward_conceptual", "secrecy forward",
       {"secrecy", "forward", "--eve", "0.05", "--delta", "0.25"}},
      {"conditional_mi_given_z", "secrecy cmi",
       {"secrecy", "cmi", "--main", "0.1", "--eve", "0.2", "--px", "0.5"}},

      // secrecy capacities
      {"cs", "secrecy cs", {"secrecy", "cs", "--eps", "0.1", "--delta", "0.2"}},
      {"cs_bar_bsc", "secrecy cs-bar", {"secrecy", "cs-bar", "--eps", "0.1", "--delta", "0.2"}},
      {"cs_bar_upper", "secrecy upper", {"secrecy", "upper", "--main", "0.1", "--eve", "0.2"}},
      {"thm4_lower", "secrecy thm4",
       {"secrecy", "thm4", "--ea", "0.1", "--eb", "0.1", "--ee", "0.05"}},

      // quantum states
      {"von_neumann_entropy", "entropy vn", {"entropy", "vn", "--state", "@QUBIT0@"}},
      {"trace_distance", "bounds helstrom-two",
       {"bounds", "helstrom-two", "--rho", "@QUBIT0@", "--sigma", "@QUBIT1@"}},
      {"fidelity", "bounds helstrom-two",
       {"bounds", "helstrom-two", "--rho", "@QUBIT0@", "--sigma", "@QUBIT1@"}},
      {"relative_entropy", "entropy relative",
       {"entropy", "relative", "--rho", "@QUBIT0@", "--sigma", "@QUBIT1@"}},
      {"apply_channel", "entropy vn",
       {"entropy", "vn", "--state", "@QUBIT0@", "--map", "@KRAUS@"}},
      {"check_dpi", "verify dpi", {"verify", "dpi", "--seed", "5", "--trials", "10"}},
      {"check_contractivity", "verify dpi", {"verify", "dpi", "--seed", "5", "--trials", "10"}},
      {"tensor", "entropy vn",
       {"entropy", "vn", "--state", "@QUBIT0@", "--tensor", "@QUBIT1@"}},

      // ensembles and cq channels
      {"holevo_chi", "holevo chi", {"holevo", "chi", "--channel", "@CQ@"}},
      {"secrecy_rate", "holevo rate",
       {"holevo", "rate", "--channel", "@CQ@", "--eve-map", "@KRAUS@", "--prior", "[0.5,0.5]"}},
      {"optimize_secrecy_rate", "holevo optimize",
       {"holevo", "optimize", "--channel", "@CQ@", "--eve-map", "@KRAUS@"}},

      // error bounds
      {"fano_min_error", "bounds fano", {"bounds", "fano", "--m", "4", "--chi", "1.0"}},
      {"lemma323_bound", "bounds lemma323",
       {"bounds", "lemma323", "--n", "1024", "--m", "1048576", "--chi", "4"}},
      {"helstrom_multistate_lower", "bounds helstrom-multi",
       {"bounds", "helstrom-multi", "--m", "4", "--eps", "0.5"}},
      {"helstrom_two_state", "bounds helstrom-two",
       {"bounds", "helstrom-two", "--rho", "@QUBIT0@", "--sigma", "@QUBIT1@"}},
      {"c_eve_gap", "bounds ceve",
       {"bounds", "ceve", "--n", "1024", "--m", "1048576", "--chi", "4", "--eps", "0.5"}},

      // channel polarization
      {"split_minus", "polar split",
       {"polar", "split", "--channel", "@CQ@", "--path", "-"}},
      {"split_plus", "polar split", {"polar", "split", "--channel", "@CQ@", "--path", "+"}},
      {"conservation_residual", "polar split", {"polar", "split", "--channel", "@CQ@"}},
      {"polarize", "polar", {"polar", "--channel", "@CQ@", "--depth", "2"}},
      {"secure_index_set", "polar",
       {"polar", "--channel", "@CQ@", "--depth", "2", "--eve-map", "@KRAUS@", "--theta", "0.1"}},

      // converse rates
      {"overlap", "rates prune",
       {"rates", "prune", "--x", "[\"a\",\"b\",\"c\"]", "--y", "[\"b\",\"c\",\"d\"]", "--z",
        "[\"c\",\"e\"]"}},
      {"prune", "rates prune",
       {"rates", "prune", "--x", "[\"a\",\"b\",\"c\"]", "--y", "[\"b\",\"c\",\"d\"]", "--z",
        "[\"c\",\"e\"]"}},
      {"rate_branch", "rates branch",
       {"rates", "branch", "--which", "1", "--lx", "64", "--lx-star", "2", "--ly-star", "32",
        "--lz", "4096"}},
      {"select_branch", "rates",
       {"rates", "--lx", "64", "--lx-star", "2", "--ly-star", "32", "--lz", "4096"}},
      {"evaluate_rate", "rates",
       {"rates", "--lx", "64", "--lx-star", "2", "--ly-star", "32", "--lz", "4096"}},
      {"adaptive_rates", "rates adaptive",
       {"rates", "adaptive", "--pb", "{\"lx\":64,\"lx-star\":2,\"ly-star\":32,\"lz\":4096}",
        "--fc", "{\"lx\":8,\"lx-star\":2,\"ly-star\":32,\"lz\":4096}", "--bc",
        "{\"lx\":63.5,\"lx-star\":2,\"ly-star\":32,\"lz\":4096}"}},

      // protocol simulation
      {"build_code", "simulate code", {"simulate", "code", "--n", "16", "--rate", "0.5", "--seed",
                                       "22"}},
      {"run_transmission", "simulate",
       {"simulate", "--n", "16", "--p", "0.05", "--q", "0.25", "--rate", "0.5", "--tau", "0.2",
        "--trials", "500", "--seed", "7"}},
      {"resource_distance", "simulate",
       {"simulate", "--n", "16", "--p", "0.05", "--q", "0.25", "--rate", "0.5", "--tau", "0.2",
        "--trials", "500", "--seed", "7"}},
      {"authentication_probability", "simulate auth",
       {"simulate", "auth", "--n", "16", "--p", "0.05", "--q", "0.25", "--rate", "0.5", "--tau",
        "0.2", "--trials", "500", "--seed", "7"}},
      {"domination_experiment", "domination",
       {"domination", "--ea", "0.1", "--eb", "0.1", "--ee", "0.05", "--delta", "0.25", "--n",
        "16", "--rate", "0.5", "--tau", "0.2", "--trials", "500", "--seed", "9"}},

      // nonlocal games
      {"bias", "games bias",
       {"games", "bias", "--game", "chsh", "--strategy", "tsirelson"}},
      {"win_probability", "games classical", {"games", "classical", "--game", "chsh"}},
      {"classical_optimum", "games classical", {"games", "classical", "--game", "chsh"}},
      {"epsilon_optimality_check", "games check",
       {"games", "check", "--game", "chsh", "--strategy", "tsirelson", "--beta-star",
        "0.707107", "--eps", "0.001"}},
      {"multiplayer_bias", "games multi",
       {"games", "multi", "--game", "mermin", "--strategy", "ghz"}},

      // the front door itself
      {"dispatch", "verify", {"verify", "--only", "9"}},
  };
  return entries;
}

}  // namespace wiretap::cli
