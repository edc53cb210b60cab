// Command-line front door for the wiretap toolkit. One subcommand per module
// area, JSON reports on stdout (12 significant digits), optional CSV where a
// table is the natural shape. Exit codes: 0 success, 2 for anything wrong
// with the request (unknown flags, malformed files, out-of-domain numbers),
// 1 for internal failures and failed verification runs.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wiretap/bounds.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/common.hpp"
#include "wiretap/games.hpp"
#include "wiretap/holevo.hpp"
#include "wiretap/info.hpp"
#include "wiretap/lincode.hpp"
#include "wiretap/polar.hpp"
#include "wiretap/protosim.hpp"
#include "wiretap/qstate.hpp"
#include "wiretap/rates.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/suite.hpp"

namespace {

using nlohmann::json;

int g_exit = 0;  // set by verify when checks fail; 0 otherwise

json num(double x) {
  if (std::isinf(x)) return json(x > 0.0 ? "infinity" : "-infinity");
  return json(wiretap::round_sig(x, 12));
}

json est(const wiretap::Estimate& e) {
  return json{{"value", num(e.value)}, {"lo", num(e.lo)}, {"hi", num(e.hi)}};
}

json parse_json_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw wiretap::ValidationError(what + " is not valid JSON");
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wiretap::ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

template <class F>
auto guard_json(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw wiretap::ValidationError(what + ": " + e.what());
  }
}

wiretap::DensityMatrix load_state(const std::string& path) {
  const json j = load_json_file(path);
  return guard_json(path, [&] { return wiretap::DensityMatrix::from_json(j); });
}

wiretap::KrausChannel load_map(const std::string& path) {
  const json j = load_json_file(path);
  return guard_json(path, [&] { return wiretap::KrausChannel::from_json(j); });
}

wiretap::CqChannel load_cq(const std::string& path) {
  const json j = load_json_file(path);
  return guard_json(path, [&] { return wiretap::CqChannel::from_json(j); });
}

std::vector<double> as_doubles(const json& j, const std::string& what) {
  if (!j.is_array()) throw wiretap::ValidationError(what + " must be a JSON array");
  return guard_json(what, [&] { return j.get<std::vector<double>>(); });
}

std::set<std::string> as_letters(const json& j, const std::string& what) {
  if (!j.is_array()) throw wiretap::ValidationError(what + " must be a JSON array of strings");
  const auto v = guard_json(what, [&] { return j.get<std::vector<std::string>>(); });
  return {v.begin(), v.end()};
}

wiretap::JointDist as_joint(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw wiretap::ValidationError(what + " must be a JSON array of rows");
  const std::size_t cols = rows[0].size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != cols)
      throw wiretap::ValidationError(what + " rows must share one length");
    for (const auto& v : row)
      flat.push_back(guard_json(what, [&] { return v.template get<double>(); }));
  }
  return wiretap::JointDist(rows.size(), cols, std::move(flat));
}

std::vector<bool> parse_word(const std::string& word) {
  if (word.empty()) throw wiretap::ValidationError("empty word");
  std::vector<bool> bits(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] != '0' && word[i] != '1')
      throw wiretap::ValidationError("words are strings over {0, 1}");
    bits[i] = word[i] == '1';
  }
  return bits;
}

std::string word_string(const std::vector<bool>& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

// Packed words print position 0 first, matching the indexing of `transmit`.
std::string packed_string(std::uint64_t word, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = ((word >> i) & 1) ? '1' : '0';
  return s;
}

std::string self_path() {
  char buf[4096];
  const ssize_t n = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
  return n > 0 ? std::string(buf, static_cast<std::size_t>(n)) : std::string();
}

void emit(json report, const json& echo) {
  report["config"] = echo;
  const std::string text = report.dump(2) + "\n";
  std::fwrite(text.data(), 1, text.size(), stdout);
}

// Options for one subcommand: every experiment-shaping flag registers here so
// a --config JSON file can supply it, explicit flags can override it, and the
// effective values land in the report. --workers and --format stay outside on
// purpose: they cannot change any result, so reports must not vary with them.
class FlagBag {
 public:
  explicit FlagBag(CLI::App* cmd) : cmd_(cmd) {
    cmd->add_option("--config", config_path_,
                    "JSON file whose keys mirror these flag names; explicit flags win");
  }

  template <class T>
  CLI::Option* add(const std::string& name, T& ref, const std::string& desc,
                   bool required = false, bool echo_always = true) {
    Entry e;
    e.name = name;
    e.opt = cmd_->add_option("--" + name, ref, desc);
    e.required = required;
    e.echo_always = echo_always;
    e.from_cfg = [&ref, name](const json& v) {
      try {
        ref = v.get<T>();
      } catch (const json::exception&) {
        throw wiretap::ValidationError("config key " + name + " has the wrong type");
      }
    };
    e.to_echo = [&ref]() -> json {
      if constexpr (std::is_floating_point_v<T>)
        return num(ref);
      else
        return json(ref);
    };
    entries_.push_back(std::move(e));
    return entries_.back().opt;
  }

  CLI::Option* add_flag(const std::string& name, bool& ref, const std::string& desc) {
    Entry e;
    e.name = name;
    e.opt = cmd_->add_flag("--" + name, ref, desc);
    e.from_cfg = [&ref, name](const json& v) {
      if (!v.is_boolean()) throw wiretap::ValidationError("config key " + name + " must be boolean");
      ref = v.get<bool>();
    };
    e.to_echo = [&ref] { return json(ref); };
    entries_.push_back(std::move(e));
    return entries_.back().opt;
  }

  // JSON-typed value: written as text on the command line, as a plain JSON
  // value (or equivalent text) in config files.
  CLI::Option* add_json(const std::string& name, json& ref, const std::string& desc,
                        bool required = false, bool echo_always = true) {
    auto text = std::make_shared<std::string>();
    Entry e;
    e.name = name;
    e.opt = cmd_->add_option("--" + name, *text, desc);
    e.required = required;
    e.echo_always = echo_always;
    e.from_cfg = [&ref, name](const json& v) {
      ref = v.is_string() ? parse_json_text(v.get<std::string>(), "config key " + name) : v;
    };
    e.convert = [&ref, text, name] { ref = parse_json_text(*text, "--" + name); };
    e.to_echo = [&ref] { return ref; };
    entries_.push_back(std::move(e));
    return entries_.back().opt;
  }

  bool given(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.present;
    return false;
  }

  // Merge the config file under the explicit flags, enforce required flags,
  // and return the effective configuration for the report.
  json finalize() {
    json cfg = json::object();
    if (!config_path_.empty()) {
      cfg = load_json_file(config_path_);
      if (!cfg.is_object())
        throw wiretap::ValidationError(config_path_ + ": config file must hold a JSON object");
      for (const auto& item : cfg.items()) {
        bool known = false;
        for (const auto& e : entries_) known = known || e.name == item.key();
        if (!known) throw wiretap::ValidationError("unknown config key: " + item.key());
      }
    }
    std::string missing;
    for (auto& e : entries_) {
      if (e.opt->count() > 0) {
        if (e.convert) e.convert();
        e.present = true;
      } else if (cfg.contains(e.name)) {
        e.from_cfg(cfg.at(e.name));
        e.present = true;
      }
      if (e.required && !e.present)
        missing += std::string(missing.empty() ? "" : ", ") + "--" + e.name;
    }
    if (!missing.empty()) throw wiretap::ValidationError("missing required flag(s): " + missing);
    json echo = json::object();
    for (const auto& e : entries_)
      if (e.present || e.echo_always) echo[e.name] = e.to_echo();
    return echo;
  }

 private:
  struct Entry {
    std::string name;
    CLI::Option* opt = nullptr;
    bool required = false;
    bool echo_always = true;
    bool present = false;
    std::function<void(const json&)> from_cfg;
    std::function<void()> convert;
    std::function<json()> to_echo;
  };

  CLI::App* cmd_;
  std::string config_path_;
  std::vector<Entry> entries_;
};

CLI::Option* add_workers(CLI::App* cmd, int& ref) {
  return cmd
      ->add_option("--workers", ref,
                   "parallel task cap, 0 = pick automatically; never changes results")
      ->envname("WIRETAP_LAB_WORKERS");
}

json rate_result_json(const wiretap::RateResult& r) {
  json j{{"branch", r.branch}};
  if (r.value) j["value"] = num(*r.value);
  if (r.error) j["error"] = json{{"term", r.error->term}, {"condition", r.error->condition}};
  return j;
}

wiretap::AlphabetSizes sizes_from_json(const json& j, const std::string& what) {
  if (!j.is_object()) throw wiretap::ValidationError(what + " must be a JSON object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "lx" && k != "lx-star" && k != "ly" && k != "ly-star" && k != "lz")
      throw wiretap::ValidationError(what + ": unknown key " + k);
  }
  const auto need = [&](const char* k) -> double {
    if (!j.contains(k)) throw wiretap::ValidationError(what + " needs key " + k);
    return guard_json(what, [&] { return j.at(k).get<double>(); });
  };
  const double lx = need("lx"), lxs = need("lx-star"), lys = need("ly-star"), lz = need("lz");
  const double ly =
      j.contains("ly") ? guard_json(what, [&] { return j.at("ly").get<double>(); }) : lys;
  return wiretap::AlphabetSizes(lx, lxs, ly, lys, lz);
}

std::string leaf_path(int index, int depth) {
  std::string s(static_cast<std::size_t>(depth), '-');
  for (int level = 0; level < depth; ++level)
    if ((static_cast<unsigned>(index) >> (depth - 1 - level)) & 1u)
      s[static_cast<std::size_t>(level)] = '+';
  return s;
}

const char* verdict_name(wiretap::Verdict v) {
  switch (v) {
    case wiretap::Verdict::True:
      return "true";
    case wiretap::Verdict::False:
      return "false";
    default:
      return "inconclusive";
  }
}

wiretap::CMat pauli_x() {
  wiretap::CMat x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

wiretap::CMat pauli_y() {
  using wiretap::Cx;
  wiretap::CMat y(2, 2);
  y << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  return y;
}

// ---------------------------------------------------------------- entropy --

void add_entropy(CLI::App& app) {
  auto* ent = app.add_subcommand("entropy", "Entropy and information measures");
  ent->require_subcommand(1);

  {
    struct A {
      double p = 0.0;
    };
    auto* c = ent->add_subcommand("binary", "Binary entropy h(p) in bits");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("p", a->p, "Bernoulli parameter in [0, 1]", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"entropy", num(wiretap::binary_entropy(a->p))}}, echo);
    });
  }
  {
    struct A {
      json probs;
    };
    auto* c = ent->add_subcommand("shannon", "Shannon entropy of a distribution");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add_json("probs", a->probs, "JSON array of probabilities summing to 1", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::Dist d(as_doubles(a->probs, "--probs"));
      emit(json{{"entropy", num(wiretap::shannon_entropy(d))}}, echo);
    });
  }
  {
    struct A {
      json rows;
    };
    auto* c = ent->add_subcommand("mutual", "Mutual information of a joint table");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add_json("rows", a->rows, "JSON matrix of joint probabilities P(x, y)", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"mutual_information", num(wiretap::mutual_information(as_joint(a->rows, "--rows")))}},
           echo);
    });
  }
  {
    struct A {
      json rows;
    };
    auto* c = ent->add_subcommand("conditional", "Conditional entropy H(Y|X) of a joint table");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add_json("rows", a->rows, "JSON matrix of joint probabilities P(x, y); x indexes rows", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"conditional_entropy",
                 num(wiretap::conditional_entropy(as_joint(a->rows, "--rows")))}},
           echo);
    });
  }
  {
    struct A {
      std::string state, other, map;
    };
    auto* c = ent->add_subcommand(
        "vn", "Von Neumann entropy of a density matrix, optionally after --tensor and --map");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("state", a->state, "density matrix JSON file", true);
    b->add("tensor", a->other, "tensor a second density matrix file onto the state", false, false);
    b->add("map", a->map, "apply a Kraus channel JSON file to the (tensored) state", false, false);
    c->callback([a, b] {
      const json echo = b->finalize();
      wiretap::DensityMatrix rho = load_state(a->state);
      if (b->given("tensor")) rho = wiretap::tensor(rho, load_state(a->other));
      if (b->given("map")) rho = wiretap::apply_channel(load_map(a->map), rho);
      emit(json{{"entropy", num(wiretap::von_neumann_entropy(rho))}, {"dim", rho.dim()}}, echo);
    });
  }
  {
    struct A {
      std::string rho, sigma;
    };
    auto* c = ent->add_subcommand("relative", "Relative entropy D(rho || sigma) in bits");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("rho", a->rho, "density matrix JSON file", true);
    b->add("sigma", a->sigma, "density matrix JSON file", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const double d = wiretap::relative_entropy(load_state(a->rho), load_state(a->sigma));
      emit(json{{"relative_entropy", num(d)}}, echo);
    });
  }
}

// ---------------------------------------------------------------- cascade --

void add_cascade(CLI::App& app) {
  struct A {
    double eps = 0.0, delta = 0.0;
  };
  auto* c = app.add_subcommand("cascade", "Crossover of two serial binary symmetric channels");
  auto a = std::make_shared<A>();
  auto b = std::make_shared<FlagBag>(c);
  b->add("eps", a->eps, "first-stage crossover", true);
  b->add("delta", a->delta, "second-stage crossover", true);
  c->callback([a, b] {
    const json echo = b->finalize();
    const wiretap::Bsc combined = wiretap::compose(wiretap::Bsc(a->eps), wiretap::Bsc(a->delta));
    emit(json{{"cascade", num(combined.crossover)}}, echo);
  });
}

// ---------------------------------------------------------------- secrecy --

void add_secrecy(CLI::App& app) {
  auto* sec = app.add_subcommand("secrecy", "Wiretap secrecy capacities and related channels");
  sec->require_subcommand(1);

  {
    struct A {
      double eps = 0.0, delta = 0.0;
    };
    auto* c = sec->add_subcommand("cs", "Secrecy capacity without public discussion");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("eps", a->eps, "main-channel crossover in [0, 1/2]", true);
    b->add("delta", a->delta, "eavesdropper-channel crossover in [0, 1/2]", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"cs", num(wiretap::cs(a->eps, a->delta))}}, echo);
    });
  }
  {
    struct A {
      double eps = 0.0, delta = 0.0;
    };
    auto* c = sec->add_subcommand("cs-bar", "Secrecy capacity with public discussion (closed form)");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("eps", a->eps, "main-channel crossover in [0, 1/2]", true);
    b->add("delta", a->delta, "eavesdropper-channel crossover in [0, 1/2]", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"cs_bar", num(wiretap::cs_bar_bsc(a->eps, a->delta))}}, echo);
    });
  }
  {
    struct A {
      double main = 0.0, eve = 0.0, delta = 0.0;
    };
    auto* c = sec->add_subcommand("upper", "Numerical supremum of I(X;Y|Z) over input priors");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("main", a->main, "main-channel crossover", true);
    b->add("eve", a->eve, "eavesdropper-channel crossover", true);
    b->add("delta", a->delta, "extra conceptual cascade stage (unused by the supremum)");
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::BroadcastModel m(wiretap::Bsc(a->main), wiretap::Bsc(a->eve), a->delta);
      emit(json{{"upper", num(wiretap::cs_bar_upper(m))}}, echo);
    });
  }
  {
    struct A {
      double ea = 0.0, eb = 0.0, ee = 0.0;
      bool clamp = false;
    };
    auto* c = sec->add_subcommand("thm4", "Conceptual-channel lower bound on the secret-key rate");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("ea", a->ea, "Alice-channel crossover", true);
    b->add("eb", a->eb, "Bob-channel crossover", true);
    b->add("ee", a->ee, "Eve-channel crossover", true);
    b->add_flag("clamp", a->clamp, "clamp negative values to zero instead of flagging only");
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::LowerBound lb = wiretap::thm4_lower(a->ea, a->eb, a->ee, a->clamp);
      emit(json{{"lower", num(lb.value)}, {"vacuous", lb.vacuous}}, echo);
    });
  }
  {
    struct A {
      double eve = 0.0, delta = 0.0;
    };
    auto* c = sec->add_subcommand("forward", "Eve's forward conceptual channel (tap plus cascade stage)");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("eve", a->eve, "eavesdropper-channel crossover", true);
    b->add("delta", a->delta, "conceptual cascade stage crossover", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::BroadcastModel m(wiretap::Bsc(0.0), wiretap::Bsc(a->eve), a->delta);
      emit(json{{"crossover", num(wiretap::forward_conceptual(m).crossover)}}, echo);
    });
  }
  {
    struct A {
      double main = 0.0, eve = 0.0, delta = 0.0, px = 0.5;
    };
    auto* c = sec->add_subcommand("cmi", "I(X;Y|Z) for one binary input distribution");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("main", a->main, "main-channel crossover", true);
    b->add("eve", a->eve, "eavesdropper-channel crossover", true);
    b->add("delta", a->delta, "extra conceptual cascade stage (not part of this quantity)");
    b->add("px", a->px, "probability of input symbol 0");
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::BroadcastModel m(wiretap::Bsc(a->main), wiretap::Bsc(a->eve), a->delta);
      const double v = wiretap::conditional_mi_given_z(m, wiretap::Dist({a->px, 1.0 - a->px}));
      emit(json{{"mi", num(v)}}, echo);
    });
  }
}

// ------------------------------------------------------------------ rates --

void add_rates(CLI::App& app) {
  auto* rates = app.add_subcommand(
      "rates", "Piecewise converse rates over log2 alphabet cardinalities");

  struct BareA {
    double lx = 0.0, lxs = 0.0, lys = 0.0, lz = 0.0, ly = 0.0;
  };
  auto bare = std::make_shared<BareA>();
  auto bareBag = std::make_shared<FlagBag>(rates);
  bareBag->add("lx", bare->lx, "log2 |X|", true);
  bareBag->add("lx-star", bare->lxs, "log2 |X*| (pruned)", true);
  bareBag->add("ly-star", bare->lys, "log2 |Y*| (pruned)", true);
  bareBag->add("lz", bare->lz, "log2 |Z|", true);
  bareBag->add("ly", bare->ly, "log2 |Y|; defaults to ly-star", false, false);
  rates->callback([rates, bare, bareBag] {
    if (!rates->get_subcommands().empty()) return;
    const json echo = bareBag->finalize();
    const double ly = bareBag->given("ly") ? bare->ly : bare->lys;
    const wiretap::AlphabetSizes s(bare->lx, bare->lxs, ly, bare->lys, bare->lz);
    emit(rate_result_json(wiretap::evaluate_rate(s)), echo);
  });

  {
    struct A {
      int which = 0;
      double lx = 0.0, lxs = 0.0, lys = 0.0, lz = 0.0, ly = 0.0;
    };
    auto* c = rates->add_subcommand("branch", "Evaluate one branch of the converse rate");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("which", a->which, "branch index, 1 to 4", true);
    b->add("lx", a->lx, "log2 |X|", true);
    b->add("lx-star", a->lxs, "log2 |X*| (pruned)", true);
    b->add("ly-star", a->lys, "log2 |Y*| (pruned)", true);
    b->add("lz", a->lz, "log2 |Z|", true);
    b->add("ly", a->ly, "log2 |Y|; defaults to ly-star", false, false);
    c->callback([a, b] {
      const json echo = b->finalize();
      const double ly = b->given("ly") ? a->ly : a->lys;
      const wiretap::AlphabetSizes s(a->lx, a->lxs, ly, a->lys, a->lz);
      emit(rate_result_json(wiretap::rate_branch(a->which, s)), echo);
    });
  }
  {
    struct A {
      json pb, fc, bc;
    };
    auto* c = rates->add_subcommand(
        "adaptive", "Converse rates for the broadcast and both conceptual channels");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add_json("pb", a->pb, "public-broadcast sizes as JSON {\"lx\",\"lx-star\",\"ly-star\",\"lz\"}",
                true);
    b->add_json("fc", a->fc, "forward-conceptual sizes, same keys", true);
    b->add_json("bc", a->bc, "backward-conceptual sizes, same keys", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::AdaptiveRates r =
          wiretap::adaptive_rates(sizes_from_json(a->pb, "--pb"), sizes_from_json(a->fc, "--fc"),
                                  sizes_from_json(a->bc, "--bc"));
      emit(json{{"public_broadcast", rate_result_json(r.public_broadcast)},
                {"forward_conceptual", rate_result_json(r.forward_conceptual)},
                {"backward_conceptual", rate_result_json(r.backward_conceptual)},
                {"warnings", r.warnings}},
           echo);
    });
  }
  {
    struct A {
      json x, y, z;
    };
    auto* c = rates->add_subcommand(
        "prune", "Triple-overlap letters and the pruned X and Y alphabets");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add_json("x", a->x, "X alphabet as a JSON array of strings", true);
    b->add_json("y", a->y, "Y alphabet as a JSON array of strings", true);
    b->add_json("z", a->z, "Z alphabet as a JSON array of strings", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::LetterAlphabets alph(as_letters(a->x, "--x"), as_letters(a->y, "--y"),
                                          as_letters(a->z, "--z"));
      const auto common = wiretap::overlap(alph);
      const auto pruned = wiretap::prune(alph);
      emit(json{{"overlap", common}, {"x", pruned.first}, {"y", pruned.second}}, echo);
    });
  }
}

// ----------------------------------------------------------------- holevo --

void add_holevo(CLI::App& app) {
  auto* hol = app.add_subcommand("holevo", "Holevo information of classical-quantum channels");
  hol->require_subcommand(1);

  const auto prior_for = [](const FlagBag& bag, const json& prior, const wiretap::CqChannel& cq) {
    if (!bag.given("prior")) return wiretap::Dist::uniform(cq.size());
    return wiretap::Dist(as_doubles(prior, "--prior"));
  };

  {
    struct A {
      std::string channel;
      json prior;
    };
    auto* c = hol->add_subcommand("chi", "Holevo information of a cq channel under a prior");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("channel", a->channel, "cq channel JSON file", true);
    b->add_json("prior", a->prior, "input prior as a JSON array; defaults to uniform", false, false);
    c->callback([a, b, prior_for] {
      const json echo = b->finalize();
      const wiretap::CqChannel cq = load_cq(a->channel);
      const wiretap::Dist prior = prior_for(*b, a->prior, cq);
      emit(json{{"chi", num(wiretap::holevo_chi(wiretap::Ensemble(prior, cq.states())))}}, echo);
    });
  }
  {
    struct A {
      std::string channel, eve_map;
      json prior;
    };
    auto* c = hol->add_subcommand(
        "rate", "Holevo secrecy rate: Bob's information minus degraded Eve's");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("channel", a->channel, "cq channel JSON file (Bob's states)", true);
    b->add("eve-map", a->eve_map, "Kraus channel JSON file degrading Bob's states to Eve's", true);
    b->add_json("prior", a->prior, "input prior as a JSON array; defaults to uniform", false, false);
    c->callback([a, b, prior_for] {
      const json echo = b->finalize();
      const wiretap::CqChannel cq = load_cq(a->channel);
      const wiretap::Dist prior = prior_for(*b, a->prior, cq);
      emit(json{{"rate", num(wiretap::secrecy_rate(cq, load_map(a->eve_map), prior))}}, echo);
    });
  }
  {
    struct A {
      std::string channel, eve_map;
    };
    auto* c = hol->add_subcommand("optimize", "Deterministic prior search for the best secrecy rate");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("channel", a->channel, "cq channel JSON file (Bob's states)", true);
    b->add("eve-map", a->eve_map, "Kraus channel JSON file degrading Bob's states to Eve's", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::RateOptimum opt =
          wiretap::optimize_secrecy_rate(load_cq(a->channel), load_map(a->eve_map));
      json prior = json::array();
      for (const double w : opt.prior) prior.push_back(num(w));
      emit(json{{"value", num(opt.value)}, {"prior", prior}}, echo);
    });
  }
}

// ----------------------------------------------------------------- bounds --

void add_bounds(CLI::App& app) {
  auto* bnd = app.add_subcommand("bounds", "Error bounds for decoding and state discrimination");
  bnd->require_subcommand(1);

  {
    struct A {
      std::int64_t m = 0;
      double chi = 0.0;
    };
    auto* c = bnd->add_subcommand("fano", "Minimum error probability consistent with the information");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("m", a->m, "message count, at least 2", true);
    b->add("chi", a->chi, "information about the message in bits", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"min_error", num(wiretap::fano_min_error(wiretap::FanoInputs(a->m, a->chi)))}},
           echo);
    });
  }
  {
    struct A {
      std::int64_t n = 0, m = 0;
      double chi = 0.0;
      bool clamp = false;
    };
    auto* c = bnd->add_subcommand(
        "lemma323", "log2(1/N)-scaled false-acceptance expression, vacuity flagged");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("n", a->n, "sample count", true);
    b->add("m", a->m, "message count", true);
    b->add("chi", a->chi, "information in bits", true);
    b->add_flag("clamp", a->clamp, "clamp the value into [0, 1] instead of flagging only");
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::BoundValue v = wiretap::lemma323_bound(a->n, a->m, a->chi, a->clamp);
      emit(json{{"value", num(v.value)}, {"vacuous", v.vacuous}}, echo);
    });
  }
  {
    struct A {
      std::int64_t m = 0;
      double eps = 0.0;
    };
    auto* c = bnd->add_subcommand(
        "helstrom-multi", "Multi-state discrimination error lower bound from pairwise distances");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("m", a->m, "state count, at least 2", true);
    b->add("eps", a->eps, "pairwise trace-norm bound in [0, 2]", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      emit(json{{"lower", num(wiretap::helstrom_multistate_lower(a->m, a->eps))}}, echo);
    });
  }
  {
    struct A {
      std::string rho, sigma;
    };
    auto* c = bnd->add_subcommand(
        "helstrom-two", "Optimal two-state discrimination, with the pair's distance and fidelity");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("rho", a->rho, "density matrix JSON file", true);
    b->add("sigma", a->sigma, "density matrix JSON file", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::DensityMatrix r0 = load_state(a->rho);
      const wiretap::DensityMatrix r1 = load_state(a->sigma);
      const double success = wiretap::helstrom_two_state(r0, r1);
      emit(json{{"success", num(success)},
                {"error", num(1.0 - success)},
                {"trace_distance", num(wiretap::trace_distance(r0, r1))},
                {"fidelity", num(wiretap::fidelity(r0, r1))}},
           echo);
    });
  }
  {
    struct A {
      std::int64_t n = 0, m = 0, threshold = 16;
      double chi = 0.0, eps = 0.0;
      bool clamp = false;
    };
    auto* c = bnd->add_subcommand(
        "ceve", "Expected false-acceptance gap, piecewise over the message count");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("n", a->n, "sample count", true);
    b->add("m", a->m, "message count", true);
    b->add("chi", a->chi, "information in bits", true);
    b->add("eps", a->eps, "pairwise trace-norm bound in [0, 2]", true);
    b->add("m-threshold", a->threshold, "largest message count using the discrimination branch");
    b->add_flag("clamp", a->clamp, "clamp the large-M branch into [0, 1]");
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::CEveGap g =
          wiretap::c_eve_gap(a->n, a->m, a->chi, a->eps, a->threshold, a->clamp);
      emit(json{{"value", num(g.value)}, {"regime", g.regime}, {"vacuous", g.vacuous}}, echo);
    });
  }
}

// ------------------------------------------------------------------ polar --

void add_polar(CLI::App& app) {
  auto* pol = app.add_subcommand(
      "polar", "Channel polarization of a binary-input cq channel (depth capped at 3)");
  pol->footer("CSV columns: index,path,chi_bob,chi_eve,selected");

  struct BareA {
    std::string channel, eve_map, format = "json";
    int depth = 0, workers = 0;
    double theta = 0.0;
  };
  auto bare = std::make_shared<BareA>();
  auto bag = std::make_shared<FlagBag>(pol);
  bag->add("channel", bare->channel, "cq channel JSON file (Bob's states)", true);
  bag->add("depth", bare->depth, "polarization depth, 1 to 3", true);
  bag->add("eve-map", bare->eve_map, "Kraus channel JSON file degrading Bob's states to Eve's",
           false, false);
  bag->add("theta", bare->theta, "selection threshold in (0, 1/2); needs --eve-map", false, false);
  add_workers(pol, bare->workers);
  pol->add_option("--format", bare->format, "output format: json (default) or csv");

  pol->callback([pol, bare, bag] {
    if (!pol->get_subcommands().empty()) return;
    const json echo = bag->finalize();
    if (bare->format != "json" && bare->format != "csv")
      throw wiretap::ValidationError("--format must be json or csv");
    const bool have_eve = bag->given("eve-map");
    const bool have_theta = bag->given("theta");
    if (have_theta && !have_eve) throw wiretap::ValidationError("--theta needs --eve-map");

    const wiretap::CqChannel cq = load_cq(bare->channel);
    const wiretap::SynthesizedChannel w(cq);
    const std::vector<wiretap::LeafChi> bob = wiretap::polarize(w, bare->depth, bare->workers);
    std::vector<wiretap::LeafChi> eve;
    wiretap::IndexSet sel;
    if (have_eve) {
      const wiretap::SynthesizedChannel we(wiretap::degrade(cq, load_map(bare->eve_map)));
      eve = wiretap::polarize(we, bare->depth, bare->workers);
      if (have_theta) sel = wiretap::secure_index_set(bob, eve, bare->theta);
    }

    if (bare->format == "csv") {
      if (!have_eve)
        throw wiretap::ValidationError("csv output needs --eve-map (columns include chi_eve)");
      const std::string text = wiretap::polarization_csv(bob, eve, sel);
      std::fwrite(text.data(), 1, text.size(), stdout);
      return;
    }

    json leaves = json::array();
    for (std::size_t i = 0; i < bob.size(); ++i) {
      json leaf{{"index", bob[i].index},
                {"path", leaf_path(bob[i].index, bare->depth)},
                {"chi_bob", num(bob[i].chi)}};
      if (have_eve) leaf["chi_eve"] = num(eve[i].chi);
      leaves.push_back(std::move(leaf));
    }
    json rep{{"depth", bare->depth}, {"chi", num(wiretap::holevo_chi(w))}, {"leaves", leaves}};
    if (have_theta) {
      rep["selected"] = sel.indices;
      rep["rate"] = num(sel.rate);
    }
    emit(rep, echo);
  });

  {
    struct A {
      std::string channel, path;
    };
    auto* c = pol->add_subcommand(
        "split", "Walk one combine/split path and report both child informations");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("channel", a->channel, "cq channel JSON file", true);
    b->add("path", a->path, "split sequence over {-, +}; empty for the base channel");
    c->callback([a, b] {
      const json echo = b->finalize();
      wiretap::SynthesizedChannel node(load_cq(a->channel));
      for (const char ch : a->path) {
        if (ch == '-')
          node = wiretap::split_minus(node);
        else if (ch == '+')
          node = wiretap::split_plus(node);
        else
          throw wiretap::ValidationError("--path is a string over {-, +}");
      }
      emit(json{{"path", a->path},
                {"chi", num(wiretap::holevo_chi(node))},
                {"chi_minus", num(wiretap::holevo_chi(wiretap::split_minus(node)))},
                {"chi_plus", num(wiretap::holevo_chi(wiretap::split_plus(node)))},
                {"residual", num(wiretap::conservation_residual(node))}},
           echo);
    });
  }
}

// --------------------------------------------------------------- simulate --

void add_simulate(CLI::App& app) {
  auto* s = app.add_subcommand(
      "simulate", "Monte Carlo authenticated transmission over a wiretapped channel");
  s->footer("--dump CSV columns: trial,de,fa,ee (1 = event occurred; fa and ee are 0 when the "
            "attack is off)");

  struct BareA {
    int n = 0, workers = 0;
    double p = 0.0, q = 0.0, rate = 0.0, tau = -1.0, delta = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::string attack = "on", dump;
  };
  auto bare = std::make_shared<BareA>();
  auto bag = std::make_shared<FlagBag>(s);
  bag->add("n", bare->n, "block length, 2 to 64", true);
  bag->add("p", bare->p, "Bob-channel crossover", true);
  bag->add("q", bare->q, "Eve-channel crossover", true);
  bag->add("rate", bare->rate, "code rate in (0, 1)", true);
  bag->add("tau", bare->tau, "acceptance radius fraction in (0, 1/2); negative means (p+q)/2");
  bag->add("trials", bare->trials, "Monte Carlo trials", true);
  bag->add("seed", bare->seed, "root seed for every stream in the run", true);
  bag->add("delta", bare->delta, "extra cascade stage crossover on Eve's tap");
  bag->add("attack", bare->attack, "substitution attack: on (default) or off");
  bag->add("dump", bare->dump, "write a per-trial CSV to this file", false, false);
  add_workers(s, bare->workers);

  s->callback([s, bare, bag] {
    if (!s->get_subcommands().empty()) return;
    json echo = bag->finalize();
    if (bare->attack != "on" && bare->attack != "off")
      throw wiretap::ValidationError("--attack must be on or off");
    const wiretap::ProtocolConfig cfg(bare->n, bare->p, bare->q, bare->rate, bare->tau,
                                      bare->trials, bare->seed, bare->delta,
                                      bare->attack == "on");
    echo["tau"] = num(cfg.tau);
    std::vector<wiretap::TrialOutcome> rows;
    const bool dumping = bag->given("dump");
    const wiretap::SimReport r =
        wiretap::run_transmission(cfg, bare->workers, dumping ? &rows : nullptr);
    json rep{{"p_de", est(r.p_de)},
             {"p_fa", est(r.p_fa)},
             {"eve_error", est(r.eve_error)},
             {"eve_bitwise_mi", num(r.eve_bitwise_mi)},
             {"resource_distance", num(wiretap::resource_distance(r))},
             {"radius", cfg.radius()},
             {"trials", r.trials},
             {"seed", r.seed},
             {"attack", r.attack}};
    if (dumping) {
      std::ofstream out(bare->dump);
      if (!out) throw wiretap::ValidationError("cannot write " + bare->dump);
      out << "trial,de,fa,ee\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        out << i << ',' << rows[i].de << ',' << rows[i].fa << ',' << rows[i].ee << '\n';
      rep["dump"] = json{{"file", bare->dump}, {"rows", static_cast<long long>(rows.size())}};
    }
    emit(rep, echo);
  });

  {
    struct A {
      double crossover = 0.0;
      std::string word;
      std::uint64_t seed = 0, stream = 0;
    };
    auto* c = s->add_subcommand("transmit", "Send one word through a seeded binary symmetric channel");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("crossover", a->crossover, "bit-flip probability", true);
    b->add("word", a->word, "input word as a string over {0, 1}", true);
    b->add("seed", a->seed, "channel noise seed", true);
    b->add("stream", a->stream, "noise stream id under the seed");
    c->callback([a, b] {
      const json echo = b->finalize();
      const std::vector<bool> bits = parse_word(a->word);
      const std::vector<bool> out =
          wiretap::transmit(wiretap::Bsc(a->crossover), bits, a->seed, a->stream);
      int flips = 0;
      for (std::size_t i = 0; i < bits.size(); ++i) flips += bits[i] != out[i];
      emit(json{{"input", a->word}, {"output", word_string(out)}, {"flips", flips}}, echo);
    });
  }
  {
    struct A {
      int n = 0, workers = 0;
      double p = 0.0, q = 0.0, rate = 0.0, tau = -1.0, delta = 0.0;
      long long trials = 0;
      std::uint64_t seed = 0;
    };
    auto* c = s->add_subcommand(
        "auth", "Probability that Bob accepts and decodes correctly with no attacker");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("n", a->n, "block length, 2 to 64", true);
    b->add("p", a->p, "Bob-channel crossover", true);
    b->add("q", a->q, "Eve-channel crossover (unused without an attack, kept for parity)", true);
    b->add("rate", a->rate, "code rate in (0, 1)", true);
    b->add("tau", a->tau, "acceptance radius fraction in (0, 1/2); negative means (p+q)/2");
    b->add("trials", a->trials, "Monte Carlo trials", true);
    b->add("seed", a->seed, "root seed for every stream in the run", true);
    b->add("delta", a->delta, "extra cascade stage crossover on Eve's tap");
    add_workers(c, a->workers);
    c->callback([a, b] {
      json echo = b->finalize();
      const wiretap::ProtocolConfig cfg(a->n, a->p, a->q, a->rate, a->tau, a->trials, a->seed,
                                        a->delta, true);
      echo["tau"] = num(cfg.tau);
      const wiretap::Estimate e = wiretap::authentication_probability(cfg, a->workers);
      emit(json{{"authentication_probability", est(e)},
                {"radius", cfg.radius()},
                {"trials", a->trials},
                {"seed", a->seed}},
           echo);
    });
  }
  {
    struct A {
      int n = 0, radius = 0;
      double rate = 0.0;
      std::uint64_t seed = 0;
      std::string decode;
    };
    auto* c = s->add_subcommand("code", "Build the seeded linear coset code, optionally decode a word");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("n", a->n, "block length, 2 to 64", true);
    b->add("rate", a->rate, "code rate in (0, 1)", true);
    b->add("seed", a->seed, "code construction seed", true);
    b->add("decode", a->decode, "received word to decode, a string over {0, 1}", false, false);
    b->add("radius", a->radius, "decoding radius in bit flips; required with --decode", false,
           false);
    c->callback([a, b] {
      const json echo = b->finalize();
      const wiretap::LinearCode code = wiretap::build_code(a->n, a->rate, a->seed);
      json gens = json::array(), pars = json::array();
      for (const std::uint64_t g : code.generator_rows()) gens.push_back(packed_string(g, code.n()));
      for (const std::uint64_t p : code.parity_rows())
        pars.push_back(packed_string(p, code.n()));
      json rep{{"n", code.n()},
               {"k", code.k()},
               {"offset", packed_string(code.offset(), code.n())},
               {"generator_rows", gens},
               {"parity_rows", pars}};
      if (b->given("decode")) {
        if (!b->given("radius"))
          throw wiretap::ValidationError("--decode needs --radius");
        const std::vector<bool> bits = parse_word(a->decode);
        if (bits.size() != static_cast<std::size_t>(code.n()))
          throw wiretap::ValidationError("received word length does not match the block length");
        std::uint64_t w = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
          w |= static_cast<std::uint64_t>(bits[i]) << i;
        const wiretap::DecodeAnswer ans = code.decode(w, a->radius);
        json dec{{"word", a->decode},
                 {"syndrome", packed_string(code.syndrome(w), code.n() - code.k())},
                 {"found", ans.found()}};
        if (ans.found()) {
          dec["pattern"] = packed_string(ans.pattern, code.n());
          dec["weight"] = ans.weight;
          dec["message"] = packed_string(code.message_of(w ^ ans.pattern), code.k());
        }
        rep["decode"] = std::move(dec);
      }
      emit(rep, echo);
    });
  }
}

// ------------------------------------------------------------- domination --

void add_domination(CLI::App& app) {
  struct A {
    double ea = 0.0, eb = 0.0, ee = 0.0, delta = 0.0, rate = 0.0, tau = -1.0;
    int n = 0, workers = 0;
    long long trials = 0;
    std::uint64_t seed = 0;
  };
  auto* c = app.add_subcommand(
      "domination", "Decode-quality comparison of all parties across the three channel readings");
  auto a = std::make_shared<A>();
  auto b = std::make_shared<FlagBag>(c);
  b->add("ea", a->ea, "Alice-channel crossover", true);
  b->add("eb", a->eb, "Bob-channel crossover", true);
  b->add("ee", a->ee, "Eve-channel crossover; must be below both others", true);
  b->add("delta", a->delta, "conceptual cascade stage crossover", true);
  b->add("n", a->n, "block length, 2 to 64", true);
  b->add("rate", a->rate, "code rate in (0, 1)", true);
  b->add("tau", a->tau, "acceptance radius fraction in (0, 1/2); negative means (ea+eb)/2");
  b->add("trials", a->trials, "Monte Carlo trials per cell", true);
  b->add("seed", a->seed, "root seed for every stream in the run", true);
  add_workers(c, a->workers);
  c->callback([a, b] {
    json echo = b->finalize();
    const wiretap::ProtocolConfig base(a->n, a->ea, a->eb, a->rate, a->tau, a->trials, a->seed,
                                       a->delta, true);
    echo["tau"] = num(base.tau);
    const wiretap::DominationReport rep =
        wiretap::domination_experiment(a->ea, a->eb, a->ee, a->delta, base, a->workers);
    static const char* kChannels[3] = {"public_broadcast", "forward_conceptual",
                                       "backward_conceptual"};
    static const char* kParties[3] = {"alice", "bob", "eve"};
    json stats = json::object(), cross = json::object();
    for (int ch = 0; ch < 3; ++ch) {
      json srow = json::object(), crow = json::object();
      for (int pa = 0; pa < 3; ++pa) {
        srow[kParties[pa]] =
            json{{"fa", est(rep.stats[ch][pa].fa)}, {"ec", est(rep.stats[ch][pa].ec)}};
        crow[kParties[pa]] = num(rep.crossover[ch][pa]);
      }
      stats[kChannels[ch]] = std::move(srow);
      cross[kChannels[ch]] = std::move(crow);
    }
    emit(json{{"stats", stats},
              {"crossover", cross},
              {"broadcast_separation", verdict_name(rep.group1)},
              {"forward_separation", verdict_name(rep.group2)},
              {"backward_comparison", verdict_name(rep.group3)},
              {"trials", rep.trials},
              {"seed", rep.seed}},
         echo);
  });
}

// ------------------------------------------------------------------ games --

void add_games(CLI::App& app) {
  auto* gm = app.add_subcommand("games", "XOR games: biases, optima, and strategy checks");
  gm->require_subcommand(1);

  const auto load_game = [](const std::string& spec) {
    if (spec == "chsh") return wiretap::XorGame::chsh();
    const json j = load_json_file(spec);
    return guard_json(spec, [&] { return wiretap::XorGame::from_json(j); });
  };
  const auto make_strategy = [](const std::string& name, const wiretap::XorGame& g) {
    if (name == "tsirelson") return wiretap::QuantumStrategy::tsirelson();
    if (name == "constant") return wiretap::QuantumStrategy::constant_plus(g.s_count(), g.t_count());
    throw wiretap::ValidationError("unknown strategy " + name + " (expected tsirelson or constant)");
  };

  {
    struct A {
      std::string game;
    };
    auto* c = gm->add_subcommand("classical", "Exact classical optimum by sign enumeration");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("game", a->game, "chsh or a game table JSON file", true);
    c->callback([a, b, load_game] {
      const json echo = b->finalize();
      const double bias = wiretap::classical_optimum(load_game(a->game));
      emit(json{{"bias", num(bias)}, {"win_probability", num(wiretap::win_probability(bias))}},
           echo);
    });
  }
  {
    struct A {
      std::string game, strategy;
    };
    auto* c = gm->add_subcommand("bias", "Bias of a quantum strategy on a game");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("game", a->game, "chsh or a game table JSON file", true);
    b->add("strategy", a->strategy, "tsirelson or constant", true);
    c->callback([a, b, load_game, make_strategy] {
      const json echo = b->finalize();
      const wiretap::XorGame g = load_game(a->game);
      const double bias = wiretap::bias(g, make_strategy(a->strategy, g));
      emit(json{{"bias", num(bias)}, {"win_probability", num(wiretap::win_probability(bias))}},
           echo);
    });
  }
  {
    struct A {
      std::string game, strategy;
      double beta_star = 0.0, eps = 0.0;
    };
    auto* c = gm->add_subcommand("check", "Is the strategy within a slack of a reference bias?");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("game", a->game, "chsh or a game table JSON file", true);
    b->add("strategy", a->strategy, "tsirelson or constant", true);
    b->add("beta-star", a->beta_star, "reference bias, positive", true);
    b->add("eps", a->eps, "relative slack, nonnegative", true);
    c->callback([a, b, load_game, make_strategy] {
      const json echo = b->finalize();
      const wiretap::XorGame g = load_game(a->game);
      const wiretap::QuantumStrategy s = make_strategy(a->strategy, g);
      emit(json{{"epsilon_optimal",
                 wiretap::epsilon_optimality_check(g, s, a->beta_star, a->eps)},
                {"bias", num(wiretap::bias(g, s))}},
           echo);
    });
  }
  {
    struct A {
      std::string game, strategy;
    };
    auto* c = gm->add_subcommand("multi", "Three-player XOR game bias");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("game", a->game, "mermin or a three-index game table JSON file", true);
    b->add("strategy", a->strategy, "ghz or constant", true);
    c->callback([a, b] {
      const json echo = b->finalize();
      wiretap::XorGame3 g = [&] {
        if (a->game == "mermin")
          return wiretap::XorGame3(2, 2, 2, {0.25, 0, 0, -0.25, 0, -0.25, -0.25, 0});
        const json j = load_json_file(a->game);
        return guard_json(a->game, [&] { return wiretap::XorGame3::from_json(j); });
      }();
      wiretap::QuantumStrategy3 s = [&] {
        if (a->strategy == "ghz") {
          const std::vector<wiretap::CMat> xy = {pauli_x(), pauli_y()};
          return wiretap::QuantumStrategy3(wiretap::QuantumStrategy3::ghz_state(), xy, xy, xy);
        }
        if (a->strategy == "constant") {
          wiretap::CVec psi = wiretap::CVec::Zero(8);
          psi[0] = 1.0;
          const auto ids = [](std::size_t cnt) {
            return std::vector<wiretap::CMat>(cnt, wiretap::CMat::Identity(2, 2));
          };
          return wiretap::QuantumStrategy3(psi, ids(g.s_count()), ids(g.t_count()),
                                           ids(g.u_count()));
        }
        throw wiretap::ValidationError("unknown strategy " + a->strategy +
                                       " (expected ghz or constant)");
      }();
      const double bias = wiretap::multiplayer_bias(g, s);
      emit(json{{"bias", num(bias)}, {"win_probability", num(wiretap::win_probability(bias))}},
           echo);
    });
  }
}

// ----------------------------------------------------------------- verify --

void add_verify(CLI::App& app) {
  auto* ver = app.add_subcommand(
      "verify", "Run the end-to-end property suite (pass/fail per check on stderr, JSON on stdout)");

  struct BareA {
    int only = 0;
  };
  auto bare = std::make_shared<BareA>();
  auto bag = std::make_shared<FlagBag>(ver);
  bag->add("only", bare->only, "run a single check by number, 1 to 12");

  ver->callback([ver, bare, bag] {
    if (!ver->get_subcommands().empty()) return;
    const json echo = bag->finalize();
    if (bare->only != 0 && (bare->only < 1 || bare->only > 12))
      throw wiretap::DomainError("--only must lie between 1 and 12");
    const auto progress = [](const wiretap::suite::CheckResult& r) {
      std::fprintf(stderr, "[%s] %2d %s (%s; %.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                   r.name.c_str(), r.detail.c_str(), r.seconds);
    };
    const auto results = wiretap::suite::run_all(self_path(), bare->only, progress);
    json arr = json::array();
    int passed = 0;
    for (const auto& r : results) {
      arr.push_back(json{{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"detail", r.detail},
                         {"seconds", num(r.seconds)}});
      passed += r.pass;
    }
    emit(json{{"checks", arr}, {"passed", passed}, {"total", static_cast<int>(results.size())}},
         echo);
    if (passed != static_cast<int>(results.size())) g_exit = 1;
  });

  {
    struct A {
      std::uint64_t seed = 0;
      long long trials = 100;
      int dim = 2;
    };
    auto* c = ver->add_subcommand(
        "dpi", "Randomized monotonicity checks: divergence and distance under channels");
    auto a = std::make_shared<A>();
    auto b = std::make_shared<FlagBag>(c);
    b->add("seed", a->seed, "stream seed for the random triples", true);
    b->add("trials", a->trials, "number of random (channel, state, state) triples");
    b->add("dim", a->dim, "state dimension, 2 to 8");
    c->callback([a, b] {
      const json echo = b->finalize();
      if (a->trials < 1) throw wiretap::DomainError("--trials must be at least 1");
      if (a->dim < 2 || a->dim > 8) throw wiretap::DomainError("--dim must lie between 2 and 8");
      double min_div = std::numeric_limits<double>::infinity();
      double min_dist = std::numeric_limits<double>::infinity();
      long long violations = 0;
      for (long long i = 0; i < a->trials; ++i) {
        wiretap::rng::Stream g(a->seed, static_cast<std::uint64_t>(i));
        const wiretap::DensityMatrix rho = wiretap::random_density(a->dim, g);
        const wiretap::DensityMatrix sigma = wiretap::random_density(a->dim, g);
        const wiretap::KrausChannel phi =
            wiretap::random_channel(a->dim, a->dim, a->dim * a->dim, g);
        const double dv = wiretap::check_dpi(phi, rho, sigma);
        if (!std::isinf(dv)) {
          min_div = std::min(min_div, dv);
          if (dv < -1e-10) ++violations;
        }
        const double dt = wiretap::check_contractivity(phi, rho, sigma);
        min_dist = std::min(min_dist, dt);
        if (dt < -1e-10) ++violations;
      }
      emit(json{{"trials", a->trials},
                {"dim", a->dim},
                {"min_divergence_residual", num(min_div)},
                {"min_distance_residual", num(min_dist)},
                {"violations", violations},
                {"pass", violations == 0}},
           echo);
      if (violations != 0) g_exit = 1;
    });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy analysis for classical and classical-quantum wiretap channels"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  add_entropy(app);
  add_cascade(app);
  add_secrecy(app);
  add_rates(app);
  add_holevo(app);
  add_bounds(app);
  add_polar(app);
  add_simulate(app);
  add_domination(app);
  add_games(app);
  add_verify(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wiretap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return g_exit;
}
