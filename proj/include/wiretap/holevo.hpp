#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/qstate.hpp"

namespace wiretap {

class Ensemble {
 public:
  Ensemble(Dist priors, std::vector<DensityMatrix> states)
      : priors_(std::move(priors)), states_(std::move(states)) {
    if (priors_.size() != states_.size()) throw ValidationError("ensemble needs one prior per state");
    for (const auto& s : states_)
      if (s.dim() != states_[0].dim()) throw ValidationError("ensemble states must share one dimension");
  }

  const Dist& priors() const { return priors_; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  int dim() const { return states_[0].dim(); }

  DensityMatrix average() const {
    CMat acc = CMat::Zero(dim(), dim());
    for (std::size_t i = 0; i < states_.size(); ++i) acc += priors_[i] * states_[i].entries();
    return DensityMatrix(std::move(acc));
  }

 private:
  Dist priors_;
  std::vector<DensityMatrix> states_;
};

// chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i), in bits.
inline double holevo_chi(const Ensemble& e) {
  const double s_avg = von_neumann_entropy(e.average());
  double mean_s = 0.0;
  for (std::size_t i = 0; i < e.states().size(); ++i)
    mean_s += e.priors()[i] * von_neumann_entropy(e.states()[i]);
  return detail::snap_nonneg(s_avg - mean_s);
}

// Classical-quantum channel: finite input alphabet, one state per symbol.
// Priors align with the order of `inputs`.
class CqChannel {
 public:
  CqChannel(std::vector<std::string> inputs, std::vector<DensityMatrix> states)
      : inputs_(std::move(inputs)), states_(std::move(states)) {
    if (inputs_.empty()) throw ValidationError("cq channel needs a nonempty input alphabet");
    if (inputs_.size() != states_.size())
      throw ValidationError("cq channel needs one state per input symbol");
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      for (std::size_t j = i + 1; j < inputs_.size(); ++j)
        if (inputs_[i] == inputs_[j])
          throw ValidationError("duplicate input symbol: " + inputs_[i]);
    for (const auto& s : states_)
      if (s.dim() != states_[0].dim())
        throw ValidationError("cq channel states must share one dimension");
  }

  std::size_t size() const { return inputs_.size(); }
  int dim() const { return states_[0].dim(); }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<DensityMatrix>& states() const { return states_; }

  const DensityMatrix& state_for(const std::string& input) const {
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (inputs_[i] == input) return states_[i];
    throw ValidationError("unknown input symbol: " + input);
  }

  nlohmann::json to_json() const {
    nlohmann::json states = nlohmann::json::object();
    for (std::size_t i = 0; i < inputs_.size(); ++i) states[inputs_[i]] = states_[i].to_json();
    return nlohmann::json{{"inputs", inputs_}, {"dim", dim()}, {"states", states}};
  }

  static CqChannel from_json(const nlohmann::json& j) {
    try {
      auto inputs = j.at("inputs").get<std::vector<std::string>>();
      const int d = j.at("dim").get<int>();
      std::vector<DensityMatrix> states;
      states.reserve(inputs.size());
      for (const auto& name : inputs) {
        if (!j.at("states").contains(name))
          throw ValidationError("cq channel json is missing a state for input " + name);
        states.push_back(DensityMatrix::from_json(j.at("states").at(name)));
        if (states.back().dim() != d)
          throw ValidationError("cq channel state dimension differs from declared dim");
      }
      return CqChannel(std::move(inputs), std::move(states));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(std::string("bad cq channel json: ") + ex.what());
    }
  }

 private:
  std::vector<std::string> inputs_;
  std::vector<DensityMatrix> states_;
};

// chi_Bob(prior) - chi_Eve(prior), where Eve's states are the CPTP images of
// Bob's under eve_map (the wiretap is modeled as a degradation of Bob's
// output, so rates are computed against that premise by construction).
// Reported raw: a poor prior can make it negative.
inline double secrecy_rate(const CqChannel& bob, const KrausChannel& eve_map, const Dist& prior) {
  if (prior.size() != bob.size())
    throw ValidationError("prior size does not match the input alphabet");
  if (eve_map.in_dim() != bob.dim())
    throw ValidationError("eavesdropper map input dimension does not match the channel states");
  std::vector<DensityMatrix> eve_states;
  eve_states.reserve(bob.size());
  for (const auto& s : bob.states()) eve_states.push_back(apply_channel(eve_map, s));
  return holevo_chi(Ensemble(prior, bob.states())) - holevo_chi(Ensemble(prior, eve_states));
}

struct RateOptimum {
  double value = 0.0;
  std::vector<double> prior;
};

// Deterministic prior search. Binary alphabets: 1e-3 grid plus golden-section
// refinement (ties resolve to the smallest first-symbol weight, i.e. the
// lexicographically smallest prior). Larger alphabets: fixed simplex grid at
// step 0.01, enumerated lexicographically so ties keep the smallest prior; a
// grid approximation, not a supremum. Alphabets beyond 4 symbols are refused
// (the 0.01 simplex grid grows combinatorially: 5 symbols is ~4.6M points).
inline RateOptimum optimize_secrecy_rate(const CqChannel& bob, const KrausChannel& eve_map) {
  if (eve_map.in_dim() != bob.dim())
    throw ValidationError("eavesdropper map input dimension does not match the channel states");
  std::vector<DensityMatrix> eve_states;
  eve_states.reserve(bob.size());
  for (const auto& s : bob.states()) eve_states.push_back(apply_channel(eve_map, s));
  const auto rate_for = [&](const std::vector<double>& w) {
    const Dist prior(w);
    return holevo_chi(Ensemble(prior, bob.states())) - holevo_chi(Ensemble(prior, eve_states));
  };

  const std::size_t m = bob.size();
  if (m == 1) return {rate_for({1.0}), {1.0}};
  if (m == 2) {
    const MaxPoint mp =
        grid_golden_max([&](double p) { return rate_for({p, 1.0 - p}); }, 0.0, 1.0);
    return {mp.value, {mp.arg, 1.0 - mp.arg}};
  }
  if (m > 4)
    throw CapabilityError("prior search over " + std::to_string(m) +
                          " symbols would enumerate millions of 0.01-step simplex points");

  constexpr int kTicks = 100;
  std::vector<double> w(m, 0.0);
  RateOptimum best{-std::numeric_limits<double>::infinity(), {}};
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
    if (idx + 1 == m) {
      w[idx] = static_cast<double>(remaining) / kTicks;
      const double v = rate_for(w);
      if (v > best.value) best = {v, w};
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      w[idx] = static_cast<double>(k) / kTicks;
      rec(idx + 1, remaining - k);
    }
  };
  rec(0, kTicks);
  return best;
}

}  // namespace wiretap
