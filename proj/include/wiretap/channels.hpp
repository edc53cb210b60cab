#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

struct Bsc {
  Prob crossover;
  explicit Bsc(Prob c) : crossover(c) {}
};

// Row-stochastic P(y|x) over finite alphabets.
class Dmc {
 public:
  Dmc(std::size_t inputs, std::size_t outputs, std::vector<double> rows)
      : in_(inputs), out_(outputs), p_(std::move(rows)) {
    if (in_ == 0 || out_ == 0 || p_.size() != in_ * out_)
      throw ValidationError("channel matrix shape mismatch");
    for (std::size_t x = 0; x < in_; ++x) {
      double sum = 0.0;
      for (std::size_t y = 0; y < out_; ++y) {
        if (p_[x * out_ + y] < 0.0) throw ValidationError("negative transition probability");
        sum += p_[x * out_ + y];
      }
      if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("channel row does not sum to 1");
    }
  }
  std::size_t inputs() const { return in_; }
  std::size_t outputs() const { return out_; }
  double at(std::size_t x, std::size_t y) const { return p_[x * out_ + y]; }

  static Dmc from_json(const nlohmann::json& j) {
    if (!j.contains("inputs") || !j.contains("outputs") || !j.contains("rows"))
      throw ValidationError("channel document needs inputs, outputs, rows");
    std::size_t in = j.at("inputs").get<std::size_t>();
    std::size_t out = j.at("outputs").get<std::size_t>();
    std::vector<double> flat;
    flat.reserve(in * out);
    for (const auto& row : j.at("rows")) {
      if (row.size() != out) throw ValidationError("channel row length mismatch");
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
    if (flat.size() != in * out) throw ValidationError("channel row count mismatch");
    return Dmc(in, out, std::move(flat));
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t x = 0; x < in_; ++x) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t y = 0; y < out_; ++y) row.push_back(p_[x * out_ + y]);
      rows.push_back(row);
    }
    return {{"inputs", in_}, {"outputs", out_}, {"rows", rows}};
  }

 private:
  std::size_t in_, out_;
  std::vector<double> p_;
};

// Alice->Bob BSC, independent Alice->Eve BSC, and the extra cascade stage
// that defines Eve's forward conceptual channel.
struct BroadcastModel {
  Bsc main;
  Bsc eve;
  Prob conceptual_delta;
  BroadcastModel(Bsc m, Bsc e, Prob d) : main(m), eve(e), conceptual_delta(d) {}
};

// Each bit flipped independently with the crossover probability.
// Pure in (word, seed, stream): reruns and worker counts cannot change it.
inline std::vector<bool> transmit(const Bsc& c, const std::vector<bool>& word, std::uint64_t seed,
                                  std::uint64_t stream = 0) {
  if (word.empty()) throw ValidationError("empty word");
  rng::Counter ctr(seed, stream);
  std::vector<bool> out(word.size());
  for (std::size_t i = 0; i < word.size(); ++i)
    out[i] = word[i] ^ ctr.bernoulli(c.crossover, i);
  return out;
}

inline Bsc compose(const Bsc& a, const Bsc& b) {
  return Bsc(cascade(a.crossover, b.crossover));
}

inline Bsc forward_conceptual(const BroadcastModel& m) {
  return compose(m.eve, Bsc(m.conceptual_delta));
}

// I(X;Y|Z) = H(X,Z) + H(Y,Z) - H(Z) - H(X,Y,Z) from the exact joint law
// P(x) P_main(y|x) P_eve(z|x).
inline double conditional_mi_given_z(const BroadcastModel& m, const Dist& input) {
  if (input.size() != 2) throw ValidationError("binary input distribution required");
  double eps = m.main.crossover, del = m.eve.crossover;
  double hxz = 0.0, hyz = 0.0, hz = 0.0, hxyz = 0.0;
  double pz[2] = {0.0, 0.0}, pxz[4] = {0, 0, 0, 0}, pyz[4] = {0, 0, 0, 0};
  double joint[8];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        double p = input[x] * (y == x ? 1.0 - eps : eps) * (z == x ? 1.0 - del : del);
        joint[(x * 2 + y) * 2 + z] = p;
        pz[z] += p;
        pxz[x * 2 + z] += p;
        pyz[y * 2 + z] += p;
      }
  for (double p : joint) hxyz -= plog2p(p);
  for (double p : pxz) hxz -= plog2p(p);
  for (double p : pyz) hyz -= plog2p(p);
  for (double p : pz) hz -= plog2p(p);
  return detail::snap_nonneg(hxz + hyz - hz - hxyz);
}

}  // namespace wiretap
