#pragma once

#include <array>
#include <initializer_list>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/lincode.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Monte Carlo setup for one authenticated-transmission experiment: Alice
// encodes k = round(rate*n) message bits into an n-bit codeword, Bob reads it
// through BSC(p), Eve through BSC(q). The regime of interest has p < q; both
// crossovers stay at or below 1/2. tau < 0 asks for the default acceptance
// radius (p+q)/2, the midpoint between the two noise levels.
struct ProtocolConfig {
  int n;
  Prob p;
  Prob q;
  double rate;
  double tau;
  long long trials;
  std::uint64_t seed;
  Prob cascade_delta;
  bool attack;

  ProtocolConfig(int n_, double p_, double q_, double rate_, double tau_, long long trials_,
                 std::uint64_t seed_, double cascade_delta_ = 0.0, bool attack_ = true)
      : n(n_),
        p(p_),
        q(q_),
        rate(rate_),
        tau(tau_ < 0.0 ? (p_ + q_) / 2.0 : tau_),
        trials(trials_),
        seed(seed_),
        cascade_delta(cascade_delta_),
        attack(attack_) {
    if (p_ > 0.5 || q_ > 0.5)
      throw ValidationError("crossover probabilities beyond 1/2 are not supported");
    if (!(rate > 0.0 && rate < 1.0)) throw ValidationError("rate must lie in (0, 1)");
    if (!(tau > 0.0 && tau < 0.5))
      throw ValidationError("acceptance radius fraction tau must lie in (0, 1/2)");
    if (trials < 1) throw ValidationError("trial count must be positive");
    if (cascade_delta_ >= 0.5)
      throw ValidationError("cascade stage crossover must stay below 1/2");
  }

  int radius() const { return static_cast<int>(std::floor(tau * n + 1e-12)); }
};

// Point estimate with a 95% Wilson score interval.
struct Estimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

inline Estimate wilson(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw DomainError("interval needs at least one trial");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double t = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / t;
  const double denom = 1.0 + z * z / t;
  const double center = (ph + z * z / (2.0 * t)) / denom;
  const double half = (z / denom) * std::sqrt(ph * (1.0 - ph) / t + z * z / (4.0 * t * t));
  Estimate e;
  e.value = ph;
  e.lo = center - half > 0.0 ? center - half : 0.0;
  e.hi = center + half < 1.0 ? center + half : 1.0;
  return e;
}

struct SimReport {
  Estimate p_de;       // Bob rejects or misdecodes Alice's transmission
  Estimate p_fa;       // Bob accepts Eve's substituted word as a different message
  Estimate eve_error;  // Eve's own decode of her view fails or misdecodes
  // Sum over positions of the empirical per-bit mutual information between
  // the codeword bit and Eve's received bit; for a memoryless tap this upper
  // bounds what Eve learns about the message. Zero when the attack is off.
  double eve_bitwise_mi = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  bool attack = false;
};

// One row of the optional per-trial dump. fa and ee stay false when the
// attack is off.
struct TrialOutcome {
  bool de = false;  // Bob rejected or misdecoded the honest transmission
  bool fa = false;  // Bob accepted Eve's forgery as a different message
  bool ee = false;  // Eve failed to decode her own view
};

namespace simdetail {

// Stream ids under the config seed. 0 and 1 belong to LinearCode.
inline constexpr std::uint64_t kMsgStream = 10;
inline constexpr std::uint64_t kBobStream = 11;
inline constexpr std::uint64_t kEveStream = 12;
inline constexpr std::uint64_t kForgeStream = 13;
inline constexpr std::uint64_t kPartyStreamBase = 20;

inline std::uint64_t noise_word(const rng::Counter& c, std::uint64_t trial, int n, double eps) {
  std::uint64_t w = 0;
  const std::uint64_t base = trial * static_cast<std::uint64_t>(n);
  for (int j = 0; j < n; ++j)
    if (c.uniform(base + j) < eps) w |= 1ull << j;
  return w;
}

struct BitTally {
  std::array<std::array<std::uint64_t, 4>, 64> counts{};
};

}  // namespace simdetail

// One full experiment: Alice -> Bob transmissions with optional Eve
// substitution attacks. Eve decodes her BSC(q) view; when her decode yields a
// codeword she flips the first message bit, re-encodes, and substitutes, so
// Bob sees the forged word through a fresh BSC(p). A false acceptance is a
// trial where Bob accepts the forged word as some message other than Alice's.
// When Eve cannot decode she stays silent and the trial cannot count against
// p_fa. All randomness is a pure function of (seed, trial), making reports
// identical across worker counts.
inline SimReport run_transmission(const ProtocolConfig& c, int workers = 0,
                                  std::vector<TrialOutcome>* per_trial = nullptr) {
  const LinearCode code = build_code(c.n, c.rate, c.seed);
  const int radius = c.radius();
  const std::size_t t = static_cast<std::size_t>(c.trials);
  const int n = c.n;

  const rng::Counter msg_rng(c.seed, simdetail::kMsgStream);
  const rng::Counter bob_rng(c.seed, simdetail::kBobStream);
  const rng::Counter eve_rng(c.seed, simdetail::kEveStream);
  const rng::Counter forge_rng(c.seed, simdetail::kForgeStream);
  const std::uint64_t kmask = (1ull << code.k()) - 1;

  std::vector<std::uint64_t> e_bob(t), e_eve, e_forge;
  std::vector<std::uint64_t> syns(c.attack ? 3 * t : t);
  if (c.attack) {
    e_eve.resize(t);
    e_forge.resize(t);
  }
  const int nchunks = resolve_workers(workers);
  std::vector<simdetail::BitTally> tallies(c.attack ? nchunks : 0);

  parallel_chunks(t, workers, [&](int chunk, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t m = msg_rng.u64(i) & kmask;
      const std::uint64_t cw = code.encode(m);
      e_bob[i] = simdetail::noise_word(bob_rng, i, n, c.p);
      syns[i] = code.syndrome(cw ^ e_bob[i]);
      if (!c.attack) continue;
      e_eve[i] = simdetail::noise_word(eve_rng, i, n, c.q);
      e_forge[i] = simdetail::noise_word(forge_rng, i, n, c.p);
      const std::uint64_t z = cw ^ e_eve[i];
      syns[t + i] = code.syndrome(z);
      // the forged word, whatever Eve decodes to, is a codeword plus this
      // fresh noise, so its syndrome is already determined
      syns[2 * t + i] = code.pattern_syndrome(e_forge[i]);
      auto& counts = tallies[chunk].counts;
      for (int j = 0; j < n; ++j)
        ++counts[j][((cw >> j) & 1) * 2 + ((z >> j) & 1)];
    }
  });

  const std::vector<DecodeAnswer> ans = code.coset_leaders(syns, radius);
  const std::uint64_t g0 = code.generator_rows()[0];

  if (per_trial) per_trial->assign(t, TrialOutcome{});
  std::vector<std::array<std::uint64_t, 3>> events(nchunks, {0, 0, 0});
  parallel_chunks(t, workers, [&](int chunk, std::size_t lo, std::size_t hi) {
    auto& ev = events[chunk];
    for (std::size_t i = lo; i < hi; ++i) {
      const DecodeAnswer& bob = ans[i];
      const bool bob_err = !bob.found() || bob.pattern != e_bob[i];
      if (bob_err) ++ev[0];
      bool eve_err = false, accepted = false;
      if (c.attack) {
        const DecodeAnswer& eve = ans[t + i];
        eve_err = !eve.found() || eve.pattern != e_eve[i];
        if (eve_err) ++ev[1];
        if (eve.found()) {
          const DecodeAnswer& second = ans[2 * t + i];
          if (second.found()) {
            // codeword offset between what Bob decoded and what Alice sent
            const std::uint64_t drift =
                (e_eve[i] ^ eve.pattern) ^ g0 ^ (e_forge[i] ^ second.pattern);
            accepted = drift != 0;
            if (accepted) ++ev[2];
          }
        }
      }
      if (per_trial) (*per_trial)[i] = {bob_err, accepted, eve_err};
    }
  });

  std::uint64_t de = 0, ee = 0, fa = 0;
  for (const auto& ev : events) {
    de += ev[0];
    ee += ev[1];
    fa += ev[2];
  }

  SimReport r;
  r.p_de = wilson(de, t);
  r.trials = c.trials;
  r.seed = c.seed;
  r.attack = c.attack;
  if (c.attack) {
    r.p_fa = wilson(fa, t);
    r.eve_error = wilson(ee, t);
    double mi = 0.0;
    for (int j = 0; j < n; ++j) {
      std::array<double, 4> cell{};
      for (const auto& tally : tallies)
        for (int b = 0; b < 4; ++b) cell[b] += static_cast<double>(tally.counts[j][b]);
      for (double& v : cell) v /= static_cast<double>(t);
      mi += mutual_information(JointDist(2, 2, {cell[0], cell[1], cell[2], cell[3]}));
    }
    r.eve_bitwise_mi = mi;
  }
  return r;
}

inline double resource_distance(const SimReport& r) {
  return r.p_de.value > r.p_fa.value ? r.p_de.value : r.p_fa.value;
}

// Probability that Bob accepts and correctly decodes with no attacker present.
inline Estimate authentication_probability(const ProtocolConfig& c, int workers = 0) {
  ProtocolConfig quiet = c;
  quiet.attack = false;
  const SimReport r = run_transmission(quiet, workers);
  return {1.0 - r.p_de.value, 1.0 - r.p_de.hi, 1.0 - r.p_de.lo};
}

enum class Verdict { True, False, Inconclusive };

struct PartyStats {
  Estimate fa;  // accepted yet misdecoded
  Estimate ec;  // accepted and correct
};

struct DominationReport {
  // channel index: 0 public broadcast, 1 forward conceptual, 2 backward
  // conceptual; party index: 0 Alice, 1 Bob, 2 Eve
  std::array<std::array<PartyStats, 3>, 3> stats;
  std::array<std::array<double, 3>, 3> crossover;
  Verdict group1 = Verdict::Inconclusive;
  Verdict group2 = Verdict::Inconclusive;
  Verdict group3 = Verdict::Inconclusive;
  long long trials = 0;
  std::uint64_t seed = 0;
};

namespace simdetail {

// a < b with 95% confidence; False means b < a with the same confidence.
inline Verdict ci_less(const Estimate& a, const Estimate& b) {
  if (a.hi < b.lo) return Verdict::True;
  if (b.hi < a.lo) return Verdict::False;
  return Verdict::Inconclusive;
}

inline Verdict all_of(std::initializer_list<Verdict> vs) {
  bool inconclusive = false;
  for (Verdict v : vs) {
    if (v == Verdict::False) return Verdict::False;
    if (v == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::True;
}

}  // namespace simdetail

// Error-correction success and false-acceptance rates for each party on each
// of the three channel readings: the raw public broadcast, the forward
// conceptual channel (Eve's tap cascaded with the delta stage), and the
// backward conceptual channel (each party sees the cascade of the other two
// taps). Every estimate uses the same code and one shared decoding sweep.
// Success here is noise-only: a party decodes correctly exactly when its
// noise pattern is the coset leader, so no messages need to be drawn.
inline DominationReport domination_experiment(Prob eA, Prob eB, Prob eE, Prob cascade_delta,
                                              const ProtocolConfig& base, int workers = 0) {
  if (!(eE < eA && eE < eB))
    throw ValidationError("domination experiments need Eve's channel initially superior "
                          "(eE < min(eA, eB))");
  if (cascade_delta >= 0.5)
    throw ValidationError("cascade stage crossover must stay below 1/2");

  const LinearCode code = build_code(base.n, base.rate, base.seed);
  const int radius = base.radius();
  const std::size_t t = static_cast<std::size_t>(base.trials);
  const int n = base.n;

  DominationReport rep;
  rep.trials = base.trials;
  rep.seed = base.seed;
  rep.crossover = {{{eA, eB, eE},
                    {eA, eB, cascade(eE, cascade_delta)},
                    {cascade(eA, eE), cascade(eB, eE), cascade(eA, eB)}}};

  std::vector<std::uint64_t> noise(9 * t), syns(9 * t);
  for (int ch = 0; ch < 3; ++ch)
    for (int party = 0; party < 3; ++party) {
      const std::size_t off = static_cast<std::size_t>(ch * 3 + party) * t;
      const rng::Counter gen(base.seed,
                             simdetail::kPartyStreamBase + static_cast<std::uint64_t>(ch * 3 + party));
      const double eps = rep.crossover[ch][party];
      parallel_chunks(t, workers, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          noise[off + i] = simdetail::noise_word(gen, i, n, eps);
          syns[off + i] = code.pattern_syndrome(noise[off + i]);
        }
      });
    }

  const std::vector<DecodeAnswer> ans = code.coset_leaders(syns, radius);

  for (int ch = 0; ch < 3; ++ch)
    for (int party = 0; party < 3; ++party) {
      const std::size_t off = static_cast<std::size_t>(ch * 3 + party) * t;
      std::uint64_t correct = 0, wrong = 0;
      for (std::size_t i = 0; i < t; ++i) {
        const DecodeAnswer& a = ans[off + i];
        if (!a.found()) continue;
        if (a.pattern == noise[off + i])
          ++correct;
        else
          ++wrong;
      }
      rep.stats[ch][party] = {wilson(wrong, t), wilson(correct, t)};
    }

  using simdetail::ci_less;
  const auto& s = rep.stats;
  rep.group1 = simdetail::all_of({ci_less(s[0][2].fa, s[0][0].fa), ci_less(s[0][2].fa, s[0][1].fa),
                                  ci_less(s[0][0].ec, s[0][2].ec), ci_less(s[0][1].ec, s[0][2].ec)});
  rep.group2 = simdetail::all_of({ci_less(s[1][0].fa, s[1][2].fa), ci_less(s[1][1].fa, s[1][2].fa),
                                  ci_less(s[1][2].ec, s[1][0].ec), ci_less(s[1][2].ec, s[1][1].ec)});
  // Eve on the public broadcast against Alice and Bob on the backward channel
  rep.group3 = simdetail::all_of({ci_less(s[2][0].fa, s[0][2].fa), ci_less(s[2][1].fa, s[0][2].fa),
                                  ci_less(s[0][2].ec, s[2][0].ec), ci_less(s[0][2].ec, s[2][1].ec)});
  return rep;
}

}  // namespace wiretap
