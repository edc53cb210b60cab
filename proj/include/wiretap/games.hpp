#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/qstate.hpp"

namespace wiretap {

namespace gdetail {

// The weight table carries signs (winning predicate times question
// distribution), so the normalization that makes biases comparable across
// games is sum |G| = 1.
inline void require_unit_abs_sum(const std::vector<double>& entries) {
  double sum = 0.0;
  for (double v : entries) sum += std::abs(v);
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("game weights must satisfy sum |G_st| = 1");
}

inline void require_pm_one_observables(const std::vector<CMat>& obs, const char* side) {
  if (obs.empty()) throw ValidationError(std::string(side) + ": needs at least one observable");
  const Eigen::Index d = obs[0].rows();
  for (const CMat& a : obs) {
    if (a.rows() != d || a.cols() != d)
      throw ValidationError(std::string(side) + ": observables must be square with one shared dimension");
    if (qdetail::max_abs(CMat(a - a.adjoint())) > 1e-10)
      throw ValidationError(std::string(side) + ": observable is not Hermitian");
    if (qdetail::max_abs(CMat(a * a - CMat::Identity(d, d))) > 1e-10)
      throw ValidationError(std::string(side) + ": observable does not square to identity");
  }
}

}  // namespace gdetail

class XorGame {
 public:
  XorGame(std::size_t s, std::size_t t, std::vector<double> entries)
      : s_(s), t_(t), g_(std::move(entries)) {
    if (s_ == 0 || t_ == 0 || g_.size() != s_ * t_)
      throw ValidationError("game table shape mismatch");
    gdetail::require_unit_abs_sum(g_);
  }

  std::size_t s_count() const { return s_; }
  std::size_t t_count() const { return t_; }
  double at(std::size_t s, std::size_t t) const { return g_[s * t_ + t]; }

  static XorGame chsh() { return XorGame(2, 2, {0.25, 0.25, 0.25, -0.25}); }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < s_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < t_; ++j) row.push_back(at(i, j));
      rows.push_back(std::move(row));
    }
    return nlohmann::json{{"s", s_}, {"t", t_}, {"entries", rows}};
  }

  static XorGame from_json(const nlohmann::json& j) {
    try {
      const auto s = j.at("s").get<std::size_t>();
      const auto t = j.at("t").get<std::size_t>();
      const auto& rows = j.at("entries");
      if (!rows.is_array() || rows.size() != s) throw ValidationError("game json row count mismatch");
      std::vector<double> flat;
      flat.reserve(s * t);
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != t)
          throw ValidationError("game json column count mismatch");
        for (const auto& v : row) flat.push_back(v.get<double>());
      }
      return XorGame(s, t, std::move(flat));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(std::string("bad game json: ") + ex.what());
    }
  }

 private:
  std::size_t s_, t_;
  std::vector<double> g_;
};

class QuantumStrategy {
 public:
  QuantumStrategy(CVec state, std::vector<CMat> obs_a, std::vector<CMat> obs_b)
      : state_(std::move(state)), a_(std::move(obs_a)), b_(std::move(obs_b)) {
    gdetail::require_pm_one_observables(a_, "first player");
    gdetail::require_pm_one_observables(b_, "second player");
    if (state_.size() != a_[0].rows() * b_[0].rows())
      throw ValidationError("state dimension must be the product of the players' dimensions");
    if (std::abs(state_.norm() - 1.0) > 1e-12)
      throw ValidationError("strategy state must be a unit vector");
  }

  const CVec& state() const { return state_; }
  const std::vector<CMat>& observables_a() const { return a_; }
  const std::vector<CMat>& observables_b() const { return b_; }

  // Maximally entangled pair; Alice measures Z and X, Bob the diagonal
  // rotations (Z+X)/sqrt2 and (Z-X)/sqrt2. Meets the CHSH quantum optimum.
  static QuantumStrategy tsirelson() {
    CVec psi = CVec::Zero(4);
    psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
    CMat z(2, 2), x(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    x << 0.0, 1.0, 1.0, 0.0;
    const double r = 1.0 / std::sqrt(2.0);
    return QuantumStrategy(std::move(psi), {z, x}, {CMat(r * (z + x)), CMat(r * (z - x))});
  }

  // Deterministic all-(+1) answers: identity observables on |0...0>.
  static QuantumStrategy constant_plus(std::size_t n_a, std::size_t n_b) {
    CVec psi = CVec::Zero(4);
    psi[0] = 1.0;
    return QuantumStrategy(std::move(psi),
                           std::vector<CMat>(n_a, CMat::Identity(2, 2)),
                           std::vector<CMat>(n_b, CMat::Identity(2, 2)));
  }

 private:
  CVec state_;
  std::vector<CMat> a_, b_;
};

// beta(G, S) = sum_st G_st <psi| A_s ox B_t |psi>.
inline double bias(const XorGame& g, const QuantumStrategy& s) {
  if (s.observables_a().size() != g.s_count() || s.observables_b().size() != g.t_count())
    throw ValidationError("strategy question counts do not match the game");
  double total = 0.0;
  for (std::size_t i = 0; i < g.s_count(); ++i)
    for (std::size_t j = 0; j < g.t_count(); ++j) {
      if (g.at(i, j) == 0.0) continue;
      const CMat m = qdetail::kron(s.observables_a()[i], s.observables_b()[j]);
      total += g.at(i, j) * s.state().dot(m * s.state()).real();
    }
  return total;
}

inline Prob win_probability(double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) throw DomainError("bias outside [-1, 1]");
  return Prob((beta + 1.0) / 2.0);
}

// Exact classical optimum: enumerate sign assignments on the smaller side;
// the larger side is then optimized coordinatewise (sum of absolute column
// scores). Refused above 24 question pairs.
inline double classical_optimum(const XorGame& g) {
  if (g.s_count() * g.t_count() > 24)
    throw CapabilityError("classical brute force refused beyond 24 question pairs");
  const bool enum_first = g.s_count() <= g.t_count();
  const std::size_t n_out = enum_first ? g.s_count() : g.t_count();
  const std::size_t n_in = enum_first ? g.t_count() : g.s_count();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n_out); ++mask) {
    double val = 0.0;
    for (std::size_t j = 0; j < n_in; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < n_out; ++i) {
        const double sign = ((mask >> i) & 1u) ? -1.0 : 1.0;
        col += sign * (enum_first ? g.at(i, j) : g.at(j, i));
      }
      val += std::abs(col);
    }
    if (val > best) best = val;
  }
  return best;
}

// (1 - eps) beta* <= beta(G, S) <= beta* + 1e-9.
inline bool epsilon_optimality_check(const XorGame& g, const QuantumStrategy& s, double beta_star,
                                     double eps) {
  if (!(beta_star > 0.0)) throw DomainError("reference bias must be positive");
  if (!(eps >= 0.0)) throw DomainError("optimality slack must be nonnegative");
  const double b = bias(g, s);
  return b >= (1.0 - eps) * beta_star && b <= beta_star + 1e-9;
}

class XorGame3 {
 public:
  XorGame3(std::size_t s, std::size_t t, std::size_t u, std::vector<double> entries)
      : s_(s), t_(t), u_(u), g_(std::move(entries)) {
    if (s_ == 0 || t_ == 0 || u_ == 0 || g_.size() != s_ * t_ * u_)
      throw ValidationError("game table shape mismatch");
    gdetail::require_unit_abs_sum(g_);
  }

  std::size_t s_count() const { return s_; }
  std::size_t t_count() const { return t_; }
  std::size_t u_count() const { return u_; }
  double at(std::size_t s, std::size_t t, std::size_t u) const {
    return g_[(s * t_ + t) * u_ + u];
  }

  nlohmann::json to_json() const {
    nlohmann::json planes = nlohmann::json::array();
    for (std::size_t i = 0; i < s_; ++i) {
      nlohmann::json plane = nlohmann::json::array();
      for (std::size_t j = 0; j < t_; ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < u_; ++k) row.push_back(at(i, j, k));
        plane.push_back(std::move(row));
      }
      planes.push_back(std::move(plane));
    }
    return nlohmann::json{{"s", s_}, {"t", t_}, {"u", u_}, {"entries", planes}};
  }

  static XorGame3 from_json(const nlohmann::json& j) {
    try {
      const auto s = j.at("s").get<std::size_t>();
      const auto t = j.at("t").get<std::size_t>();
      const auto u = j.at("u").get<std::size_t>();
      const auto& planes = j.at("entries");
      if (!planes.is_array() || planes.size() != s)
        throw ValidationError("game json plane count mismatch");
      std::vector<double> flat;
      flat.reserve(s * t * u);
      for (const auto& plane : planes) {
        if (!plane.is_array() || plane.size() != t)
          throw ValidationError("game json row count mismatch");
        for (const auto& row : plane) {
          if (!row.is_array() || row.size() != u)
            throw ValidationError("game json column count mismatch");
          for (const auto& v : row) flat.push_back(v.get<double>());
        }
      }
      return XorGame3(s, t, u, std::move(flat));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(std::string("bad game json: ") + ex.what());
    }
  }

 private:
  std::size_t s_, t_, u_;
  std::vector<double> g_;
};

class QuantumStrategy3 {
 public:
  QuantumStrategy3(CVec state, std::vector<CMat> obs_a, std::vector<CMat> obs_b,
                   std::vector<CMat> obs_c)
      : state_(std::move(state)), a_(std::move(obs_a)), b_(std::move(obs_b)), c_(std::move(obs_c)) {
    gdetail::require_pm_one_observables(a_, "first player");
    gdetail::require_pm_one_observables(b_, "second player");
    gdetail::require_pm_one_observables(c_, "third player");
    if (state_.size() != a_[0].rows() * b_[0].rows() * c_[0].rows())
      throw ValidationError("state dimension must be the product of the players' dimensions");
    if (std::abs(state_.norm() - 1.0) > 1e-12)
      throw ValidationError("strategy state must be a unit vector");
  }

  const CVec& state() const { return state_; }
  const std::vector<CMat>& observables_a() const { return a_; }
  const std::vector<CMat>& observables_b() const { return b_; }
  const std::vector<CMat>& observables_c() const { return c_; }

  static CVec ghz_state() {
    CVec psi = CVec::Zero(8);
    psi[0] = psi[7] = 1.0 / std::sqrt(2.0);
    return psi;
  }

 private:
  CVec state_;
  std::vector<CMat> a_, b_, c_;
};

inline double multiplayer_bias(const XorGame3& g, const QuantumStrategy3& s) {
  if (s.observables_a().size() != g.s_count() || s.observables_b().size() != g.t_count() ||
      s.observables_c().size() != g.u_count())
    throw ValidationError("strategy question counts do not match the game");
  double total = 0.0;
  for (std::size_t i = 0; i < g.s_count(); ++i)
    for (std::size_t j = 0; j < g.t_count(); ++j)
      for (std::size_t k = 0; k < g.u_count(); ++k) {
        if (g.at(i, j, k) == 0.0) continue;
        const CMat m = qdetail::kron(qdetail::kron(s.observables_a()[i], s.observables_b()[j]),
                                     s.observables_c()[k]);
        total += g.at(i, j, k) * s.state().dot(m * s.state()).real();
      }
  return total;
}

}  // namespace wiretap
