#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/qstate.hpp"

namespace wiretap {

struct FanoInputs {
  std::int64_t m;
  double chi;
  FanoInputs(std::int64_t m_, double chi_) : m(m_), chi(chi_) {
    if (m < 2) throw DomainError("message count must be at least 2");
    if (!(chi >= 0.0)) throw DomainError("information argument must be nonnegative");
  }
};

// Smallest error probability consistent with Fano's inequality:
// p* = inf{ p in [0, (M-1)/M] : H_b(p) + p log2(M-1) >= log2(M) - chi }.
// The left side is strictly increasing on that interval, so bisection applies.
inline Prob fano_min_error(const FanoInputs& f) {
  const double log2m = std::log2(static_cast<double>(f.m));
  const double target = log2m - f.chi;
  if (target <= 0.0) return Prob(0.0);
  const double log2m1 = std::log2(static_cast<double>(f.m - 1));
  const auto lhs = [&](double p) { return binary_entropy(Prob(p)) + p * log2m1; };
  double lo = 0.0;
  double hi = static_cast<double>(f.m - 1) / static_cast<double>(f.m);
  if (lhs(hi) <= target) return Prob(hi);  // chi == 0: the bound saturates at the endpoint
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (lhs(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return Prob(hi);
}

struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
};

// log2(1/N) * (log2(M) - chi - 1), verbatim. For N > 1 the leading factor is
// negative, which pushes the value outside [0, 1] in most regimes; the result
// is returned raw with a vacuity flag (and an opt-in clamp) rather than
// silently repaired.
inline BoundValue lemma323_bound(std::int64_t n, std::int64_t m, double chi, bool clamp = false) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  if (m < 2) throw DomainError("message count must be at least 2");
  if (!(chi >= 0.0)) throw DomainError("information argument must be nonnegative");
  double value = -std::log2(static_cast<double>(n)) *
                 (std::log2(static_cast<double>(m)) - chi - 1.0);
  const bool vacuous = value < 0.0 || value > 1.0;
  if (clamp) value = value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
  return {value, vacuous};
}

// max(0, 1 - (1 + eps (M-1)) / M) with eps on the trace-norm scale [0, 2].
inline Prob helstrom_multistate_lower(std::int64_t m, double eps) {
  if (m < 2) throw DomainError("state count must be at least 2");
  if (!(eps >= 0.0 && eps <= 2.0)) throw DomainError("trace-norm bound outside [0, 2]");
  const double v = 1.0 - (1.0 + eps * static_cast<double>(m - 1)) / static_cast<double>(m);
  return Prob(v > 0.0 ? v : 0.0);
}

// Optimal equal-prior two-state discrimination success: 1/2 + ||rho0-rho1||_1 / 4.
inline Prob helstrom_two_state(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  const double v = 0.5 + 0.25 * trace_distance(rho0, rho1);
  return Prob(v > 1.0 ? 1.0 : v);
}

struct CEveGap {
  double value = 0.0;
  std::string regime;
  bool vacuous = false;
};

// Piecewise expected gap of Eve's false acceptance: the Helstrom branch for
// small message counts, the log2(1/N)-scaled branch otherwise. Where "small"
// ends is a free choice, so the threshold is a parameter with default 16.
inline CEveGap c_eve_gap(std::int64_t n, std::int64_t m, double chi, double eps,
                         std::int64_t m_threshold = 16, bool clamp = false) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  if (m < 2) throw DomainError("message count must be at least 2");
  if (!(chi >= 0.0)) throw DomainError("information argument must be nonnegative");
  if (!(eps >= 0.0 && eps <= 2.0)) throw DomainError("trace-norm bound outside [0, 2]");
  if (m <= m_threshold) return {helstrom_multistate_lower(m, eps).value(), "small-M", false};
  const BoundValue b = lemma323_bound(n, m, chi, clamp);
  return {b.value, "large-M", b.vacuous};
}

}  // namespace wiretap
