#pragma once

#include <algorithm>

#include "wiretap/channels.hpp"
#include "wiretap/common.hpp"
#include "wiretap/info.hpp"

namespace wiretap {

namespace detail {
inline void require_half(double v, const char* what) {
  if (!(v >= 0.0 && v <= 0.5)) throw DomainError(std::string(what) + " outside [0, 1/2]");
}
}  // namespace detail

// Secrecy capacity without public discussion: h(delta) - h(eps) when Eve's
// channel is noisier, zero otherwise.
inline double cs(Prob eps, Prob delta) {
  detail::require_half(eps, "eps");
  detail::require_half(delta, "delta");
  if (delta > eps) return binary_entropy(delta) - binary_entropy(eps);
  return 0.0;
}

// Closed form with public discussion for the BSC pair: h(eps (+) delta) - h(eps),
// where (+) is the serial cascade.
inline double cs_bar_bsc(Prob eps, Prob delta) {
  detail::require_half(eps, "eps");
  detail::require_half(delta, "delta");
  return binary_entropy(cascade(eps, delta)) - binary_entropy(eps);
}

// Numerical supremum over binary input distributions of I(X;Y|Z).
inline double cs_bar_upper(const BroadcastModel& m) {
  auto f = [&m](double p) {
    return conditional_mi_given_z(m, Dist({p, 1.0 - p}));
  };
  return grid_golden_max(f, 0.0, 1.0).value;
}

struct LowerBound {
  double value;
  bool vacuous;  // true when the unclamped expression is negative
};

// max[h(eA (+) eE), h(eB (+) eE)] - h(eA (+) eB). Negative values are
// reported raw (flagged) unless clamping is requested: vacuous regimes are
// data, not errors.
inline LowerBound thm4_lower(Prob eA, Prob eB, Prob eE, bool clamp = false) {
  detail::require_half(eA, "eA");
  detail::require_half(eB, "eB");
  detail::require_half(eE, "eE");
  double gain = std::max(binary_entropy(cascade(eA, eE)), binary_entropy(cascade(eB, eE)));
  double v = gain - binary_entropy(cascade(eA, eB));
  bool vac = v < 0.0;
  if (clamp && vac) v = 0.0;
  return {v, vac};
}

}  // namespace wiretap
