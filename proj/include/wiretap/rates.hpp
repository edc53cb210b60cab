#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wiretap/common.hpp"

namespace wiretap {

// Cardinalities as log2 values. The rate formulas nest logarithms deep enough
// that the interesting regimes have |Z| around 2^(2^32); carrying log2 sizes
// keeps everything in comfortable double range.
struct AlphabetSizes {
  double lx, lx_star, ly, ly_star, lz;
  AlphabetSizes(double lx_, double lx_star_, double ly_, double ly_star_, double lz_)
      : lx(lx_), lx_star(lx_star_), ly(ly_), ly_star(ly_star_), lz(lz_) {
    if (!(lx > 0.0 && lx_star > 0.0 && ly > 0.0 && ly_star > 0.0 && lz > 0.0))
      throw ValidationError("alphabet sizes must be positive log2 cardinalities");
    if (lx_star > lx || ly_star > ly)
      throw ValidationError("pruned alphabets cannot exceed the unpruned ones");
  }
};

struct LetterAlphabets {
  std::set<std::string> x, y, z;
  LetterAlphabets(std::set<std::string> x_, std::set<std::string> y_, std::set<std::string> z_)
      : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
    if (x.empty() || y.empty() || z.empty())
      throw ValidationError("letter alphabets must be non-empty");
  }
};

inline std::set<std::string> overlap(const LetterAlphabets& a) {
  std::set<std::string> out;
  for (const auto& s : a.x)
    if (a.y.count(s) && a.z.count(s)) out.insert(s);
  return out;
}

// Remove overlap letters from Y first (smallest letter first), then from X if
// any overlap somehow persists, until the triple intersection is empty.
// Removing a letter from Y already takes it out of the intersection, so the
// X stage is a backstop rather than a working path.
inline std::pair<std::set<std::string>, std::set<std::string>> prune(const LetterAlphabets& a) {
  std::set<std::string> x = a.x, y = a.y;
  for (;;) {
    std::set<std::string> o;
    for (const auto& s : x)
      if (y.count(s) && a.z.count(s)) o.insert(s);
    if (o.empty()) break;
    const std::string& letter = *o.begin();
    if (y.count(letter))
      y.erase(letter);
    else
      x.erase(letter);
  }
  return {std::move(x), std::move(y)};
}

struct RateError {
  std::string term;
  std::string condition;
};

struct RateResult {
  int branch = 0;
  std::optional<double> value;
  std::optional<RateError> error;
  bool ok() const { return value.has_value(); }
};

// Piecewise converse rate, one branch at a time, in log2 domain. The loglog
// terms need their inner ratio above 1; a violation is reported as data (the
// caller decides what a dead branch means), not thrown.
inline RateResult rate_branch(int branch, const AlphabetSizes& s) {
  RateResult out;
  out.branch = branch;
  const auto loglog = [&out](double log_card, double other_l, const char* cond)
      -> std::optional<double> {
    const double inner = std::log2(log_card) - other_l;  // log2(log|A| / |B|)
    if (!(inner > 0.0)) {
      out.error = RateError{"loglog", cond};
      return std::nullopt;
    }
    return std::log2(inner);
  };
  switch (branch) {
    case 1: {
      const auto first = loglog(s.ly_star, s.lx_star, "log|Y*|/|X*| > 1");
      if (first) out.value = *first + (std::log2(s.lz) - s.ly_star);
      return out;
    }
    case 2: {
      const auto first = loglog(s.lx, s.ly_star, "log|X|/|Y*| > 1");
      if (first) out.value = *first + (std::log2(s.ly_star) - s.lx);
      return out;
    }
    case 3: {
      const auto first = loglog(s.ly_star, s.lx_star, "log|Y*|/|X*| > 1");
      if (first) out.value = *first + (std::log2(s.ly_star) - s.lx);
      return out;
    }
    case 4: {
      const auto first = loglog(s.ly_star, s.lx_star, "log|Y*|/|X*| > 1");
      if (first) out.value = *first + (std::log2(s.lz) - s.ly_star);
      return out;
    }
    default:
      throw DomainError("branch index must be between 1 and 4");
  }
}

// The two comparisons (|X| vs |Y*|, |Y*| vs |Z|) pick the branch; a tie in
// either comparison leaves no unique branch.
inline int select_branch(const AlphabetSizes& s) {
  if (s.lx == s.ly_star || s.ly_star == s.lz)
    throw AmbiguityError("tied alphabet cardinalities do not select a unique branch");
  const bool x_over_y = s.lx > s.ly_star;
  const bool y_over_z = s.ly_star > s.lz;
  if (x_over_y && y_over_z) return 1;
  if (!x_over_y && !y_over_z) return 2;
  if (x_over_y) return 3;
  return 4;
}

inline RateResult evaluate_rate(const AlphabetSizes& s) {
  return rate_branch(select_branch(s), s);
}

struct AdaptiveRates {
  RateResult public_broadcast;
  RateResult forward_conceptual;
  RateResult backward_conceptual;
  std::vector<std::string> warnings;
};

// Independent evaluation per channel. The conceptual-channel regimes are
// sanity checks, not hard preconditions: a violation is reported as a warning
// so the caller can still see the numbers.
inline AdaptiveRates adaptive_rates(const AlphabetSizes& pb, const AlphabetSizes& fc,
                                    const AlphabetSizes& bc) {
  AdaptiveRates out{evaluate_rate(pb), evaluate_rate(fc), evaluate_rate(bc), {}};
  if (!(fc.lx <= pb.lx - 1.0))
    out.warnings.push_back(
        "forward-conceptual regime violated: expected a much smaller input alphabet "
        "(fc.lx <= pb.lx - 1)");
  if (std::abs(bc.lx - pb.lx) > 1.0)
    out.warnings.push_back(
        "backward-conceptual regime violated: expected a comparable input alphabet "
        "(|bc.lx - pb.lx| <= 1)");
  return out;
}

}  // namespace wiretap
