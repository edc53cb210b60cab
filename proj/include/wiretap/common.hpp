#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace wiretap {

// Error hierarchy. DomainError covers arguments outside an operation's
// mathematical domain, ValidationError covers malformed composite inputs
// (distributions, matrices, configs), CapabilityError covers requests the
// implementation refuses because they would blow up (names the blow-up),
// AmbiguityError covers genuinely tied selections the caller must resolve.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct CapabilityError : Error {
  using Error::Error;
};
struct AmbiguityError : Error {
  using Error::Error;
};

// p*log2(p) with the 0*log0 := 0 continuity convention.
inline double plog2p(double p) {
  return p > 0.0 ? p * std::log2(p) : 0.0;
}

// Round to `digits` significant decimal digits. Reports carry 12.
inline double round_sig(double x, int digits = 12) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

// Clamp a worker-count request to something sane. 0 means "pick for me".
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(hw > 8 ? 8 : hw);
}

struct MaxPoint {
  double arg = 0.0;
  double value = 0.0;
};

// Deterministic 1-D maximizer: coarse grid scan (first index wins ties, so
// the smallest argmax is kept), then golden-section refinement of the
// bracketing interval down to `width`. No randomness, so optimizer output
// is exactly reproducible.
inline MaxPoint grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                                double step = 1e-3, double width = 1e-8) {
  MaxPoint best{lo, f(lo)};
  auto n = static_cast<long long>((hi - lo) / step + 0.5);
  for (long long i = 1; i <= n; ++i) {
    double x = (i == n) ? hi : lo + static_cast<double>(i) * step;
    double v = f(x);
    if (v > best.value) best = {x, v};
  }
  double a = best.arg - step, b = best.arg + step;
  if (a < lo) a = lo;
  if (b > hi) b = hi;
  constexpr double invphi = 0.6180339887498948482;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    }
  }
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

// Run fn(chunk_index, begin, end) over [0, n) split into contiguous chunks,
// one per worker. Chunk boundaries depend only on (n, workers); callers that
// need worker-independent output must make per-item work a pure function of
// the item index (see rng.hpp) and merge chunk results in chunk order or
// with a commutative reduction.
inline void parallel_chunks(std::size_t n, int workers,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
  int w = resolve_workers(workers);
  if (n == 0) return;
  if (static_cast<std::size_t>(w) > n) w = static_cast<int>(n);
  if (w <= 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  std::size_t base = n / w, extra = n % w, start = 0;
  for (int i = 0; i < w; ++i) {
    std::size_t len = base + (static_cast<std::size_t>(i) < extra ? 1 : 0);
    pool.emplace_back(fn, i, start, start + len);
    start += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace wiretap
