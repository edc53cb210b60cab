#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wiretap/common.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Outcome of bounded-distance decoding for one syndrome. `pattern` is the
// minimum-weight error word in that coset (ties broken toward the smallest
// integer value); weight -1 means the coset has no word within the radius.
struct DecodeAnswer {
  std::uint64_t pattern = 0;
  int weight = -1;
  bool found() const { return weight >= 0; }
};

namespace lcdetail {

inline constexpr std::uint64_t kEmptySlot = ~0ull;
// Refuse exhaustive searches beyond this many candidate patterns (~15 s of
// enumeration); callers must shrink the radius or the block length.
inline constexpr double kMaxPatterns = 6.5e9;

inline std::uint64_t bit_mask(int n) {
  return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

}  // namespace lcdetail

// Seeded random binary linear coset code with full-rank k x n generator and a
// random offset word. Codewords are mG ^ offset over GF(2); words are packed
// into one uint64 each, which caps the block length at 64.
class LinearCode {
 public:
  LinearCode(int n, double rate, std::uint64_t seed) : n_(n), seed_(seed) {
    if (n < 2) throw DomainError("block length must be at least 2");
    if (n > 64) throw CapabilityError("block lengths beyond 64 bits exceed the word-packed implementation");
    k_ = static_cast<int>(std::lround(rate * n));
    if (k_ < 1 || k_ >= n)
      throw DomainError("message size round(rate*n) must lie in [1, n-1]");

    const std::uint64_t mask = lcdetail::bit_mask(n_);
    const rng::Counter gen(seed, 0);
    for (std::uint64_t attempt = 0;; ++attempt) {
      gen_.clear();
      for (int i = 0; i < k_; ++i)
        gen_.push_back(gen.u64(attempt * static_cast<std::uint64_t>(k_) + i) & mask);
      if (reduce_generator()) break;
    }
    offset_ = rng::Counter(seed, 1).u64(0) & mask;

    col_syn_.resize(n_);
    for (int j = 0; j < n_; ++j) col_syn_[j] = raw_syndrome(1ull << j);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t offset() const { return offset_; }
  const std::vector<std::uint64_t>& generator_rows() const { return gen_; }
  const std::vector<std::uint64_t>& parity_rows() const { return par_; }

  std::uint64_t encode(std::uint64_t message) const {
    std::uint64_t w = offset_;
    for (int i = 0; i < k_; ++i)
      if ((message >> i) & 1) w ^= gen_[i];
    return w;
  }

  // Syndrome relative to the coset: zero exactly on codewords.
  std::uint64_t syndrome(std::uint64_t word) const { return raw_syndrome(word ^ offset_); }

  // Syndrome of a bare error pattern; equals syndrome(c ^ pattern) for every
  // codeword c, so noise can be classified without materializing the word.
  std::uint64_t pattern_syndrome(std::uint64_t pattern) const { return raw_syndrome(pattern); }

  // Recover m from a codeword; inverse of encode on the codeword set.
  std::uint64_t message_of(std::uint64_t codeword) const {
    const std::uint64_t c = codeword ^ offset_;
    std::uint64_t m = 0;
    for (int j = 0; j < k_; ++j)
      if ((c >> pivots_[j]) & 1) m ^= inv_[j];
    return m;
  }

  static double pattern_count(int n, int radius) {
    long double total = 0.0L, c = 1.0L;
    for (int i = 0; i <= radius && i <= n; ++i) {
      total += c;
      c = c * (n - i) / (i + 1);
    }
    return static_cast<double>(total);
  }

  // Bounded-distance decoding of many syndromes in one pass: enumerate every
  // error pattern of weight 0..radius in (weight, then numeric value) order
  // and hand each queried coset the first pattern that lands in it. One sweep
  // serves any number of queries, so simulations batch all their decodes.
  std::vector<DecodeAnswer> coset_leaders(const std::vector<std::uint64_t>& syndromes,
                                          int radius) const {
    if (radius < 0) throw DomainError("decoding radius must be non-negative");
    const double patterns = pattern_count(n_, radius);
    if (patterns > lcdetail::kMaxPatterns)
      throw CapabilityError("exhaustive coset-leader search over " +
                            std::to_string(static_cast<unsigned long long>(patterns)) +
                            " patterns refused; reduce the radius or block length");
    if (syndromes.empty()) return {};

    // Open-addressed map over the distinct queried syndromes.
    std::size_t cap = 1024;
    while (cap < syndromes.size() * 4) cap <<= 1;
    std::vector<std::uint64_t> keys(cap, lcdetail::kEmptySlot);
    std::vector<DecodeAnswer> vals(cap);
    const std::size_t cap_mask = cap - 1;
    std::size_t remaining = 0;
    for (const std::uint64_t s : syndromes) {
      std::size_t i = rng::mix64(s) & cap_mask;
      while (keys[i] != lcdetail::kEmptySlot && keys[i] != s) i = (i + 1) & cap_mask;
      if (keys[i] == lcdetail::kEmptySlot) {
        keys[i] = s;
        ++remaining;
      }
    }

    // First-level filter sized to the query count so it stays cache-resident;
    // false positives just fall through to the exact map.
    std::size_t bm_bits = 1ull << 20;
    while (bm_bits < remaining * 64 && bm_bits < (1ull << 26)) bm_bits <<= 1;
    const std::uint64_t bm_mask = bm_bits - 1;
    std::vector<std::uint64_t> bitmap(bm_bits >> 6, 0);
    for (std::size_t i = 0; i < cap; ++i)
      if (keys[i] != lcdetail::kEmptySlot) {
        const std::uint64_t b = keys[i] & bm_mask;
        bitmap[b >> 6] |= 1ull << (b & 63);
      }

    const auto try_fill = [&](std::uint64_t syn, std::uint64_t pattern, int weight) {
      std::size_t i = rng::mix64(syn) & cap_mask;
      while (true) {
        if (keys[i] == syn) {
          if (!vals[i].found()) {
            vals[i] = {pattern, weight};
            --remaining;
          }
          return;
        }
        if (keys[i] == lcdetail::kEmptySlot) return;  // filter false positive
        i = (i + 1) & cap_mask;
      }
    };

    try_fill(0, 0, 0);
    const std::uint64_t* cs = col_syn_.data();
    const std::uint64_t* bm = bitmap.data();
    for (int w = 1; w <= radius && w <= n_ && remaining > 0; ++w) {
      // Positions are chosen highest-first, each level ascending, which walks
      // the weight-w patterns in increasing numeric order.
      const auto place = [&](auto&& self, int left, int hi, std::uint64_t mask,
                             std::uint64_t syn) -> void {
        if (left == 1) {
          for (int p = 0; p < hi; ++p) {
            const std::uint64_t s = syn ^ cs[p];
            if ((bm[(s & bm_mask) >> 6] >> (s & 63)) & 1)
              try_fill(s, mask | (1ull << p), w);
          }
          return;
        }
        for (int p = left - 1; p < hi && remaining > 0; ++p)
          self(self, left - 1, p, mask | (1ull << p), syn ^ cs[p]);
      };
      place(place, w, n_, 0, 0);
    }

    std::vector<DecodeAnswer> out;
    out.reserve(syndromes.size());
    for (const std::uint64_t s : syndromes) {
      std::size_t i = rng::mix64(s) & cap_mask;
      while (keys[i] != s) i = (i + 1) & cap_mask;
      out.push_back(vals[i]);
    }
    return out;
  }

  DecodeAnswer decode(std::uint64_t word, int radius) const {
    return coset_leaders({syndrome(word)}, radius)[0];
  }

 private:
  std::uint64_t raw_syndrome(std::uint64_t x) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < par_.size(); ++i)
      s |= static_cast<std::uint64_t>(std::popcount(par_[i] & x) & 1) << i;
    return s;
  }

  // Row-reduce the generator; returns false on a rank deficit. On success
  // records the pivot columns, the message-recovery transform, and the parity
  // rows spanning the null space.
  bool reduce_generator() {
    std::vector<std::uint64_t> rr = gen_;
    std::vector<std::uint64_t> t(k_);
    for (int i = 0; i < k_; ++i) t[i] = 1ull << i;
    pivots_.clear();
    int r = 0;
    for (int col = 0; col < n_ && r < k_; ++col) {
      int p = -1;
      for (int i = r; i < k_; ++i)
        if ((rr[i] >> col) & 1) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(rr[p], rr[r]);
      std::swap(t[p], t[r]);
      for (int i = 0; i < k_; ++i)
        if (i != r && ((rr[i] >> col) & 1)) {
          rr[i] ^= rr[r];
          t[i] ^= t[r];
        }
      pivots_.push_back(col);
      ++r;
    }
    if (r < k_) return false;
    inv_ = t;

    par_.clear();
    std::vector<bool> is_pivot(n_, false);
    for (int c : pivots_) is_pivot[c] = true;
    for (int f = 0; f < n_; ++f) {
      if (is_pivot[f]) continue;
      std::uint64_t v = 1ull << f;
      for (int j = 0; j < k_; ++j)
        if ((rr[j] >> f) & 1) v |= 1ull << pivots_[j];
      par_.push_back(v);
    }
    return true;
  }

  int n_, k_;
  std::uint64_t seed_, offset_ = 0;
  std::vector<std::uint64_t> gen_, par_, col_syn_, inv_;
  std::vector<int> pivots_;
};

inline LinearCode build_code(int n, double rate, std::uint64_t seed) {
  return LinearCode(n, rate, seed);
}

}  // namespace wiretap
