#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "wiretap/common.hpp"
#include "wiretap/holevo.hpp"
#include "wiretap/qstate.hpp"

namespace wiretap {

namespace poldetail {

inline constexpr double kFactorTol = 1e-14;

// Rank-revealing factor V with herm = V V†, keeping eigenpairs above a
// relative floor. Pure states come out as single columns, which is what keeps
// the deep splits affordable: tensoring and summing act on factors, and every
// entropy below reduces to an eigenproblem of the factor's Gram matrix.
inline CMat low_rank_factor(const CMat& herm) {
  Eigen::SelfAdjointEigenSolver<CMat> s(herm);
  if (s.info() != Eigen::Success) throw Error("hermitian eigensolver did not converge");
  const Eigen::VectorXd lam = s.eigenvalues();
  const double floor = kFactorTol * std::max(1.0, lam.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > floor) keep.push_back(i);
  CMat v(herm.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    v.col(static_cast<Eigen::Index>(j)) = s.eigenvectors().col(keep[j]) * std::sqrt(lam[keep[j]]);
  return v;
}

// Entropy in bits of V V† via whichever of V†V and V V† is smaller; their
// nonzero spectra coincide. Works on subnormalized blocks; a zero-column
// factor is an absent block.
inline double factor_entropy(const CMat& v) {
  if (v.cols() == 0) return 0.0;
  const CMat gram = v.cols() <= v.rows() ? CMat(v.adjoint() * v) : CMat(v * v.adjoint());
  return qdetail::eigenvalue_entropy_bits(qdetail::eigenvalues_of(gram));
}

// Mixed base states make concatenation outgrow the block dimension; refactor
// through the state itself to pull the column count back under the true rank.
inline CMat compress(const CMat& v) {
  if (v.cols() <= v.rows()) return v;
  return low_rank_factor(CMat(v * v.adjoint()));
}

inline CMat concat(const CMat& a, const CMat& b) {
  CMat out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

}  // namespace poldetail

// Binary-input cq channel produced by the polar combine/split recursion.
// Output states are block-diagonal over the classical registers accumulated
// by the plus splits; block c of input u is stored as a factor V with state
// B_u(c) = V V†. The direct sum over blocks is the exact output state, and
// the factors only ever pick up tensor products, concatenations, and scalar
// weights, so no information is discarded after the base decomposition.
class SynthesizedChannel {
 public:
  explicit SynthesizedChannel(const CqChannel& base) {
    if (base.size() != 2) throw DomainError("polar splits need a binary input alphabet");
    dim_ = base.dim();
    for (int u = 0; u < 2; ++u)
      factors_[u].push_back(poldetail::low_rank_factor(base.states()[u].entries()));
  }

  int block_dim() const { return dim_; }
  std::size_t block_count() const { return factors_[0].size(); }
  int classical_registers() const { return registers_; }
  int depth() const { return depth_; }
  const std::string& path() const { return path_; }

  const std::vector<CMat>& factors(int u) const {
    if (u != 0 && u != 1) throw DomainError("input symbol must be 0 or 1");
    return factors_[u];
  }

 private:
  SynthesizedChannel() = default;
  friend SynthesizedChannel split_minus(const SynthesizedChannel&);
  friend SynthesizedChannel split_plus(const SynthesizedChannel&);

  std::array<std::vector<CMat>, 2> factors_;
  int dim_ = 0;
  int depth_ = 0;
  int registers_ = 0;
  std::string path_;
};

namespace poldetail {

inline void check_split_depth(const SynthesizedChannel& w) {
  if (w.depth() >= 3)
    throw CapabilityError("splitting at depth " + std::to_string(w.depth()) +
                          " would raise the block dimension to " + std::to_string(w.block_dim()) +
                          "^2; exact evaluation is capped at total depth 3");
}

}  // namespace poldetail

// W⁻ : u₁ ↦ (1/2) Σ_{u₂} B_{u₁⊕u₂} ⊗ B_{u₂}, blockwise over classical
// register pairs. The output dimension squares and the register count
// doubles; no new classical register appears.
inline SynthesizedChannel split_minus(const SynthesizedChannel& w) {
  poldetail::check_split_depth(w);
  const std::size_t nb = w.block_count();
  const double inv = std::sqrt(0.5);
  SynthesizedChannel out;
  out.dim_ = w.block_dim() * w.block_dim();
  out.depth_ = w.depth() + 1;
  out.registers_ = 2 * w.classical_registers();
  out.path_ = w.path() + "-";
  for (int u1 = 0; u1 < 2; ++u1) {
    out.factors_[u1].reserve(nb * nb);
    for (std::size_t c = 0; c < nb; ++c)
      for (std::size_t cp = 0; cp < nb; ++cp) {
        const CMat a = qdetail::kron(w.factors(u1)[c], w.factors(0)[cp]);
        const CMat b = qdetail::kron(w.factors(u1 ^ 1)[c], w.factors(1)[cp]);
        out.factors_[u1].push_back(poldetail::compress(poldetail::concat(inv * a, inv * b)));
      }
  }
  return out;
}

// W⁺ : u₂ ↦ (1/2) Σ_{u₁} |u₁⟩⟨u₁| ⊗ B_{u₁⊕u₂} ⊗ B_{u₂}. The summed-out bit
// u₁ survives as one new classical register, so each summand becomes its own
// block: no mixing across u₁ ever happens.
inline SynthesizedChannel split_plus(const SynthesizedChannel& w) {
  poldetail::check_split_depth(w);
  const std::size_t nb = w.block_count();
  const double inv = std::sqrt(0.5);
  SynthesizedChannel out;
  out.dim_ = w.block_dim() * w.block_dim();
  out.depth_ = w.depth() + 1;
  out.registers_ = 2 * w.classical_registers() + 1;
  out.path_ = w.path() + "+";
  for (int u2 = 0; u2 < 2; ++u2) {
    out.factors_[u2].reserve(2 * nb * nb);
    for (int u1 = 0; u1 < 2; ++u1)
      for (std::size_t c = 0; c < nb; ++c)
        for (std::size_t cp = 0; cp < nb; ++cp)
          out.factors_[u2].push_back(inv *
                                     qdetail::kron(w.factors(u1 ^ u2)[c], w.factors(u2)[cp]));
  }
  return out;
}

// Holevo quantity of the synthesized channel under uniform inputs,
// S((B₀+B₁)/2) − [S(B₀)+S(B₁)]/2, summing blockwise entropies.
inline double holevo_chi(const SynthesizedChannel& w) {
  const double inv = std::sqrt(0.5);
  double s_avg = 0.0, s0 = 0.0, s1 = 0.0;
  for (std::size_t c = 0; c < w.block_count(); ++c) {
    const CMat& a = w.factors(0)[c];
    const CMat& b = w.factors(1)[c];
    s0 += poldetail::factor_entropy(a);
    s1 += poldetail::factor_entropy(b);
    s_avg += poldetail::factor_entropy(poldetail::concat(inv * a, inv * b));
  }
  return s_avg - 0.5 * (s0 + s1);
}

// |(χ(W⁺) + χ(W⁻))/2 − χ(W)|; the split preserves the Holevo sum, so this
// should sit at numerical noise (< 1e-9) for any valid channel.
inline double conservation_residual(const SynthesizedChannel& w) {
  const double base = holevo_chi(w);
  const double lo = holevo_chi(split_minus(w));
  const double hi = holevo_chi(split_plus(w));
  return std::abs(0.5 * (lo + hi) - base);
}

struct LeafChi {
  int index = 0;
  double chi = 0.0;
};

// All 2^depth synthesized channels in path order: index bit 0 (most
// significant) is the first split, 0 meaning minus and 1 meaning plus, so
// index 0 is the all-minus leaf and the order is free of bit reversal.
// Leaves are evaluated independently from the root, so reports do not depend
// on the worker count.
inline std::vector<LeafChi> polarize(const SynthesizedChannel& w, int depth, int workers = 0) {
  if (depth < 1) throw DomainError("polarization depth must be at least 1");
  if (w.depth() + depth > 3) {
    const std::string uses =
        depth <= 30 ? std::to_string(1 << depth) : ("2^" + std::to_string(depth));
    throw CapabilityError("polarizing " + std::to_string(depth) + " more levels from depth " +
                          std::to_string(w.depth()) + " multiplies the block dimension by itself " +
                          uses + " times; exact evaluation is capped at total depth 3");
  }
  const std::size_t leaves = 1ull << depth;
  std::vector<LeafChi> out(leaves);
  parallel_chunks(leaves, workers, [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SynthesizedChannel node = w;
      for (int level = 0; level < depth; ++level)
        node = ((i >> (depth - 1 - level)) & 1) ? split_plus(node) : split_minus(node);
      out[i] = {static_cast<int>(i), holevo_chi(node)};
    }
  });
  return out;
}

// Indices whose synthesized channel is good for Bob and bad for Eve at
// threshold theta, with the achieved rate |set| / #leaves.
struct IndexSet {
  std::vector<int> indices;
  double rate = 0.0;
};

inline IndexSet secure_index_set(const std::vector<LeafChi>& bob, const std::vector<LeafChi>& eve,
                                 double theta) {
  if (bob.size() != eve.size())
    throw ValidationError("bob and eve leaf lists differ in length");
  if (bob.empty()) throw ValidationError("leaf lists must be nonempty");
  if (!(theta > 0.0 && theta < 0.5))
    throw DomainError("selection threshold must lie in (0, 1/2)");
  IndexSet out;
  for (std::size_t i = 0; i < bob.size(); ++i) {
    if (bob[i].index != eve[i].index)
      throw ValidationError("bob and eve leaf lists disagree on channel indices");
    if (bob[i].chi >= 1.0 - theta && eve[i].chi <= theta) out.indices.push_back(bob[i].index);
  }
  out.rate = static_cast<double>(out.indices.size()) / static_cast<double>(bob.size());
  return out;
}

// Eve's view of a cq channel: her CPTP degradation applied to every output
// state. Her synthesized channels come from splitting this.
inline CqChannel degrade(const CqChannel& bob, const KrausChannel& eve_map) {
  if (eve_map.in_dim() != bob.dim())
    throw ValidationError("eavesdropper map input dimension does not match the channel states");
  std::vector<DensityMatrix> states;
  states.reserve(bob.size());
  for (const auto& s : bob.states()) states.push_back(apply_channel(eve_map, s));
  return CqChannel(bob.inputs(), std::move(states));
}

// CSV report, one row per synthesized index: index, path, chi_bob, chi_eve,
// selected. Values are rounded to 12 significant digits.
inline std::string polarization_csv(const std::vector<LeafChi>& bob,
                                    const std::vector<LeafChi>& eve, const IndexSet& selected) {
  if (bob.size() != eve.size())
    throw ValidationError("bob and eve leaf lists differ in length");
  if (bob.size() < 2 || (bob.size() & (bob.size() - 1)) != 0)
    throw ValidationError("leaf count must be a power of two");
  int depth = 0;
  while ((1ull << depth) < bob.size()) ++depth;

  const auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round_sig(x, 12));
    return std::string(buf);
  };

  std::string out = "index,path,chi_bob,chi_eve,selected\n";
  for (std::size_t i = 0; i < bob.size(); ++i) {
    if (bob[i].index != eve[i].index)
      throw ValidationError("bob and eve leaf lists disagree on channel indices");
    std::string path;
    for (int level = 0; level < depth; ++level)
      path += ((static_cast<std::size_t>(bob[i].index) >> (depth - 1 - level)) & 1) ? '+' : '-';
    const bool chosen =
        std::binary_search(selected.indices.begin(), selected.indices.end(), bob[i].index);
    out += std::to_string(bob[i].index) + "," + path + "," + num(bob[i].chi) + "," +
           num(eve[i].chi) + "," + (chosen ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace wiretap
