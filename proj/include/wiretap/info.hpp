#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/common.hpp"

namespace wiretap {

// A probability: validated once at the boundary, then used as a plain double.
class Prob {
 public:
  Prob(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("probability outside [0, 1]");
  }
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_;
};

class Dist {
 public:
  explicit Dist(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw ValidationError("distribution over empty alphabet");
    double sum = 0.0;
    for (double p : w_) {
      if (p < 0.0) throw ValidationError("negative probability weight");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("distribution weights do not sum to 1");
  }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

  static Dist uniform(std::size_t n) {
    return Dist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

 private:
  std::vector<double> w_;
};

class JointDist {
 public:
  JointDist(std::size_t rows, std::size_t cols, std::vector<double> table)
      : rows_(rows), cols_(cols), t_(std::move(table)) {
    if (rows_ == 0 || cols_ == 0 || t_.size() != rows_ * cols_)
      throw ValidationError("joint table shape mismatch");
    double sum = 0.0;
    for (double p : t_) {
      if (p < 0.0) throw ValidationError("negative joint probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("joint table does not sum to 1");
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t x, std::size_t y) const { return t_[x * cols_ + y]; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> t_;
};

inline double binary_entropy(Prob p) {
  return -plog2p(p) - plog2p(1.0 - p);
}

inline double shannon_entropy(const Dist& d) {
  double h = 0.0;
  for (double p : d.weights()) h -= plog2p(p);
  return h;
}

namespace detail {
inline double joint_entropy(const JointDist& j) {
  double h = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x)
    for (std::size_t y = 0; y < j.cols(); ++y) h -= plog2p(j.at(x, y));
  return h;
}
inline double row_marginal_entropy(const JointDist& j) {
  double h = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    double px = 0.0;
    for (std::size_t y = 0; y < j.cols(); ++y) px += j.at(x, y);
    h -= plog2p(px);
  }
  return h;
}
inline double col_marginal_entropy(const JointDist& j) {
  double h = 0.0;
  for (std::size_t y = 0; y < j.cols(); ++y) {
    double py = 0.0;
    for (std::size_t x = 0; x < j.rows(); ++x) py += j.at(x, y);
    h -= plog2p(py);
  }
  return h;
}
// Round-off can leave a nonnegative-by-theorem quantity a hair below zero.
inline double snap_nonneg(double v) {
  return (v < 0.0 && v > -1e-9) ? 0.0 : v;
}
}  // namespace detail

// I(X;Y) = H(X) + H(Y) - H(X,Y).
inline double mutual_information(const JointDist& j) {
  return detail::snap_nonneg(detail::row_marginal_entropy(j) + detail::col_marginal_entropy(j) -
                             detail::joint_entropy(j));
}

// H(Y|X) = H(X,Y) - H(X).
inline double conditional_entropy(const JointDist& j) {
  return detail::snap_nonneg(detail::joint_entropy(j) - detail::row_marginal_entropy(j));
}

// Crossover of two binary symmetric stages in series.
inline Prob cascade(Prob eps, Prob delta) {
  return Prob(eps + delta - 2.0 * eps * delta);
}

}  // namespace wiretap
