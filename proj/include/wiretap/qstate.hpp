#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wiretap/common.hpp"
#include "wiretap/info.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

namespace qdetail {

// Tolerance policy: structural invariants (Hermiticity, trace, Kraus
// completeness) at 1e-10; eigenvalues in [-1e-10, 0) count as round-off and
// are treated as 0, anything below -1e-10 is a genuine invalidity; entropy
// sums drop eigenvalues below 1e-12.
constexpr double kHermitianTol = 1e-10;
constexpr double kEigenFloor = -1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEntropyEigTol = 1e-12;
constexpr double kSupportMassTol = 1e-10;
constexpr double kKrausTol = 1e-10;

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::VectorXd eigenvalues_of(const CMat& herm) {
  Eigen::SelfAdjointEigenSolver<CMat> s(herm, Eigen::EigenvaluesOnly);
  if (s.info() != Eigen::Success) throw Error("hermitian eigensolver did not converge");
  return s.eigenvalues();
}

// -sum lambda log2 lambda over a raw eigenvalue list. Also used on
// subnormalized blocks whose traces sum to 1 across a collection.
inline double eigenvalue_entropy_bits(const Eigen::VectorXd& evals) {
  double bits = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] >= kEntropyEigTol) bits -= evals[i] * std::log2(evals[i]);
  return bits;
}

inline CMat psd_sqrt(const CMat& herm) {
  Eigen::SelfAdjointEigenSolver<CMat> s(herm);
  if (s.info() != Eigen::Success) throw Error("hermitian eigensolver did not converge");
  Eigen::VectorXd lam = s.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = lam[i] > 0.0 ? std::sqrt(lam[i]) : 0.0;
  return s.eigenvectors() * lam.cast<Cx>().asDiagonal() * s.eigenvectors().adjoint();
}

inline CMat ginibre(Eigen::Index rows, Eigen::Index cols, rng::Stream& g) {
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Cx(g.normal(), g.normal()) / std::sqrt(2.0);
  return m;
}

inline nlohmann::json entries_to_json(const CMat& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

inline CMat entries_from_json(const nlohmann::json& entries, Eigen::Index rows, Eigen::Index cols) {
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw ValidationError("matrix json entry count does not match declared shape");
  CMat m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = entries.at(k++);
      if (!e.is_array() || e.size() != 2) throw ValidationError("matrix entry must be [re, im]");
      m(r, c) = Cx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

}  // namespace qdetail

class DensityMatrix {
 public:
  explicit DensityMatrix(CMat entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw ValidationError("density matrix must be a nonempty square matrix");
    if (qdetail::max_abs(CMat(m_ - m_.adjoint())) > qdetail::kHermitianTol)
      throw ValidationError("density matrix is not Hermitian within 1e-10");
    CMat sym = 0.5 * (m_ + m_.adjoint());
    m_ = std::move(sym);
    if (qdetail::eigenvalues_of(m_).minCoeff() < qdetail::kEigenFloor)
      throw ValidationError("density matrix has an eigenvalue below -1e-10");
    if (std::abs(m_.trace().real() - 1.0) > qdetail::kTraceTol)
      throw ValidationError("density matrix trace differs from 1 by more than 1e-10");
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& entries() const { return m_; }

  static DensityMatrix pure(CVec psi) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0) throw ValidationError("pure state requires a nonzero vector");
    psi /= std::sqrt(n2);
    return DensityMatrix(CMat(psi * psi.adjoint()));
  }

  static DensityMatrix basis(int d, int k) {
    if (d < 1 || k < 0 || k >= d) throw DomainError("basis index outside dimension");
    CVec psi = CVec::Zero(d);
    psi[k] = 1.0;
    return pure(std::move(psi));
  }

  static DensityMatrix maximally_mixed(int d) {
    if (d < 1) throw DomainError("dimension must be positive");
    return DensityMatrix(CMat(CMat::Identity(d, d) / static_cast<double>(d)));
  }

  static DensityMatrix diagonal(const std::vector<double>& probs) {
    CMat m = CMat::Zero(static_cast<Eigen::Index>(probs.size()), static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
    return DensityMatrix(std::move(m));
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"dim", dim()}, {"entries", qdetail::entries_to_json(m_)}};
  }

  static DensityMatrix from_json(const nlohmann::json& j) {
    try {
      const int d = j.at("dim").get<int>();
      if (d <= 0) throw ValidationError("density matrix json has nonpositive dim");
      return DensityMatrix(qdetail::entries_from_json(j.at("entries"), d, d));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(std::string("bad density matrix json: ") + ex.what());
    }
  }

 private:
  CMat m_;
};

class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMat> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("channel needs at least one Kraus operator");
    const Eigen::Index rows = ops_[0].rows(), cols = ops_[0].cols();
    if (rows == 0 || cols == 0) throw ValidationError("Kraus operator must be nonempty");
    CMat sum = CMat::Zero(cols, cols);
    for (const CMat& k : ops_) {
      if (k.rows() != rows || k.cols() != cols)
        throw ValidationError("Kraus operators must share one shape");
      sum += k.adjoint() * k;
    }
    if (qdetail::max_abs(CMat(sum - CMat::Identity(cols, cols))) > qdetail::kKrausTol)
      throw ValidationError("Kraus operators do not sum to identity (sum K^dag K != I within 1e-10)");
  }

  int in_dim() const { return static_cast<int>(ops_[0].cols()); }
  int out_dim() const { return static_cast<int>(ops_[0].rows()); }
  const std::vector<CMat>& kraus_ops() const { return ops_; }

  static KrausChannel identity(int d) {
    if (d < 1) throw DomainError("dimension must be positive");
    return KrausChannel({CMat(CMat::Identity(d, d))});
  }

  // rho -> (1-lambda) rho + lambda I/d.
  static KrausChannel depolarizing(double lambda, int d = 2) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("depolarizing strength outside [0, 1]");
    if (d < 1) throw DomainError("dimension must be positive");
    std::vector<CMat> ops;
    ops.emplace_back(std::sqrt(1.0 - lambda) * CMat::Identity(d, d));
    const double w = std::sqrt(lambda / static_cast<double>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        CMat k = CMat::Zero(d, d);
        k(i, j) = w;
        ops.push_back(std::move(k));
      }
    return KrausChannel(std::move(ops));
  }

  static KrausChannel amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("damping strength outside [0, 1]");
    CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    return KrausChannel({std::move(k0), std::move(k1)});
  }

  nlohmann::json to_json() const {
    nlohmann::json ops = nlohmann::json::array();
    for (const CMat& k : ops_)
      ops.push_back(nlohmann::json{{"rows", k.rows()}, {"cols", k.cols()},
                                   {"entries", qdetail::entries_to_json(k)}});
    return nlohmann::json{{"kraus_ops", ops}};
  }

  static KrausChannel from_json(const nlohmann::json& j) {
    try {
      std::vector<CMat> ops;
      for (const auto& o : j.at("kraus_ops")) {
        const auto rows = o.at("rows").get<Eigen::Index>();
        const auto cols = o.at("cols").get<Eigen::Index>();
        if (rows <= 0 || cols <= 0) throw ValidationError("Kraus operator json has nonpositive shape");
        ops.push_back(qdetail::entries_from_json(o.at("entries"), rows, cols));
      }
      return KrausChannel(std::move(ops));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError(std::string("bad channel json: ") + ex.what());
    }
  }

 private:
  std::vector<CMat> ops_;
};

namespace qdetail {
inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("density matrix dimension mismatch");
}
}  // namespace qdetail

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return qdetail::eigenvalue_entropy_bits(qdetail::eigenvalues_of(rho.entries()));
}

// Unnormalized trace norm of the difference, range [0, 2] for states.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  qdetail::require_same_dim(rho, sigma);
  return qdetail::eigenvalues_of(CMat(rho.entries() - sigma.entries())).cwiseAbs().sum();
}

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  qdetail::require_same_dim(rho, sigma);
  const CMat sr = qdetail::psd_sqrt(rho.entries());
  CMat inner = sr * sigma.entries() * sr;
  CMat sym = 0.5 * (inner + inner.adjoint());
  const Eigen::VectorXd evals = qdetail::eigenvalues_of(sym);
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] > 0.0) root_sum += std::sqrt(evals[i]);
  const double f = root_sum * root_sum;
  return f > 1.0 ? 1.0 : f;
}

// D(rho || sigma) in bits; +infinity when supp(rho) leaks outside supp(sigma)
// (sigma eigenvalues below 1e-12 count as kernel, rho mass above 1e-10 on the
// kernel counts as a leak).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  qdetail::require_same_dim(rho, sigma);
  Eigen::SelfAdjointEigenSolver<CMat> s(sigma.entries());
  if (s.info() != Eigen::Success) throw Error("hermitian eigensolver did not converge");
  double tr_rho_log_sigma = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues().size(); ++i) {
    const double mu = s.eigenvalues()[i];
    const CVec v = s.eigenvectors().col(i);
    const double mass = v.dot(rho.entries() * v).real();
    if (mu < qdetail::kEntropyEigTol) {
      if (mass > qdetail::kSupportMassTol) return std::numeric_limits<double>::infinity();
    } else {
      tr_rho_log_sigma += mass * std::log2(mu);
    }
  }
  const double tr_rho_log_rho = -von_neumann_entropy(rho);
  return detail::snap_nonneg(tr_rho_log_rho - tr_rho_log_sigma);
}

inline DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho) {
  if (phi.in_dim() != rho.dim()) throw ValidationError("channel input dimension mismatch");
  CMat out = CMat::Zero(phi.out_dim(), phi.out_dim());
  for (const CMat& k : phi.kraus_ops()) out += k * rho.entries() * k.adjoint();
  return DensityMatrix(std::move(out));
}

// Data-processing residual D(rho||sigma) - D(phi rho||phi sigma); +infinity
// when the pre-image divergence is infinite (inequality trivially holds).
inline double check_dpi(const KrausChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double before = relative_entropy(rho, sigma);
  if (std::isinf(before)) return std::numeric_limits<double>::infinity();
  const double after = relative_entropy(apply_channel(phi, rho), apply_channel(phi, sigma));
  return before - after;
}

// Trace-norm contraction residual ||rho-sigma||_1 - ||phi rho - phi sigma||_1.
inline double check_contractivity(const KrausChannel& phi, const DensityMatrix& rho,
                                  const DensityMatrix& sigma) {
  return trace_distance(rho, sigma) -
         trace_distance(apply_channel(phi, rho), apply_channel(phi, sigma));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(qdetail::kron(a.entries(), b.entries()));
}

inline KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMat> ops;
  ops.reserve(a.kraus_ops().size() * b.kraus_ops().size());
  for (const CMat& ka : a.kraus_ops())
    for (const CMat& kb : b.kraus_ops()) ops.push_back(qdetail::kron(ka, kb));
  return KrausChannel(std::move(ops));
}

// compose(second, first) applies `first`, then `second`.
inline KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.out_dim() != second.in_dim())
    throw ValidationError("channel composition dimension mismatch");
  std::vector<CMat> ops;
  ops.reserve(first.kraus_ops().size() * second.kraus_ops().size());
  for (const CMat& k2 : second.kraus_ops())
    for (const CMat& k1 : first.kraus_ops()) ops.push_back(k2 * k1);
  return KrausChannel(std::move(ops));
}

// Ginibre construction G G^dag / Tr, full rank with probability 1.
inline DensityMatrix random_density(int d, rng::Stream& g) {
  if (d < 1) throw DomainError("dimension must be positive");
  const CMat gm = qdetail::ginibre(d, d, g);
  CMat m = gm * gm.adjoint();
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

inline DensityMatrix random_pure(int d, rng::Stream& g) {
  if (d < 1) throw DomainError("dimension must be positive");
  return DensityMatrix::pure(qdetail::ginibre(d, 1, g).col(0));
}

// Random CPTP channel from a Haar-ish isometry dilation: QR of a Ginibre
// matrix, Kraus operators are d_out-row slices of the isometry.
inline KrausChannel random_channel(int d_in, int d_out, int n_kraus, rng::Stream& g) {
  if (d_in < 1 || d_out < 1 || n_kraus < 1) throw DomainError("channel shape must be positive");
  const Eigen::Index big = static_cast<Eigen::Index>(d_out) * n_kraus;
  if (big < d_in) throw DomainError("isometry dilation needs d_out * n_kraus >= d_in");
  Eigen::HouseholderQR<CMat> qr(qdetail::ginibre(big, d_in, g));
  const CMat v = qr.householderQ() * CMat::Identity(big, d_in);
  std::vector<CMat> ops;
  ops.reserve(static_cast<std::size_t>(n_kraus));
  for (int i = 0; i < n_kraus; ++i)
    ops.emplace_back(v.middleRows(static_cast<Eigen::Index>(i) * d_out, d_out));
  return KrausChannel(std::move(ops));
}

}  // namespace wiretap
