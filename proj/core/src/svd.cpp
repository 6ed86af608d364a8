#include "qembed/svd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "qembed/errors.hpp"
#include "qembed/rng.hpp"

namespace qembed {

namespace {

using EMat = Eigen::MatrixXd;

// Randomized path kicks in only when the exact decomposition would dominate
// the fit: large matrices with a small target rank.
constexpr std::size_t kExactMinDim = 512;
constexpr std::size_t kOversample = 10;
constexpr int kPowerIterations = 2;

EMat to_eigen(const Matrix& m) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

Matrix from_eigen(const EMat& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      m.data(), e.rows(), e.cols()) = e;
  return m;
}

// Largest-magnitude entry of every u column made positive (ties: earliest
// row); v flips with u so the product is unchanged.
void apply_sign_convention(EMat& u, EMat& v) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double a = std::abs(u(i, j));
      if (a > best) {
        best = a;
        pivot = i;
      }
    }
    if (best > 0.0 && u(pivot, j) < 0.0) {
      u.col(j) = -u.col(j);
      v.col(j) = -v.col(j);
    }
  }
}

EMat thin_q(const EMat& y) {
  Eigen::HouseholderQR<EMat> qr(y);
  return qr.householderQ() * EMat::Identity(y.rows(), std::min(y.rows(), y.cols()));
}

SvdFactors pack(const EMat& u, const Eigen::VectorXd& s, const EMat& v, std::size_t k) {
  EMat uk = u.leftCols(static_cast<Eigen::Index>(k));
  EMat vk = v.leftCols(static_cast<Eigen::Index>(k));
  apply_sign_convention(uk, vk);
  SvdFactors f;
  f.u = from_eigen(uk);
  f.v = from_eigen(vk);
  f.sigma.assign(s.data(), s.data() + k);
  return f;
}

SvdFactors exact_svd(const EMat& a, std::size_t k) {
  if (std::min(a.rows(), a.cols()) <= 32) {
    Eigen::JacobiSVD<EMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return pack(svd.matrixU(), svd.singularValues(), svd.matrixV(), k);
  }
  Eigen::BDCSVD<EMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return pack(svd.matrixU(), svd.singularValues(), svd.matrixV(), k);
}

SvdFactors randomized_svd(const EMat& a, std::size_t k, std::uint64_t seed) {
  const auto m = a.rows();
  const auto n = a.cols();
  const auto l = static_cast<Eigen::Index>(
      std::min<std::size_t>(k + kOversample, static_cast<std::size_t>(std::min(m, n))));

  std::mt19937_64 gen(seed);
  EMat omega(n, l);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) omega(i, j) = rng::gaussian(gen);
  }

  EMat q = thin_q(a * omega);
  for (int it = 0; it < kPowerIterations; ++it) {
    q = thin_q(a.transpose() * q);
    q = thin_q(a * q);
  }

  const EMat b = q.transpose() * a;  // l x n
  Eigen::JacobiSVD<EMat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const EMat u = q * svd.matrixU();
  return pack(u, svd.singularValues(), svd.matrixV(), k);
}

}  // namespace

SvdFactors truncated_svd(const Matrix& m, std::size_t k, std::uint64_t seed) {
  if (m.rows() == 0 || m.cols() == 0) throw ConfigError("truncated_svd: empty matrix");
  const std::size_t min_dim = std::min(m.rows(), m.cols());
  if (k < 1 || k > min_dim) {
    throw ConfigError("truncated_svd: rank " + std::to_string(k) + " out of range [1, " +
                      std::to_string(min_dim) + "]");
  }
  if (!m.all_finite()) throw NumericError("truncated_svd: matrix has non-finite entries");

  const EMat a = to_eigen(m);
  if (min_dim > kExactMinDim && k <= min_dim / 4) return randomized_svd(a, k, seed);
  return exact_svd(a, k);
}

double frobenius_error(const Matrix& m, const SvdFactors& f) {
  const std::size_t k = f.rank();
  if (f.u.rows() != m.rows() || f.v.rows() != m.cols() || f.u.cols() != k || f.v.cols() != k) {
    throw ConfigError("frobenius_error: factor shapes do not match the matrix");
  }
  const EMat a = to_eigen(m);
  const EMat u = to_eigen(f.u);
  const EMat v = to_eigen(f.v);
  Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(f.sigma.data(), static_cast<Eigen::Index>(k));
  return (a - u * s.asDiagonal() * v.transpose()).norm();
}

double frobenius_norm(const Matrix& m) { return to_eigen(m).norm(); }

}  // namespace qembed
