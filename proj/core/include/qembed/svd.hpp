#ifndef QEMBED_SVD_HPP
#define QEMBED_SVD_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qembed/matrix.hpp"

namespace qembed {

// Rank-k factorization of an m x n matrix: u (m x k), sigma (k, non-increasing,
// >= 0), v (n x k). u * diag(sigma) * v^T reconstructs the rank-k approximation.
// Columns of u and v are orthonormal. Sign convention: in every u column the
// entry of largest magnitude is non-negative (ties broken by earliest row), so
// factors are comparable across runs.
struct SvdFactors {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  std::size_t rank() const { return sigma.size(); }
};

// Best rank-k approximation in Frobenius norm. Small inputs (or large k) take
// an exact dense decomposition; large inputs with k << min(m,n) take a seeded
// randomized range finder with two power iterations. Deterministic for a fixed
// input and seed.
SvdFactors truncated_svd(const Matrix& m, std::size_t k, std::uint64_t seed = 0);

// || m - u * diag(sigma) * v^T ||_F
double frobenius_error(const Matrix& m, const SvdFactors& f);

double frobenius_norm(const Matrix& m);

}  // namespace qembed

#endif  // QEMBED_SVD_HPP
