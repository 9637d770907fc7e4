#include "jlp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "jlp/errors.hpp"

namespace jlp {
namespace linalg {

double rank_tolerance(const Vector& singular_values) {
  const double largest =
      singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return std::max(1e-10 * largest, 1e-12);
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

void check_input(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    fail(ErrorCode::bad_argument, "svd: matrix must be non-empty");
  }
  if (!m.allFinite()) {
    fail(ErrorCode::bad_argument, "svd: matrix has non-finite entries");
  }
}

// Symmetric path: eigendecompose Q diag(lambda) Q^T, then fold the
// eigenvalue signs into U so that singular values are |lambda| and the
// factors are sorted descending.
SvdFactors svd_symmetric(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::numeric_failure,
         "svd: self-adjoint eigendecomposition did not converge");
  }
  const Vector eigenvalues = solver.eigenvalues();
  const Matrix& q = solver.eigenvectors();
  const Eigen::Index n = m.rows();

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(eigenvalues[a]) > std::abs(eigenvalues[b]);
  });

  SvdFactors factors;
  factors.u.resize(n, n);
  factors.v.resize(n, n);
  factors.singular_values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<size_t>(i)];
    const double lambda = eigenvalues[src];
    factors.singular_values[i] = std::abs(lambda);
    factors.v.col(i) = q.col(src);
    factors.u.col(i) = lambda < 0.0 ? (-q.col(src)).eval() : q.col(src);
  }
  return factors;
}

SvdFactors svd_general(const Matrix& m) {
  SvdFactors factors;
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<Matrix> solver(m,
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
    factors.u = solver.matrixU();
    factors.singular_values = solver.singularValues();
    factors.v = solver.matrixV();
  } else {
    Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
      fail(ErrorCode::numeric_failure, "svd: BDCSVD did not converge");
    }
    factors.u = solver.matrixU();
    factors.singular_values = solver.singularValues();
    factors.v = solver.matrixV();
  }
  return factors;
}

}  // namespace

SvdFactors svd(const Matrix& m) {
  check_input(m);
  SvdFactors factors =
      is_symmetric(m) ? svd_symmetric(m) : svd_general(m);
  const double tol = rank_tolerance(factors.singular_values);
  factors.rank = 0;
  for (Eigen::Index i = 0; i < factors.singular_values.size(); ++i) {
    if (factors.singular_values[i] > tol) ++factors.rank;
  }
  return factors;
}

Matrix pseudo_inverse(const SvdFactors& factors) {
  const double tol = rank_tolerance(factors.singular_values);
  Vector inverted = Vector::Zero(factors.singular_values.size());
  for (Eigen::Index i = 0; i < factors.singular_values.size(); ++i) {
    if (factors.singular_values[i] > tol) {
      inverted[i] = 1.0 / factors.singular_values[i];
    }
  }
  return factors.v * inverted.asDiagonal() * factors.u.transpose();
}

Matrix pseudo_inverse(const Matrix& m) { return pseudo_inverse(svd(m)); }

double pseudo_determinant(const SvdFactors& factors) {
  return std::exp(log_pseudo_determinant(factors));
}

double pseudo_determinant(const Matrix& m) {
  return pseudo_determinant(svd(m));
}

double log_pseudo_determinant(const SvdFactors& factors) {
  const double tol = rank_tolerance(factors.singular_values);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < factors.singular_values.size(); ++i) {
    if (factors.singular_values[i] > tol) {
      log_det += std::log(factors.singular_values[i]);
    }
  }
  return log_det;
}

double log_pseudo_determinant(const Matrix& m) {
  return log_pseudo_determinant(svd(m));
}

}  // namespace linalg
}  // namespace jlp
