#ifndef JLP_LINALG_HPP
#define JLP_LINALG_HPP

#include <Eigen/Dense>

namespace jlp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

// Singular value decomposition m = u * diag(singular_values) * v^T with
// orthonormal columns and singular values sorted in descending order.
// `rank` counts the singular values above the numeric-rank tolerance.
struct SvdFactors {
  Matrix u;
  Vector singular_values;
  Matrix v;
  Eigen::Index rank = 0;
};

// Numeric-rank cutoff: singular values at or below
// max(1e-10 * largest, 1e-12) are treated as zero.
double rank_tolerance(const Vector& singular_values);

bool is_symmetric(const Matrix& m, double tol = 1e-12);

// Computes the (thin) SVD. Symmetric inputs take the self-adjoint
// eigendecomposition path. Throws ErrorCode::numeric_failure if the
// underlying factorization does not converge and
// ErrorCode::bad_argument for empty or non-finite input.
SvdFactors svd(const Matrix& m);

// Moore-Penrose pseudo-inverse via the SVD, inverting only singular
// values above the rank tolerance.
Matrix pseudo_inverse(const SvdFactors& factors);
Matrix pseudo_inverse(const Matrix& m);

// Product of the non-zero singular values; 1 for the zero (rank-0)
// matrix by the empty-product convention.
double pseudo_determinant(const SvdFactors& factors);
double pseudo_determinant(const Matrix& m);

// Log of pseudo_determinant, accumulated in log space so products over
// many singular values cannot overflow.
double log_pseudo_determinant(const SvdFactors& factors);
double log_pseudo_determinant(const Matrix& m);

}  // namespace linalg
}  // namespace jlp

#endif  // JLP_LINALG_HPP
