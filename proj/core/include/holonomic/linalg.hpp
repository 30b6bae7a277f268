#pragma once

#include <Eigen/Dense>

namespace holonomic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Spectral norm (largest singular value). Closed forms for n <= 3, a cyclic
/// Jacobi sweep on MᵀM otherwise. Throws kInvalidInput on non-finite entries.
double operator_norm(const Matrix& m);

/// Largest singular value together with a unit right singular vector x, so
/// that ‖m x‖ = σ_max.
struct SingularPair {
  double value = 0.0;
  Vector right;
};
SingularPair top_singular_pair(const Matrix& m);

/// Eigen-decomposition of a small symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are returned in descending order, eigenvectors as columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};
SymmetricEigen jacobi_eigen(const Matrix& symmetric);

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_entry_distance(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

Matrix planar_rotation(double theta);

/// Block-diagonal matrix with a 2×2 rotation per angle.
Matrix block_rotation(std::initializer_list<double> angles);

}  // namespace holonomic
