#pragma once

#include <cstddef>
#include <vector>

namespace fluxmodes {

// Row-major dense matrix, just large enough for the small problems here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// Eigenvalues of a symmetric tridiagonal matrix (implicit-shift QL),
// ascending. `off` has size n-1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> off);

// Eigenvalues plus the first component of each (normalized) eigenvector,
// as needed by Golub-Welsch. Sorted ascending by eigenvalue.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> first_components;
};
TridiagonalEigen tridiagonal_eigen_first_row(std::vector<double> diag,
                                             std::vector<double> off);

// Cyclic Jacobi rotations for small dense symmetric matrices.
// Eigenvalues ascending; vectors (optional) stored column-wise.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymmetricEigen jacobi_symmetric_eigen(const Matrix& a, bool want_vectors = false);

// Cholesky factor L (lower) of a symmetric positive definite matrix.
// Throws std::runtime_error if the matrix is not positive definite.
Matrix cholesky(const Matrix& s);

// Solve L x = b and L^T x = b for lower-triangular L.
std::vector<double> solve_lower(const Matrix& l, std::vector<double> b);
std::vector<double> solve_lower_transposed(const Matrix& l, std::vector<double> b);

}  // namespace fluxmodes
