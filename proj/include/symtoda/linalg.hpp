#pragma once

// Dense linear algebra vocabulary shared by all modules.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace symtoda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Matrix unit E_ij (0-based) of size n x n.
Matrix matrix_unit(int n, int i, int j);

/// Reversal permutation J (ones on the anti-diagonal).
Matrix reversal(int n);

/// S - (tr S / n) I.
Matrix traceless(const Matrix& m);

/// Matrix exponential by scaling and squaring with a Pade approximant.
/// Throws NumericalError if the result is not finite.
Matrix expm(const Matrix& m);

/// Largest absolute entry.
double max_abs(const Matrix& m);

bool is_upper_triangular(const Matrix& m);

struct RankInfo {
  int rank = 0;
  /// Singular values divided by the largest one, descending.
  std::vector<double> relative_singular_values;
  /// Smallest relative singular value counted as nonzero (1 when rank 0).
  double smallest_kept = 1.0;
  /// Largest relative singular value counted as zero (0 when full rank).
  double largest_dropped = 0.0;

  /// log10 separation between kept and dropped singular values.
  double gap_decades() const;
};

/// Numerical rank with a relative singular-value threshold. A matrix whose
/// largest singular value is below `absolute_floor` has rank 0.
RankInfo numeric_rank(const Matrix& m, double relative_tol = 1e-8,
                      double absolute_floor = 1e-13);

}  // namespace symtoda

namespace symtoda {

/// Row-major vectorization: index i*n + j holds m(i, j).
Vector vec(const Matrix& m);
/// Inverse of vec for square n x n matrices.
Matrix unvec(const Vector& v, int n);

}  // namespace symtoda
