#include "symtoda/linalg.hpp"

#include "symtoda/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace symtoda {

Matrix matrix_unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Matrix reversal(int n) {
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

Matrix traceless(const Matrix& m) {
  const auto n = m.rows();
  return m - (m.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
}

Matrix expm(const Matrix& m) {
  Matrix out = m.exp();
  if (!out.allFinite()) {
    throw NumericalError("matrix exponential overflowed (norm " +
                         std::to_string(m.norm()) + ")");
  }
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_upper_triangular(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < std::min(i, m.cols()); ++j)
      if (m(i, j) != 0.0) return false;
  return true;
}

double RankInfo::gap_decades() const {
  if (largest_dropped <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log10(smallest_kept / largest_dropped);
}

RankInfo numeric_rank(const Matrix& m, double relative_tol,
                      double absolute_floor) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  if (top <= absolute_floor) {
    info.relative_singular_values.assign(s.size(), 0.0);
    return info;
  }
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s(i) / top;
    info.relative_singular_values.push_back(rel);
    if (rel > relative_tol) {
      ++info.rank;
      info.smallest_kept = rel;
    } else {
      info.largest_dropped = std::max(info.largest_dropped, rel);
    }
  }
  return info;
}

}  // namespace symtoda

namespace symtoda {

Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Matrix unvec(const Vector& v, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

}  // namespace symtoda
