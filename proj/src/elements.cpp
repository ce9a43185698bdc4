#include "symtoda/elements.hpp"

#include "symtoda/errors.hpp"

#include <cmath>
#include <string>

namespace symtoda {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw InputError(std::string(what) + ": expected a square matrix of size >= 2, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw InputError(std::string(what) + ": non-finite entries");
}

}  // namespace

AlgebraElement::AlgebraElement(Matrix m) : m_(std::move(m)) {
  require_square(m_, "AlgebraElement");
  if (std::abs(m_.trace()) > 1e-12 * static_cast<double>(m_.rows())) {
    throw InputError("AlgebraElement: trace " + std::to_string(m_.trace()) +
                     " is not zero");
  }
}

AlgebraElement AlgebraElement::project(const Matrix& m) {
  require_square(m, "AlgebraElement");
  return AlgebraElement(traceless(m), Unchecked{});
}

GroupElement::GroupElement(Matrix m) : m_(std::move(m)) {
  require_square(m_, "GroupElement");
  const double det = m_.determinant();
  if (!(det > 0.0) || std::abs(det - 1.0) >= 1e-6) {
    throw InputError("GroupElement: determinant " + std::to_string(det) +
                     " is not 1");
  }
  m_ /= std::pow(det, 1.0 / static_cast<double>(m_.rows()));
}

Matrix GroupElement::inverse() const { return m_.inverse(); }

bool is_an_matrix(const Matrix& m) {
  if (m.rows() != m.cols() || !is_upper_triangular(m)) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (!(m(i, i) > 0.0)) return false;
  return true;
}

ANElement::ANElement(Matrix m) : GroupElement(std::move(m)) {
  if (!is_an_matrix(m_)) {
    throw InputError(
        "ANElement: expected upper triangular with positive diagonal");
  }
}

ANElement ANElement::identity(int n) { return ANElement(Matrix::Identity(n, n)); }

OrthogonalElement::OrthogonalElement(Matrix m) : GroupElement(std::move(m)) {
  const auto n = m_.rows();
  const double residual = max_abs(m_.transpose() * m_ - Matrix::Identity(n, n));
  if (residual > 1e-9) {
    throw InputError("OrthogonalElement: orthogonality residual " +
                     std::to_string(residual));
  }
}

}  // namespace symtoda
