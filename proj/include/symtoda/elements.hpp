#pragma once

// Strongly typed matrices for the split real group SL_n(R), its Lie algebra,
// and the subgroups AN (upper triangular, positive diagonal) and K = SO(n).
// Each type validates on construction and exposes the underlying matrix
// read-only.

#include "symtoda/linalg.hpp"

namespace symtoda {

/// Traceless n x n real matrix, an element of sl_n(R).
class AlgebraElement {
 public:
  /// Throws InputError unless |tr X| <= 1e-12 * n.
  explicit AlgebraElement(Matrix m);

  /// Projects onto the traceless part instead of validating.
  static AlgebraElement project(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()); }

 private:
  struct Unchecked {};
  AlgebraElement(Matrix m, Unchecked) : m_(std::move(m)) {}
  Matrix m_;
};

/// Element of SL_n(R).
///
/// Determinants within 1e-6 of one are rescaled to exactly one by a scalar
/// factor; anything further away (or non-positive) is rejected.
class GroupElement {
 public:
  explicit GroupElement(Matrix m);

  const Matrix& matrix() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()); }
  Matrix inverse() const;

 protected:
  Matrix m_;
};

/// Upper triangular with positive diagonal and det 1.
class ANElement : public GroupElement {
 public:
  explicit ANElement(Matrix m);
  static ANElement identity(int n);
};

/// Special orthogonal matrix, QᵀQ = I within 1e-9, det +1.
class OrthogonalElement : public GroupElement {
 public:
  explicit OrthogonalElement(Matrix m);
};

/// True when `m` could be wrapped as an ANElement.
bool is_an_matrix(const Matrix& m);

}  // namespace symtoda
