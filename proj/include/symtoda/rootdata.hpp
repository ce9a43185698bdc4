#pragma once

// Structure data of sl_n(R): positive roots, Chevalley generators, the trace
// pairing, the standard r-matrix and its algebraic identities.
//
// Everything in this header is specific to type A. Indices are 0-based: the
// root e_i - e_j is Root{i, j} with i < j.

#include "symtoda/elements.hpp"
#include "symtoda/report.hpp"

#include <utility>
#include <vector>

namespace symtoda {

struct Root {
  int i = 0;
  int j = 0;
  friend bool operator==(const Root&, const Root&) = default;
};

class RootSystemA {
 public:
  /// Throws InputError for n < 2.
  explicit RootSystemA(int n);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  /// Lexicographic in (i, j); n(n-1)/2 entries.
  const std::vector<Root>& positive_roots() const& { return roots_; }
  // By value on temporaries, so `for (auto& a : RootSystemA(n).positive_roots())` is safe.
  std::vector<Root> positive_roots() && { return std::move(roots_); }
  bool contains(const Root& r) const;

 private:
  int n_;
  std::vector<Root> roots_;
};

enum class RootSign { Positive, Negative };

/// E_ij for the positive sign, E_ji for the negative one.
AlgebraElement chevalley_generator(int n, Root root, RootSign sign);

/// Y_a = E_{-a} - E_a, an element of so(n).
AlgebraElement y_generator(int n, Root root);

/// Trace form tr(XY); a fixed multiple of the Killing form with
/// <E_a, E_{-a}> = 1.
double killing_pairing(const AlgebraElement& x, const AlgebraElement& y);

/// Cartan involution X -> -Xᵀ.
AlgebraElement involution_on_algebra(const AlgebraElement& x);

/// Element of gl_n ⊗ gl_n in the matrix-unit basis: coefficient(p, q) is
/// the coefficient of E_p ⊗ E_q, with p = i*n + j for E_ij.
///
/// Wedge convention throughout: a ∧ b = a ⊗ b - b ⊗ a.
class RTensor {
 public:
  explicit RTensor(int n);
  RTensor(int n, Matrix coefficients);

  int n() const { return n_; }
  const Matrix& coefficients() const { return c_; }
  double operator()(int i, int j, int k, int l) const;

  /// Adds c * (x ⊗ y).
  void add_product(const Matrix& x, const Matrix& y, double c = 1.0);
  /// Adds c * (x ∧ y).
  void add_wedge(const Matrix& x, const Matrix& y, double c = 1.0);

  /// Swap of tensor factors.
  RTensor flip() const;
  /// (a ⊗ b) -> (f(a) ⊗ g(b)) for linear maps given as n^2 x n^2 matrices
  /// acting on row-major vectorizations.
  RTensor transformed(const Matrix& left, const Matrix& right) const;

  double norm() const { return c_.norm(); }
  /// Norm of the contraction with the identity in each slot; zero for
  /// tensors in sl_n ⊗ sl_n.
  double trace_leakage() const;

  RTensor operator+(const RTensor& o) const;
  RTensor operator-(const RTensor& o) const;
  RTensor operator*(double s) const;

 private:
  int n_;
  Matrix c_;
};

/// r = Σ_{a>0} E_a ∧ E_{-a}.
RTensor standard_r_matrix(int n);

/// Σ_a E_a ∧ Y_a, the same tensor written through the so(n) generators.
RTensor r_matrix_via_y(int n);

/// r = ½ Σ h_i ⊗ h^i + Σ_{a>0} E_a ⊗ E_{-a}, with {h_i} orthonormal in the
/// traceless diagonal subalgebra under the trace form.
RTensor quasitriangular_r_matrix(int n);

/// Dense [r12,r13] + [r12,r23] + [r13,r23] in gl_n^{⊗3}; its Frobenius norm.
double cybe_residual(const RTensor& r);

/// Norm of the components of r outside b₊ ⊗ b₋.
double borel_membership_residual(const RTensor& r);

/// Linear map of X -> σ(X) = -Xᵀ on row-major vectorizations.
Matrix involution_operator(int n);

/// Residuals of σ⊗σ(r) = -r and both sides of the classical reflection
/// equation (σ⊗σ)(r) + r = (σ⊗1)r + (1⊗σ)r; each side is checked to vanish
/// individually. The difference form (σ⊗1)r - (1⊗σ)r is reported as a note.
Report verify_r_identities(int n, double tol = 1e-12, double cybe_tol = 1e-12);

}  // namespace symtoda
