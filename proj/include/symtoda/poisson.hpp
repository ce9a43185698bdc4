#pragma once

// The standard Poisson-Lie structure η = r^R - r^L on SL_n(R).
//
// Conventions:
//  * X^L f(g) = d/dt f(g e^{tX}) and X^R f(g) = d/dt f(e^{tX} g).
//  * In the left trivialization η(g) = Ad_{g^{-1}}(r) - r.
//  * {f1, f2}(g) = Σ η^{pq}(g) (E_p^L f1)(g) (E_q^L f2)(g), no factor ½.

#include "symtoda/elements.hpp"
#include "symtoda/report.hpp"
#include "symtoda/rootdata.hpp"

#include <functional>
#include <optional>
#include <string>

namespace symtoda {

/// A real function on n x n matrices with an optional analytic Euclidean
/// gradient (∂f/∂g_ij). Without one, directional derivatives come from
/// central differences along one-parameter subgroups with step kStep.
class SmoothFunction {
 public:
  using Evaluator = std::function<double(const Matrix&)>;
  using Gradient = std::function<Matrix(const Matrix&)>;

  static constexpr double kStep = 1e-6;

  SmoothFunction(std::string name, Evaluator value, std::optional<Gradient> gradient = {});

  double operator()(const Matrix& g) const { return value_(g); }
  const std::string& name() const { return name_; }
  bool has_gradient() const { return gradient_.has_value(); }
  /// Analytic Euclidean gradient; throws std::logic_error if absent.
  Matrix gradient(const Matrix& g) const;

  /// Matrix of E_ij^L f(g). Analytic when a gradient is available.
  Matrix left_derivative(const Matrix& g) const;
  /// Matrix of E_ij^R f(g).
  Matrix right_derivative(const Matrix& g) const;
  Matrix left_derivative_fd(const Matrix& g, double h = kStep) const;
  Matrix right_derivative_fd(const Matrix& g, double h = kStep) const;

  /// Same evaluator with the analytic gradient dropped.
  SmoothFunction finite_difference_only() const;
  SmoothFunction renamed(std::string name) const;

 private:
  std::string name_;
  Evaluator value_;
  std::optional<Gradient> gradient_;
};

/// g -> g_ij.
SmoothFunction coordinate_function(int i, int j);
/// g -> tr(g^m).
SmoothFunction trace_power(int m);
/// g -> tr((g gᵀ)^m), the reflection Hamiltonian H_m.
SmoothFunction reflection_trace(int m);
/// g -> Σ_ij a_ij g_ij + Σ (quadratic terms); analytic gradient.
SmoothFunction polynomial_function(std::string name, Matrix linear,
                                   std::vector<std::pair<Matrix, Matrix>> quadratic = {});

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b);
SmoothFunction operator*(double s, const SmoothFunction& f);
SmoothFunction product(const SmoothFunction& a, const SmoothFunction& b);

/// g -> f(g gᵀ).
SmoothFunction pullback_monodromy(const SmoothFunction& f);
/// g -> f(gᵀ).
SmoothFunction pullback_tau(const SmoothFunction& f);
/// g -> f(g^{-T}).
SmoothFunction pullback_sigma(const SmoothFunction& f);
/// f + τ*f, a τ-invariant function.
SmoothFunction tau_symmetrized(const SmoothFunction& f);

struct BivectorAtPoint {
  GroupElement base;
  /// Left-trivialized skew tensor in gl_n ⊗ gl_n.
  RTensor tensor;
};

BivectorAtPoint bivector_at(const GroupElement& g);

/// η(g) for an arbitrary invertible matrix; throws InputError if singular.
RTensor bivector_tensor(const Matrix& g);

double poisson_bracket(const SmoothFunction& f1, const SmoothFunction& f2,
                       const GroupElement& g);

/// The same bracket at an arbitrary invertible matrix (no det check), so it
/// can be differentiated along curves that leave SL_n.
double poisson_bracket(const SmoothFunction& f1, const SmoothFunction& f2, const Matrix& g);

/// g -> {f1, f2}(g), differentiated by finite differences only.
SmoothFunction bracket_function(const SmoothFunction& f1, const SmoothFunction& f2);

/// Cauchy-Schwarz bound ‖df1‖ ‖η‖ ‖df2‖ (at least 1), used to scale
/// relative tolerances.
double bracket_scale(const SmoothFunction& f1, const SmoothFunction& f2,
                     const GroupElement& g);

/// Tangent vector at g of the flow d/dt F = {F, H}.
Matrix hamiltonian_vector_field(const SmoothFunction& h, const Matrix& g);

enum class Chart { Full, AN };

/// Rank of the bracket Gram matrix on the chart's coordinate functions
/// (all n^2 entries, or the upper triangle without b_nn), threshold 1e-8
/// relative to the largest singular value.
int bivector_rank(const GroupElement& g, Chart chart);
RankInfo bivector_rank_info(const GroupElement& g, Chart chart);

/// Bivector components at b outside b₊ ∧ b₊.
Report verify_AN_tangency(const ANElement& b, double tol = 1e-10);

/// {f1∘σ, f2∘σ}(g) + {f1, f2}(σ(g)) = 0 with σ(g) = g^{-T}.
Report verify_sigma_antipoisson(const SmoothFunction& f1, const SmoothFunction& f2,
                                const GroupElement& g, double tol = 1e-6);

/// {H_j, H_k}(b) = 0 for H_m(g) = tr((g gᵀ)^m).
Report verify_KGK_commutativity(int j, int k, const ANElement& b, double tol = 1e-6);

}  // namespace symtoda
