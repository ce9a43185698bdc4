#pragma once

// Reflection Hamiltonians H(g) = Σ c_k tr((g gᵀ)^k), their gradients, the
// factorization flow on G/K ≅ AN and an independent Runge-Kutta integrator of
// the Hamiltonian vector field used to cross-check it.

#include "symtoda/elements.hpp"
#include "symtoda/poisson.hpp"
#include "symtoda/report.hpp"
#include "symtoda/symspace.hpp"

#include <map>
#include <string>

namespace symtoda {

class ReflectionHamiltonian {
 public:
  /// Coefficients c_k for k >= 1; at least one must be nonzero. The
  /// closed-form gradients are checked against finite differences once here.
  explicit ReflectionHamiltonian(std::map<int, double> coefficients);

  /// H_k = tr((g gᵀ)^k) scaled by c.
  static ReflectionHamiltonian power(int k, double c = 1.0);

  const std::map<int, double>& coefficients() const { return coefficients_; }
  int max_degree() const { return coefficients_.rbegin()->first; }
  std::string name() const;

  /// Throws InputError unless every degree k satisfies k < n.
  void require_dimension(int n) const;

  double value(const Matrix& g) const;
  /// Same function as a SmoothFunction with analytic gradient.
  SmoothFunction as_function() const;

  /// Eigenvalue of Σ 2k c_k M^k on an eigenvector of M with eigenvalue h.
  double spectral_function(double h) const;

 private:
  std::map<int, double> coefficients_;
};

/// Σ c_k tr((b bᵀ)^k).
double hamiltonian_value(const ReflectionHamiltonian& h, const GroupElement& g);

/// ∇⁻H(g) = traceless(Σ 2k c_k (gᵀg)^k) for Side::Left,
/// ∇⁺H(g) = traceless(Σ 2k c_k (g gᵀ)^k) for Side::Right;
/// <∇⁻H(g), X> = d/dt H(g e^{tX}) and <∇⁺H(g), X> = d/dt H(e^{tX} g).
AlgebraElement gradient(const ReflectionHamiltonian& h, const GroupElement& g, Side side);

struct FlowOptions {
  /// Split [0, t] so that every slice has |dt| ‖∇H‖₂ <= max_exponent.
  bool slice = true;
  double max_exponent = 2.0;
};

/// One application of g(t) = k₊(t)^{-1} b0 k₋(t), exp(t∇^±H(b0)) = b±(t) k±(t)^{-1};
/// returns the AN factor of g(t). Throws NumericalError (suggesting time
/// slicing) when the exponential overflows.
ANElement factorization_flow_step(const ReflectionHamiltonian& h, const ANElement& b0,
                                  double t);

/// Factorization flow for time t, composed from slices when requested.
ANElement factorization_flow(const ReflectionHamiltonian& h, const ANElement& b0, double t,
                             const FlowOptions& options = {});

/// Classical fourth-order Runge-Kutta on b' = X_H(b), the Hamiltonian vector
/// field of H for the bracket in poisson.hpp, with step at most dt <= 1e-2.
/// Throws NumericalError if det drifts by more than 1e-6.
ANElement vector_field_flow(const ReflectionHamiltonian& h, const ANElement& b0, double t,
                            double dt = 1e-3);

/// λ such that vector_field_flow(b0, t) ≈ factorization_flow(b0, λ t), from
/// the initial velocities of both flows.
double calibrate_time_constant(const ReflectionHamiltonian& h, const ANElement& b0);

/// Sorted (descending) eigenvalues of b bᵀ.
Vector actions_of(const ANElement& b);

/// Φ^a_t ∘ Φ^b_t (b0) versus Φ^b_t ∘ Φ^a_t (b0).
Report verify_flow_commutativity(const ReflectionHamiltonian& ha,
                                 const ReflectionHamiltonian& hb, const ANElement& b0,
                                 double t, double tol = 1e-7);

}  // namespace symtoda
