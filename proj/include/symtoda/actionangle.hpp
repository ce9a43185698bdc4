#pragma once

// Action variables (the spectrum of b bᵀ), angle variables from eigenprojector
// pairings with the spherical vector, and the level-set translation that
// realizes the superintegrable dimension count.

#include "symtoda/dynamics.hpp"
#include "symtoda/elements.hpp"
#include "symtoda/report.hpp"

#include <vector>

namespace symtoda {

/// Relative eigenvalue gap and r_a floor below which a point is non-generic.
inline constexpr double kGenericityThreshold = 1e-8;

struct SpectralData {
  /// Descending, positive.
  Vector eigenvalues;
  /// Unit eigenvectors as columns, sign fixed so the largest-magnitude
  /// component is positive.
  Matrix eigenvectors;

  int n() const { return static_cast<int>(eigenvalues.size()); }
  /// Q_a = v_a v_aᵀ.
  Matrix projector(int a) const;
};

/// Throws InputError if M is not SPD and DegeneracyError if two eigenvalues
/// are closer than kGenericityThreshold relative to the largest one.
SpectralData spectral_decomposition(const Matrix& m);

struct AngleData {
  /// r_a >= 0 with Σ r_a = 1, ordered like the descending eigenvalues.
  Vector r;
  /// θ(a, b) = log(r_a / r_b) for a < b; zero elsewhere.
  Matrix theta;
};

/// The identity matrix: the SO(n)-fixed vector of Sym²R^n under S -> k S kᵀ.
Matrix spherical_vector(int n);

/// X·S = X S + S Xᵀ, the algebra action on Sym²R^n.
Matrix sym2_action(const Matrix& x, const Matrix& s);

/// Contravariance of the trace form on Sym²R^n: <τ(X)·S, S'> = <S, X·S'>
/// with τ(X) = Xᵀ, sampled over random X, S, S'.
Report shapovalov_check(int n, int samples, unsigned long long seed, double tol = 1e-10);

/// r_a = (v_a · e_n)², the pairing of the lowest weight vector e_n e_nᵀ with
/// Q_a applied to the spherical vector. Throws DegeneracyError when some
/// r_a falls below kGenericityThreshold.
AngleData angle_variables(const ANElement& b);

/// The same r_a computed in the explicit Sym²R^n representation: eigenspaces
/// of S -> M S M, projection of the spherical vector, pairing with e_n e_nᵀ.
Vector angle_variables_sym2(const ANElement& b);

struct AngleLinearityResult {
  Report report;
  /// Fitted slope of θ(a, b) for a < b.
  Matrix slopes;
  /// Measured rate constant slope / (h_a^k - h_b^k), for single-term H.
  double delta = 0.0;
  /// Measured slope / (f(h_a) - f(h_b)) with f the gradient eigenvalue.
  double gradient_rate = 0.0;
};

/// Least-squares lines through t -> θ(a, b)(t) along factorization_flow;
/// checks linearity, the shared proportionality constant across pairs, and
/// agreement with the eigenvalues of ∇⁺H(b0).
AngleLinearityResult verify_angle_linearity(const ReflectionHamiltonian& h,
                                            const ANElement& b0,
                                            const std::vector<double>& times,
                                            double fit_tol = 1e-6,
                                            double ratio_tol = 1e-6);

/// Largest time such that every predicted angle drift stays within
/// `max_log_change` (the window where the angle chart is well resolved).
double angle_window(const ReflectionHamiltonian& h, const ANElement& b0,
                    double max_log_change = 8.0);

struct LevelSetTranslation {
  ANElement b_prime;
  /// Witness β in AN with βᵀβ = U D Uᵀ and b' b'ᵀ = β (b bᵀ) β^{-1}.
  ANElement beta;
  double symmetry_residual = 0.0;
  double witness_residual = 0.0;
  double spectrum_residual = 0.0;
};

/// For b bᵀ = U Λ Uᵀ and positive diagonal D (det 1, ordered like the
/// descending eigenvalues): P = U D Uᵀ = βᵀβ, b' = reverse_cholesky(β b bᵀ β^{-1}).
LevelSetTranslation level_set_translate(const ANElement& b, const Vector& d);

struct IntersectionDimension {
  int dimension = 0;
  int orbit_rank = 0;
  int leaf_rank = 0;
  int sum_rank = 0;
  double gap_decades = 0.0;
};

/// dim(T_M O ∩ T_M T(AN)) at M = b bᵀ, with T_M O = {ξM - Mξ} and
/// T_M T(AN) = {XM + MXᵀ}, ξ, X ranging over a ⊕ n. Throws NumericalError
/// when a singular value sits within a decade of the 1e-8 threshold.
IntersectionDimension orbit_leaf_intersection(const ANElement& b);
int orbit_leaf_intersection_dim(const ANElement& b);

}  // namespace symtoda
