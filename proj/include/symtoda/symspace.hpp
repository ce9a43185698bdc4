#pragma once

// The symmetric space G/K = SL_n(R)/SO(n): Cartan involution σ, the
// anti-automorphism τ, the reflection monodromy T(g) = g gᵀ, the Iwasawa
// factorization g = b k^{-1}, and its inverse on positive matrices.

#include "symtoda/elements.hpp"
#include "symtoda/poisson.hpp"
#include "symtoda/report.hpp"

namespace symtoda {

/// σ(g) = g^{-T}.
GroupElement sigma(const GroupElement& g);
/// τ(g) = σ(g^{-1}) = gᵀ.
GroupElement tau(const GroupElement& g);
/// T(g) = g σ(g^{-1}) = g gᵀ.
GroupElement reflection_monodromy(const GroupElement& g);

struct IwasawaFactors {
  ANElement b;
  OrthogonalElement k;
};

/// g = b k^{-1} with b in AN and k in SO(n).
///
/// Computed by the flip trick: a QR factorization of gᵀ J with J the
/// reversal permutation gives g = (J R1ᵀ J)(J Q1ᵀ), then signs are moved so
/// that the triangular factor has a positive diagonal.
IwasawaFactors iwasawa_factorize(const GroupElement& g);

/// b in AN with b bᵀ = M, for M symmetric positive definite with det 1.
ANElement reverse_cholesky(const Matrix& m);

/// β in AN with βᵀ β = M.
ANElement cholesky_an(const Matrix& m);

enum class Side { Left, Right };

/// d/dt T(g e^{tX}) (left) or d/dt T(e^{tX} g) (right) at t = 0, in closed form:
/// left g (X + Xᵀ) gᵀ, right X g gᵀ + g gᵀ Xᵀ.
Matrix T_differential(const GroupElement& g, const AlgebraElement& x, Side side);

/// Central finite difference of the same derivative, step h.
Matrix T_differential_fd(const GroupElement& g, const AlgebraElement& x, Side side,
                         double h = 1e-6);

/// {T*f1, T*f2}(g) = ½ {f1 + τ*f1, f2 + τ*f2}(T(g)).
Report verify_rmpb(const SmoothFunction& f1, const SmoothFunction& f2,
                   const GroupElement& g, double tol = 1e-6);

/// For τ-invariant f1, f2: {T*f1, T*f2}(g) = 2 {f1, f2}(T(g)).
/// Non-invariant inputs are rejected with InputError.
Report verify_factor2_corollary(const SmoothFunction& f1, const SmoothFunction& f2,
                                const GroupElement& g, double tol = 1e-6);

/// {τ*f1, τ*f2}(g) = {f1, f2}(τ(g)).
Report verify_tau_poisson(const SmoothFunction& f1, const SmoothFunction& f2,
                          const GroupElement& g, double tol = 1e-6);

/// The three pushforward identities for every positive root at g:
/// T_* Y^L = 0 (exact), T_* Y^R = Y^R - Y^L and T_* E^R = E^R + E_-^L, each
/// compared against finite differences.
Report verify_pushforwards(const GroupElement& g, double fd_tol = 1e-7);

}  // namespace symtoda
