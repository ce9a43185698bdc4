#pragma once

// Seeded random samples used by the verification suites and tests.

#include "symtoda/elements.hpp"

#include <cstdint>
#include <random>

namespace symtoda {

using Rng = std::mt19937_64;

/// Matrix with entries uniform in [lo, hi].
Matrix random_uniform(int n, Rng& rng, double lo = -1.0, double hi = 1.0);

/// Random traceless matrix with entries uniform in [-scale, scale].
AlgebraElement random_algebra(int n, Rng& rng, double scale = 1.0);

/// exp of a random upper triangular matrix (entries in [-scale, scale]),
/// determinant normalized to one.
ANElement random_an(int n, Rng& rng, double scale = 1.0);

/// Haar-distributed element of SO(n).
OrthogonalElement random_rotation(int n, Rng& rng);

/// random_an(...) times a random rotation.
GroupElement random_group(int n, Rng& rng, double scale = 1.0);

/// Positive diagonal with det 1, log-entries uniform in [-scale, scale].
Vector random_positive_diagonal(int n, Rng& rng, double scale = 0.5);

}  // namespace symtoda
