#pragma once

// Weyl group S_n, double Bruhat cells B₊ ∩ B₋uB₋ and the symplectic-leaf
// dimension bookkeeping for the Poisson structure on AN.

#include "symtoda/elements.hpp"
#include "symtoda/report.hpp"
#include "symtoda/sampling.hpp"

#include <string>
#include <vector>

namespace symtoda {

/// Permutation in one-line notation (0-based): the permutation matrix has
/// its 1 in row i at column perm[i].
class WeylElement {
 public:
  /// Throws InputError unless `perm` is a bijection of {0, ..., n-1}.
  explicit WeylElement(std::vector<int> perm);

  static WeylElement identity(int n);
  /// The n-cycle with one-line notation (2, 3, ..., n, 1).
  static WeylElement coxeter(int n);
  /// Simple reflection s_i swapping i and i+1.
  static WeylElement simple_reflection(int n, int i);

  int n() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  Matrix matrix() const;
  int cycle_count() const;
  /// 1-based one-line notation, e.g. "2 3 4 1".
  std::string to_string() const;

  /// Word i_1 ... i_l with u = s_{i_1} ... s_{i_l} as matrices, l = length.
  std::vector<int> reduced_word() const;

  friend bool operator==(const WeylElement&, const WeylElement&) = default;

 private:
  std::vector<int> perm_;
};

/// Every element of S_n in lexicographic order.
std::vector<WeylElement> all_permutations(int n);

/// Inversion count.
int length(const WeylElement& u);

/// dim ker(u - id) on the traceless diagonal Cartan: #cycles - 1.
int torus_fixed_dimension(const WeylElement& u);

/// l(u) + rank(u - id)|_h = l(u) + (n-1) - torus_fixed_dimension(u).
/// Throws std::logic_error if the result is odd.
int predicted_leaf_dimension(const WeylElement& u);

/// The u with x in B₋uB₋, read off the ranks r(i,j) of the upper-right
/// corners (rows 1..i, columns j..n): u has a 1 at (i,j) iff
/// r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1) = 1. Throws NumericalError if a
/// corner rank is ambiguous at the 1e-8 relative threshold.
WeylElement bruhat_cell_of(const Matrix& x);
WeylElement bruhat_cell(const ANElement& b);

/// a · x_{i_1}(t_1) ··· x_{i_l}(t_l) for a reduced word of u, with
/// x_i(t) = I + t E_{i,i+1}, t uniform in [0.5, 2] and a random positive
/// diagonal: a point of AN ∩ B₋uB₋.
ANElement sample_cell_point(const WeylElement& u, Rng& rng);

/// bivector_rank(b, AN) against predicted_leaf_dimension(bruhat_cell(b)).
Report verify_leaf_dimension(const ANElement& b);

}  // namespace symtoda
