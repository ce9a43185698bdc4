#pragma once

// Sampled factorization-flow trajectories with per-sample diagnostics.

#include "symtoda/actionangle.hpp"
#include "symtoda/dynamics.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace symtoda {

struct TrajectorySample {
  double t = 0.0;
  ANElement b;
  double hamiltonian = 0.0;
  Vector actions;
  /// Empty when the angle chart degenerates at this sample.
  std::optional<AngleData> angles;
};

class Trajectory {
 public:
  /// Times must be strictly increasing.
  explicit Trajectory(std::vector<TrajectorySample> samples);

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  int n() const { return samples_.front().b.n(); }

  /// Header: t, b_i_j (row-major upper triangle, 1-based), H, h_1..h_n,
  /// r_1..r_n, theta_a_b for a < b. Degenerate angles are written as nan.
  void write_csv(std::ostream& os) const;

  double max_hamiltonian_drift() const;
  /// Largest relative change of any action from the first sample.
  double max_action_drift() const;
  /// Largest deviation of θ from its least-squares line over samples with
  /// resolved angles; nullopt if fewer than three such samples.
  std::optional<double> theta_fit_residual() const;
  int degenerate_samples() const;

 private:
  std::vector<TrajectorySample> samples_;
};

/// Samples the flow at `steps + 1` equally spaced times in [t0, t1] (a single
/// sample when t0 == t1), stepping sequentially. Throws DegeneracyError when
/// b0 is not generic.
Trajectory simulate(const ReflectionHamiltonian& h, const ANElement& b0, double t0, double t1,
                    int steps);

}  // namespace symtoda
