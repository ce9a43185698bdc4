#include "symtoda/trajectory.hpp"

#include "symtoda/errors.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace symtoda {

Trajectory::Trajectory(std::vector<TrajectorySample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InputError("Trajectory: no samples");
  for (std::size_t s = 1; s < samples_.size(); ++s) {
    if (!(samples_[s].t > samples_[s - 1].t)) {
      throw InputError("Trajectory: times must be strictly increasing");
    }
  }
}

void Trajectory::write_csv(std::ostream& os) const {
  const int n = this->n();
  os << "t";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) os << ",b_" << i + 1 << "_" << j + 1;
  os << ",H";
  for (int a = 0; a < n; ++a) os << ",h_" << a + 1;
  for (int a = 0; a < n; ++a) os << ",r_" << a + 1;
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) os << ",theta_" << a + 1 << "_" << c + 1;
  os << "\n";

  const auto old_precision = os.precision(17);
  for (const auto& s : samples_) {
    os << s.t;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) os << "," << s.b.matrix()(i, j);
    os << "," << s.hamiltonian;
    for (int a = 0; a < n; ++a) os << "," << s.actions(a);
    for (int a = 0; a < n; ++a) {
      os << ",";
      if (s.angles) os << s.angles->r(a); else os << "nan";
    }
    for (int a = 0; a < n; ++a)
      for (int c = a + 1; c < n; ++c) {
        os << ",";
        if (s.angles) os << s.angles->theta(a, c); else os << "nan";
      }
    os << "\n";
  }
  os.precision(old_precision);
}

double Trajectory::max_hamiltonian_drift() const {
  double worst = 0.0;
  const double h0 = samples_.front().hamiltonian;
  for (const auto& s : samples_) worst = std::max(worst, std::abs(s.hamiltonian - h0));
  return worst;
}

double Trajectory::max_action_drift() const {
  double worst = 0.0;
  const Vector& a0 = samples_.front().actions;
  for (const auto& s : samples_)
    worst = std::max(worst, ((s.actions - a0).cwiseAbs().array() / a0.array()).maxCoeff());
  return worst;
}

std::optional<double> Trajectory::theta_fit_residual() const {
  std::vector<const TrajectorySample*> resolved;
  for (const auto& s : samples_)
    if (s.angles) resolved.push_back(&s);
  if (resolved.size() < 3) return std::nullopt;
  const int n = this->n();
  const double k = static_cast<double>(resolved.size());
  double t_mean = 0.0;
  for (auto* s : resolved) t_mean += s->t;
  t_mean /= k;
  double stt = 0.0;
  for (auto* s : resolved) stt += (s->t - t_mean) * (s->t - t_mean);

  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) {
      double y_mean = 0.0;
      for (auto* s : resolved) y_mean += s->angles->theta(a, c);
      y_mean /= k;
      double sty = 0.0;
      for (auto* s : resolved) sty += (s->t - t_mean) * (s->angles->theta(a, c) - y_mean);
      const double slope = sty / stt;
      for (auto* s : resolved) {
        const double fit = y_mean + slope * (s->t - t_mean);
        worst = std::max(worst, std::abs(s->angles->theta(a, c) - fit));
      }
    }
  return worst;
}

int Trajectory::degenerate_samples() const {
  int count = 0;
  for (const auto& s : samples_) count += s.angles ? 0 : 1;
  return count;
}

namespace {

TrajectorySample sample_at(const ReflectionHamiltonian& h, double t, const ANElement& b) {
  TrajectorySample s{t, b, hamiltonian_value(h, b), actions_of(b), std::nullopt};
  try {
    s.angles = angle_variables(b);
  } catch (const DegeneracyError&) {
  }
  return s;
}

}  // namespace

Trajectory simulate(const ReflectionHamiltonian& h, const ANElement& b0, double t0, double t1,
                    int steps) {
  h.require_dimension(b0.n());
  if (steps < 1) throw InputError("simulate: steps must be >= 1");
  if (!(t1 >= t0)) throw InputError("simulate: need t1 >= t0");
  // Genericity of the initial point is a precondition.
  spectral_decomposition(reflection_monodromy(b0).matrix());
  angle_variables(b0);

  ANElement start = factorization_flow(h, b0, t0);
  std::vector<TrajectorySample> samples{sample_at(h, t0, start)};
  if (t1 > t0) {
    const double dt = (t1 - t0) / steps;
    ANElement b = start;
    for (int s = 1; s <= steps; ++s) {
      b = factorization_flow(h, b, dt);
      samples.push_back(sample_at(h, t0 + s * dt, b));
    }
  }
  return Trajectory(std::move(samples));
}

}  // namespace symtoda
