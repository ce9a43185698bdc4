#include "symtoda/actionangle.hpp"

#include "symtoda/errors.hpp"
#include "symtoda/sampling.hpp"
#include "symtoda/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symtoda {

Matrix SpectralData::projector(int a) const {
  return eigenvectors.col(a) * eigenvectors.col(a).transpose();
}

SpectralData spectral_decomposition(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 2 || !m.allFinite()) {
    throw InputError("spectral_decomposition: expected a square matrix");
  }
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.transpose()) > 1e-9 * scale) {
    throw InputError("spectral_decomposition: matrix is not symmetric");
  }
  const int n = static_cast<int>(m.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("spectral_decomposition: eigensolver failed");

  SpectralData out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  if (!(out.eigenvalues(n - 1) > 0.0)) {
    throw InputError("spectral_decomposition: matrix is not positive definite");
  }
  const double top = out.eigenvalues(0);
  for (int a = 0; a + 1 < n; ++a) {
    const double gap = (out.eigenvalues(a) - out.eigenvalues(a + 1)) / top;
    if (gap < kGenericityThreshold) {
      throw DegeneracyError("spectral_decomposition: eigenvalues " + std::to_string(a) +
                            " and " + std::to_string(a + 1) +
                            " coincide (relative gap " + std::to_string(gap) + ")");
    }
  }
  for (int a = 0; a < n; ++a) {
    Eigen::Index idx = 0;
    out.eigenvectors.col(a).cwiseAbs().maxCoeff(&idx);
    if (out.eigenvectors(idx, a) < 0) out.eigenvectors.col(a) *= -1.0;
  }
  return out;
}

Matrix spherical_vector(int n) {
  if (n < 2) throw InputError("spherical_vector: n must be >= 2");
  return Matrix::Identity(n, n);
}

Matrix sym2_action(const Matrix& x, const Matrix& s) { return x * s + s * x.transpose(); }

Report shapovalov_check(int n, int samples, unsigned long long seed, double tol) {
  Report report("shapovalov", seed);
  Rng rng(seed);
  auto random_sym = [&] {
    const Matrix a = random_uniform(n, rng);
    return Matrix(a + a.transpose());
  };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix x = random_uniform(n, rng);
    const Matrix s1 = random_sym(), s2 = random_sym();
    const double lhs = (sym2_action(x.transpose(), s1) * s2).trace();
    const double rhs = (s1 * sym2_action(x, s2)).trace();
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  report.check("contravariance", worst, tol, {{"samples", samples}});
  return report;
}

AngleData angle_variables(const ANElement& b) {
  const int n = b.n();
  const SpectralData sd = spectral_decomposition(reflection_monodromy(b).matrix());
  AngleData out;
  out.r.resize(n);
  for (int a = 0; a < n; ++a) out.r(a) = std::pow(sd.eigenvectors(n - 1, a), 2);
  for (int a = 0; a < n; ++a) {
    if (out.r(a) < kGenericityThreshold) {
      throw DegeneracyError("angle_variables: r_" + std::to_string(a) + " = " +
                            std::to_string(out.r(a)) + " vanishes; angle chart breaks down");
    }
  }
  out.theta = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) out.theta(a, c) = std::log(out.r(a) / out.r(c));
  return out;
}

Vector angle_variables_sym2(const ANElement& b) {
  const int n = b.n();
  const Matrix m = reflection_monodromy(b).matrix();
  const SpectralData sd = spectral_decomposition(m);

  // Orthonormal basis of Sym²R^n for the trace form.
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix e = matrix_unit(n, i, j);
      if (i != j) e = ((e + e.transpose()) / std::sqrt(2.0)).eval();
      basis.push_back(e);
    }
  const int dim = static_cast<int>(basis.size());
  auto coords = [&](const Matrix& s) {
    Vector c(dim);
    for (int p = 0; p < dim; ++p) c(p) = (basis[p] * s).trace();
    return c;
  };
  Matrix op(dim, dim);
  for (int q = 0; q < dim; ++q) op.col(q) = coords(m * basis[q] * m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (op + op.transpose()));

  const Vector u = coords(spherical_vector(n));
  const Vector lowest = coords(matrix_unit(n, n - 1, n - 1));
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  Vector r(n);
  for (int a = 0; a < n; ++a) {
    const double target = sd.eigenvalues(a) * sd.eigenvalues(a);
    Vector projected = Vector::Zero(dim);
    for (int w = 0; w < dim; ++w) {
      if (std::abs(es.eigenvalues()(w) - target) <= 1e-9 * top) {
        const Vector v = es.eigenvectors().col(w);
        projected += v.dot(u) * v;
      }
    }
    r(a) = lowest.dot(projected);
  }
  return r;
}

// ---------------------------------------------------------------------------

double angle_window(const ReflectionHamiltonian& h, const ANElement& b0,
                    double max_log_change) {
  const Vector actions = actions_of(b0);
  double lo = h.spectral_function(actions(0)), hi = lo;
  for (Eigen::Index a = 0; a < actions.size(); ++a) {
    lo = std::min(lo, h.spectral_function(actions(a)));
    hi = std::max(hi, h.spectral_function(actions(a)));
  }
  const double spread = 2.0 * (hi - lo);
  if (!(spread > 0.0)) throw DegeneracyError("angle_window: flow does not move the angles");
  return max_log_change / spread;
}

AngleLinearityResult verify_angle_linearity(const ReflectionHamiltonian& h,
                                            const ANElement& b0,
                                            const std::vector<double>& times,
                                            double fit_tol, double ratio_tol) {
  if (times.size() < 3) throw InputError("verify_angle_linearity: need at least 3 times");
  const int n = b0.n();
  AngleLinearityResult out{Report("angle-linearity"), Matrix::Zero(n, n)};
  Report& report = out.report;

  const SpectralData sd0 = spectral_decomposition(reflection_monodromy(b0).matrix());
  const Matrix grad = gradient(h, b0, Side::Right).matrix();

  std::vector<Matrix> thetas;
  double sum_residual = 0.0;
  for (double t : times) {
    const AngleData ad = angle_variables(factorization_flow(h, b0, t));
    thetas.push_back(ad.theta);
    sum_residual = std::max(sum_residual, std::abs(ad.r.sum() - 1.0));
  }
  report.check("sum_r_equals_one", sum_residual, 1e-10);

  const double k = static_cast<double>(times.size());
  const double t_mean = std::accumulate(times.begin(), times.end(), 0.0) / k;
  double stt = 0.0;
  for (double t : times) stt += (t - t_mean) * (t - t_mean);

  double fit_residual = 0.0;
  std::vector<double> deltas, rates;
  const bool single_term = h.coefficients().size() == 1;
  const int degree = h.coefficients().begin()->first;
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) {
      double y_mean = 0.0;
      for (const auto& th : thetas) y_mean += th(a, c);
      y_mean /= k;
      double sty = 0.0;
      for (std::size_t s = 0; s < times.size(); ++s)
        sty += (times[s] - t_mean) * (thetas[s](a, c) - y_mean);
      const double slope = sty / stt;
      const double intercept = y_mean - slope * t_mean;
      for (std::size_t s = 0; s < times.size(); ++s)
        fit_residual = std::max(fit_residual,
                                std::abs(thetas[s](a, c) - intercept - slope * times[s]));
      out.slopes(a, c) = slope;

      const double fa = sd0.eigenvectors.col(a).dot(grad * sd0.eigenvectors.col(a));
      const double fc = sd0.eigenvectors.col(c).dot(grad * sd0.eigenvectors.col(c));
      rates.push_back(slope / (fa - fc));
      if (single_term) {
        deltas.push_back(slope / (std::pow(sd0.eigenvalues(a), degree) -
                                  std::pow(sd0.eigenvalues(c), degree)));
      }
    }
  report.check("linear_fit", fit_residual, fit_tol);

  auto spread = [](const std::vector<double>& xs) {
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(x - mean) / std::abs(mean));
    return std::pair{mean, worst};
  };
  const auto [rate, rate_spread] = spread(rates);
  out.gradient_rate = rate;
  report.check("slope_ratios_match_gradient_eigenvalues", rate_spread, ratio_tol,
               {{"rate", rate}});
  // r_a is the square of an eigenvector component that grows like e^{t f(h_a)}.
  report.check("rate_is_twice_gradient_eigenvalue", std::abs(rate - 2.0) / 2.0, ratio_tol);
  if (single_term) {
    const auto [delta, delta_spread] = spread(deltas);
    out.delta = delta;
    report.check("slope_ratios_match_power_differences", delta_spread, ratio_tol,
                 {{"delta", delta}, {"k", degree}});
    report.note("delta", delta);
  }
  report.note("evolution_sign", rate > 0 ? 1 : -1);
  report.note("lowest_weight_vector", "e_n e_n^T");
  return out;
}

// ---------------------------------------------------------------------------

LevelSetTranslation level_set_translate(const ANElement& b, const Vector& d) {
  const int n = b.n();
  if (d.size() != n) throw InputError("level_set_translate: D has the wrong size");
  if (!(d.minCoeff() > 0.0)) throw InputError("level_set_translate: D must be positive");
  if (std::abs(d.prod() - 1.0) > 1e-9) {
    throw InputError("level_set_translate: det D = " + std::to_string(d.prod()) + " != 1");
  }
  const Matrix m = reflection_monodromy(b).matrix();
  const SpectralData sd = spectral_decomposition(m);
  if ((d.array() == 1.0).all()) {
    return LevelSetTranslation{b, ANElement::identity(n), 0.0, 0.0, 0.0};
  }

  const Matrix p = sd.eigenvectors * d.asDiagonal() * sd.eigenvectors.transpose();
  const ANElement beta = cholesky_an(0.5 * (p + p.transpose()));
  const Matrix conj = beta.matrix() * m * beta.inverse();
  const double scale = std::max(1.0, max_abs(conj));
  const double symmetry = max_abs(conj - conj.transpose()) / scale;
  if (symmetry > 1e-9) {
    throw NumericalError("level_set_translate: conjugated matrix is not symmetric (" +
                         std::to_string(symmetry) + ")");
  }
  ANElement b_prime = reverse_cholesky(0.5 * (conj + conj.transpose()));
  const Matrix mp = reflection_monodromy(b_prime).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(mp, Eigen::EigenvaluesOnly);
  const Vector spectrum = es.eigenvalues().reverse();
  return LevelSetTranslation{
      std::move(b_prime), beta, symmetry, max_abs(mp - conj) / scale,
      max_abs(spectrum - sd.eigenvalues) / sd.eigenvalues(0)};
}

IntersectionDimension orbit_leaf_intersection(const ANElement& b) {
  const int n = b.n();
  const Matrix m = reflection_monodromy(b).matrix();
  std::vector<Matrix> borel;  // basis of a ⊕ n
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) borel.push_back(matrix_unit(n, i, j));
  for (int i = 0; i + 1 < n; ++i)
    borel.push_back(matrix_unit(n, i, i) - matrix_unit(n, i + 1, i + 1));
  const int dim = static_cast<int>(borel.size());

  Matrix orbit(n * n, dim), leaf(n * n, dim);
  for (int c = 0; c < dim; ++c) {
    orbit.col(c) = vec(borel[c] * m - m * borel[c]);
    leaf.col(c) = vec(borel[c] * m + m * borel[c].transpose());
  }
  Matrix both(n * n, 2 * dim);
  both << orbit, leaf;

  const RankInfo ro = numeric_rank(orbit), rl = numeric_rank(leaf), rb = numeric_rank(both);
  IntersectionDimension out;
  out.orbit_rank = ro.rank;
  out.leaf_rank = rl.rank;
  out.sum_rank = rb.rank;
  out.dimension = ro.rank + rl.rank - rb.rank;
  out.gap_decades = std::min({ro.gap_decades(), rl.gap_decades(), rb.gap_decades()});
  for (const RankInfo* info : {&ro, &rl, &rb}) {
    if (info->smallest_kept < 1e-7 || (info->largest_dropped > 1e-9)) {
      throw NumericalError("orbit_leaf_intersection_dim: singular values straddle the 1e-8 "
                           "threshold (kept " + std::to_string(info->smallest_kept) +
                           ", dropped " + std::to_string(info->largest_dropped) + ")");
    }
  }
  return out;
}

int orbit_leaf_intersection_dim(const ANElement& b) {
  return orbit_leaf_intersection(b).dimension;
}

}  // namespace symtoda
