#include "symtoda/symspace.hpp"

#include "symtoda/errors.hpp"
#include "symtoda/rootdata.hpp"

#include <cmath>

namespace symtoda {

GroupElement sigma(const GroupElement& g) { return GroupElement(g.inverse().transpose()); }

GroupElement tau(const GroupElement& g) { return GroupElement(g.matrix().transpose()); }

GroupElement reflection_monodromy(const GroupElement& g) {
  Matrix m = g.matrix() * g.matrix().transpose();
  m = 0.5 * (m + m.transpose()).eval();
  return GroupElement(std::move(m));
}

IwasawaFactors iwasawa_factorize(const GroupElement& g) {
  const int n = g.n();
  const Matrix j = reversal(n);
  Eigen::HouseholderQR<Matrix> qr(g.matrix().transpose() * j);
  Matrix q1 = qr.householderQ();
  Matrix r1 = qr.matrixQR().triangularView<Eigen::Upper>();

  // g = (J R1ᵀ J)(J Q1ᵀ)
  Matrix upper = j * r1.transpose() * j;
  Matrix orth = j * q1.transpose();
  const double smallest = upper.diagonal().cwiseAbs().minCoeff();
  if (!(smallest > 1e-300) || !upper.allFinite()) {
    throw NumericalError("iwasawa_factorize: near-singular Gram step (pivot " +
                         std::to_string(smallest) + ")");
  }
  for (int i = 0; i < n; ++i) {
    if (upper(i, i) < 0) {
      upper.col(i) *= -1.0;
      orth.row(i) *= -1.0;
    }
  }
  upper = upper.triangularView<Eigen::Upper>();
  // g = b q with q orthogonal, so k = q^{-1} = qᵀ.
  return IwasawaFactors{ANElement(std::move(upper)), OrthogonalElement(orth.transpose())};
}

namespace {

void require_spd(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2 || !m.allFinite()) {
    throw InputError(std::string(what) + ": expected a square matrix");
  }
  if (max_abs(m - m.transpose()) > 1e-9 * std::max(1.0, max_abs(m))) {
    throw InputError(std::string(what) + ": matrix is not symmetric");
  }
}

}  // namespace

ANElement reverse_cholesky(const Matrix& m) {
  require_spd(m, "reverse_cholesky");
  const int n = static_cast<int>(m.rows());
  const Matrix j = reversal(n);
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::LLT<Matrix> llt(j * sym * j);
  if (llt.info() != Eigen::Success) {
    throw InputError("reverse_cholesky: matrix is not positive definite");
  }
  const Matrix lower = llt.matrixL();
  Matrix b = j * lower * j;
  b = b.triangularView<Eigen::Upper>();
  return ANElement(std::move(b));
}

ANElement cholesky_an(const Matrix& m) {
  require_spd(m, "cholesky_an");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw InputError("cholesky_an: matrix is not positive definite");
  }
  Matrix beta = llt.matrixU();
  return ANElement(std::move(beta));
}

Matrix T_differential(const GroupElement& g, const AlgebraElement& x, Side side) {
  const Matrix& gm = g.matrix();
  const Matrix& xm = x.matrix();
  if (side == Side::Left) return gm * (xm + xm.transpose()) * gm.transpose();
  const Matrix t = gm * gm.transpose();
  return xm * t + t * xm.transpose();
}

Matrix T_differential_fd(const GroupElement& g, const AlgebraElement& x, Side side,
                         double h) {
  auto moved = [&](double t) {
    const Matrix e = expm(t * x.matrix());
    const Matrix p = side == Side::Left ? Matrix(g.matrix() * e) : Matrix(e * g.matrix());
    return Matrix(p * p.transpose());
  };
  return (moved(h) - moved(-h)) / (2.0 * h);
}

Report verify_rmpb(const SmoothFunction& f1, const SmoothFunction& f2,
                   const GroupElement& g, double tol) {
  Report report("rm-pb");
  const GroupElement t = reflection_monodromy(g);
  const SmoothFunction tf1 = pullback_monodromy(f1), tf2 = pullback_monodromy(f2);
  const SmoothFunction s1 = f1 + pullback_tau(f1), s2 = f2 + pullback_tau(f2);
  const double lhs = poisson_bracket(tf1, tf2, g);
  const double rhs = 0.5 * poisson_bracket(s1, s2, t);
  const double scale = std::max(bracket_scale(tf1, tf2, g), 0.5 * bracket_scale(s1, s2, t));
  report.check("rmpb", std::abs(lhs - rhs) / scale, tol,
               {{"f1", f1.name()}, {"f2", f2.name()}, {"lhs", lhs}, {"rhs", rhs},
                {"scale", scale}});
  return report;
}

namespace {

void require_tau_invariant(const SmoothFunction& f, const GroupElement& g) {
  const double a = f(g.matrix()), b = f(g.matrix().transpose());
  if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) {
    throw InputError("verify_factor2_corollary: '" + f.name() + "' is not tau-invariant");
  }
}

}  // namespace

Report verify_factor2_corollary(const SmoothFunction& f1, const SmoothFunction& f2,
                                const GroupElement& g, double tol) {
  require_tau_invariant(f1, g);
  require_tau_invariant(f2, g);
  Report report("factor2");
  const GroupElement t = reflection_monodromy(g);
  const SmoothFunction tf1 = pullback_monodromy(f1), tf2 = pullback_monodromy(f2);
  const double lhs = poisson_bracket(tf1, tf2, g);
  const double rhs = 2.0 * poisson_bracket(f1, f2, t);
  const double scale = std::max(bracket_scale(tf1, tf2, g), 2.0 * bracket_scale(f1, f2, t));
  report.check("factor2", std::abs(lhs - rhs) / scale, tol,
               {{"f1", f1.name()}, {"f2", f2.name()}, {"lhs", lhs}, {"rhs", rhs},
                {"scale", scale}});
  return report;
}

Report verify_tau_poisson(const SmoothFunction& f1, const SmoothFunction& f2,
                          const GroupElement& g, double tol) {
  Report report("tau-poisson");
  const GroupElement tg = tau(g);
  const SmoothFunction t1 = pullback_tau(f1), t2 = pullback_tau(f2);
  const double lhs = poisson_bracket(t1, t2, g);
  const double rhs = poisson_bracket(f1, f2, tg);
  const double scale = std::max(bracket_scale(t1, t2, g), bracket_scale(f1, f2, tg));
  report.check("tau_poisson", std::abs(lhs - rhs) / scale, tol,
               {{"f1", f1.name()}, {"f2", f2.name()}, {"lhs", lhs}, {"rhs", rhs}});
  return report;
}

Report verify_pushforwards(const GroupElement& g, double fd_tol) {
  Report report("t-pushforward");
  const int n = g.n();
  const Matrix t = reflection_monodromy(g).matrix();
  double y_left = 0.0, y_right = 0.0, e_right = 0.0, fd = 0.0;
  const RootSystemA roots(n);
  for (const Root& a : roots.positive_roots()) {
    const AlgebraElement y = y_generator(n, a);
    const AlgebraElement e = chevalley_generator(n, a, RootSign::Positive);
    const Matrix em = chevalley_generator(n, a, RootSign::Negative).matrix();

    const Matrix dyl = T_differential(g, y, Side::Left);
    const Matrix dyr = T_differential(g, y, Side::Right);
    const Matrix der = T_differential(g, e, Side::Right);
    y_left = std::max(y_left, max_abs(dyl));
    // Y^R - Y^L at T(g): Y T - T Y.
    y_right = std::max(y_right, max_abs(dyr - (y.matrix() * t - t * y.matrix())));
    // E^R + E_-^L at T(g): E T + T E_-.
    e_right = std::max(e_right, max_abs(der - (e.matrix() * t + t * em)));

    const double scale = std::max(1.0, max_abs(t));
    for (const auto& [x, side] : {std::pair{y, Side::Left}, std::pair{y, Side::Right},
                                  std::pair{e, Side::Left}, std::pair{e, Side::Right}}) {
      fd = std::max(fd, max_abs(T_differential(g, x, side) - T_differential_fd(g, x, side)) /
                            scale);
    }
  }
  report.check("T_Y_left_vanishes", y_left, 0.0);
  report.check("T_Y_right", y_right, 1e-12 * std::max(1.0, max_abs(t)));
  report.check("T_E_right", e_right, 1e-12 * std::max(1.0, max_abs(t)));
  report.check("analytic_vs_fd", fd, fd_tol);
  return report;
}

}  // namespace symtoda
