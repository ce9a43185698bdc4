#include "symtoda/poisson.hpp"

#include "symtoda/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace symtoda {

SmoothFunction::SmoothFunction(std::string name, Evaluator value,
                               std::optional<Gradient> gradient)
    : name_(std::move(name)), value_(std::move(value)), gradient_(std::move(gradient)) {}

Matrix SmoothFunction::gradient(const Matrix& g) const {
  if (!gradient_) throw std::logic_error(name_ + " has no analytic gradient");
  return (*gradient_)(g);
}

namespace {

// exp(t E_ij) for a matrix unit.
Matrix unit_exp(int n, int i, int j, double t) {
  Matrix e = Matrix::Identity(n, n);
  if (i == j) {
    e(i, i) = std::exp(t);
  } else {
    e(i, j) = t;
  }
  return e;
}

void require_finite(const Matrix& m, const std::string& name) {
  if (!m.allFinite()) {
    throw NumericalError("differential of '" + name + "' is not finite");
  }
}

}  // namespace

Matrix SmoothFunction::left_derivative(const Matrix& g) const {
  Matrix d = gradient_ ? Matrix(g.transpose() * (*gradient_)(g)) : left_derivative_fd(g);
  require_finite(d, name_);
  return d;
}

Matrix SmoothFunction::right_derivative(const Matrix& g) const {
  Matrix d = gradient_ ? Matrix((*gradient_)(g) * g.transpose()) : right_derivative_fd(g);
  require_finite(d, name_);
  return d;
}

Matrix SmoothFunction::left_derivative_fd(const Matrix& g, double h) const {
  const int n = static_cast<int>(g.rows());
  Matrix d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d(i, j) = (value_(g * unit_exp(n, i, j, h)) - value_(g * unit_exp(n, i, j, -h))) /
                (2.0 * h);
    }
  return d;
}

Matrix SmoothFunction::right_derivative_fd(const Matrix& g, double h) const {
  const int n = static_cast<int>(g.rows());
  Matrix d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d(i, j) = (value_(unit_exp(n, i, j, h) * g) - value_(unit_exp(n, i, j, -h) * g)) /
                (2.0 * h);
    }
  return d;
}

SmoothFunction SmoothFunction::finite_difference_only() const {
  return SmoothFunction(name_, value_);
}

SmoothFunction SmoothFunction::renamed(std::string name) const {
  SmoothFunction out = *this;
  out.name_ = std::move(name);
  return out;
}

// ---------------------------------------------------------------------------

SmoothFunction coordinate_function(int i, int j) {
  return SmoothFunction(
      "g[" + std::to_string(i) + "," + std::to_string(j) + "]",
      [i, j](const Matrix& g) { return g(i, j); },
      [i, j](const Matrix& g) { return matrix_unit(static_cast<int>(g.rows()), i, j); });
}

SmoothFunction trace_power(int m) {
  if (m < 1) throw InputError("trace_power: exponent must be >= 1");
  return SmoothFunction(
      "tr(g^" + std::to_string(m) + ")",
      [m](const Matrix& g) {
        Matrix p = g;
        for (int k = 1; k < m; ++k) p = p * g;
        return p.trace();
      },
      [m](const Matrix& g) {
        Matrix p = Matrix::Identity(g.rows(), g.cols());
        for (int k = 1; k < m; ++k) p = p * g;
        return Matrix(m * p.transpose());
      });
}

SmoothFunction reflection_trace(int m) {
  if (m < 1) throw InputError("reflection_trace: exponent must be >= 1");
  return SmoothFunction(
      "tr((g g^T)^" + std::to_string(m) + ")",
      [m](const Matrix& g) {
        const Matrix s = g * g.transpose();
        Matrix p = s;
        for (int k = 1; k < m; ++k) p = p * s;
        return p.trace();
      },
      [m](const Matrix& g) {
        const Matrix s = g * g.transpose();
        Matrix p = Matrix::Identity(g.rows(), g.cols());
        for (int k = 1; k < m; ++k) p = p * s;
        return Matrix(2.0 * m * p * g);
      });
}

SmoothFunction polynomial_function(std::string name, Matrix linear,
                                   std::vector<std::pair<Matrix, Matrix>> quadratic) {
  auto form = [](const Matrix& a, const Matrix& g) { return (a.array() * g.array()).sum(); };
  return SmoothFunction(
      std::move(name),
      [=](const Matrix& g) {
        double v = form(linear, g);
        for (const auto& [p, q] : quadratic) v += form(p, g) * form(q, g);
        return v;
      },
      [=](const Matrix& g) {
        Matrix d = linear;
        for (const auto& [p, q] : quadratic) d += form(q, g) * p + form(p, g) * q;
        return d;
      });
}

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b) {
  std::optional<SmoothFunction::Gradient> grad;
  if (a.has_gradient() && b.has_gradient()) {
    grad = [a, b](const Matrix& g) { return Matrix(a.gradient(g) + b.gradient(g)); };
  }
  return SmoothFunction(
      "(" + a.name() + " + " + b.name() + ")",
      [a, b](const Matrix& g) { return a(g) + b(g); }, grad);
}

SmoothFunction operator*(double s, const SmoothFunction& f) {
  std::optional<SmoothFunction::Gradient> grad;
  if (f.has_gradient()) grad = [s, f](const Matrix& g) { return Matrix(s * f.gradient(g)); };
  return SmoothFunction(std::to_string(s) + "*" + f.name(),
                        [s, f](const Matrix& g) { return s * f(g); }, grad);
}

SmoothFunction product(const SmoothFunction& a, const SmoothFunction& b) {
  std::optional<SmoothFunction::Gradient> grad;
  if (a.has_gradient() && b.has_gradient()) {
    grad = [a, b](const Matrix& g) {
      return Matrix(a(g) * b.gradient(g) + b(g) * a.gradient(g));
    };
  }
  return SmoothFunction(
      "(" + a.name() + " * " + b.name() + ")",
      [a, b](const Matrix& g) { return a(g) * b(g); }, grad);
}

SmoothFunction pullback_monodromy(const SmoothFunction& f) {
  std::optional<SmoothFunction::Gradient> grad;
  if (f.has_gradient()) {
    grad = [f](const Matrix& g) {
      const Matrix d = f.gradient(g * g.transpose());
      return Matrix((d + d.transpose()) * g);
    };
  }
  return SmoothFunction(
      "T*" + f.name(), [f](const Matrix& g) { return f(g * g.transpose()); }, grad);
}

SmoothFunction pullback_tau(const SmoothFunction& f) {
  std::optional<SmoothFunction::Gradient> grad;
  if (f.has_gradient()) {
    grad = [f](const Matrix& g) { return Matrix(f.gradient(g.transpose()).transpose()); };
  }
  return SmoothFunction(
      "tau*" + f.name(), [f](const Matrix& g) { return f(g.transpose()); }, grad);
}

SmoothFunction pullback_sigma(const SmoothFunction& f) {
  std::optional<SmoothFunction::Gradient> grad;
  if (f.has_gradient()) {
    grad = [f](const Matrix& g) {
      const Matrix s = g.inverse().transpose();
      return Matrix(-s * f.gradient(s).transpose() * s);
    };
  }
  return SmoothFunction(
      "sigma*" + f.name(),
      [f](const Matrix& g) { return f(g.inverse().transpose()); }, grad);
}

SmoothFunction tau_symmetrized(const SmoothFunction& f) {
  return (f + pullback_tau(f)).renamed("sym(" + f.name() + ")");
}

// ---------------------------------------------------------------------------

namespace {

// Ad_x acting on row-major vectorizations: vec(x E x^{-1}).
Matrix adjoint_operator(const Matrix& x, const Matrix& x_inv) {
  return Eigen::kroneckerProduct(x, x_inv.transpose());
}

}  // namespace

RTensor bivector_tensor(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  Eigen::FullPivLU<Matrix> lu(g);
  if (!lu.isInvertible()) throw InputError("bivector_at: singular matrix");
  const Matrix g_inv = lu.inverse();
  const RTensor r = standard_r_matrix(n);
  const Matrix ad = adjoint_operator(g_inv, g);
  Matrix c = ad * r.coefficients() * ad.transpose() - r.coefficients();
  // Exact skew-symmetry.
  c = 0.5 * (c - c.transpose()).eval();
  return RTensor(n, std::move(c));
}

BivectorAtPoint bivector_at(const GroupElement& g) {
  return BivectorAtPoint{g, bivector_tensor(g.matrix())};
}

namespace {

double bracket_from(const Vector& l1, const Vector& l2, const Matrix& eta) {
  // Written so that swapping the arguments negates the result exactly.
  return 0.5 * (l1.dot(eta * l2) - l2.dot(eta * l1));
}

}  // namespace

double poisson_bracket(const SmoothFunction& f1, const SmoothFunction& f2,
                       const GroupElement& g) {
  const RTensor eta = bivector_tensor(g.matrix());
  return bracket_from(vec(f1.left_derivative(g.matrix())),
                      vec(f2.left_derivative(g.matrix())), eta.coefficients());
}

double poisson_bracket(const SmoothFunction& f1, const SmoothFunction& f2, const Matrix& g) {
  const RTensor eta = bivector_tensor(g);
  return bracket_from(vec(f1.left_derivative(g)), vec(f2.left_derivative(g)), eta.coefficients());
}

SmoothFunction bracket_function(const SmoothFunction& f1, const SmoothFunction& f2) {
  return SmoothFunction("{" + f1.name() + "," + f2.name() + "}",
                        [f1, f2](const Matrix& g) { return poisson_bracket(f1, f2, g); });
}

double bracket_scale(const SmoothFunction& f1, const SmoothFunction& f2,
                     const GroupElement& g) {
  const RTensor eta = bivector_tensor(g.matrix());
  const double s = f1.left_derivative(g.matrix()).norm() * eta.norm() *
                   f2.left_derivative(g.matrix()).norm();
  return std::max(1.0, s);
}

Matrix hamiltonian_vector_field(const SmoothFunction& h, const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  const RTensor eta = bivector_tensor(g);
  // {F, H} = dF(g)[g ξ] with ξ = η · dH (second slot contracted).
  const Vector xi = eta.coefficients() * vec(h.left_derivative(g));
  return g * unvec(xi, n);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> chart_coordinates(int n, Chart chart) {
  std::vector<std::pair<int, int>> coords;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (chart == Chart::AN && j < i) continue;
      coords.emplace_back(i, j);
    }
  // b_nn is determined by the other diagonal entries on AN.
  if (chart == Chart::AN) coords.pop_back();
  return coords;
}

}  // namespace

RankInfo bivector_rank_info(const GroupElement& g, Chart chart) {
  const int n = g.n();
  if (chart == Chart::AN && !is_an_matrix(g.matrix())) {
    throw InputError("bivector_rank: AN chart requires an upper triangular matrix "
                     "with positive diagonal");
  }
  const auto coords = chart_coordinates(n, chart);
  Matrix v(n * n, static_cast<Eigen::Index>(coords.size()));
  for (std::size_t c = 0; c < coords.size(); ++c) {
    const auto [i, j] = coords[c];
    v.col(static_cast<Eigen::Index>(c)) =
        vec(g.matrix().transpose() * matrix_unit(n, i, j));
  }
  const Matrix gram = v.transpose() * bivector_tensor(g.matrix()).coefficients() * v;
  return numeric_rank(gram, 1e-8);
}

int bivector_rank(const GroupElement& g, Chart chart) {
  return bivector_rank_info(g, chart).rank;
}

Report verify_AN_tangency(const ANElement& b, double tol) {
  Report report("an-tangency");
  const int n = b.n();
  const RTensor eta = bivector_tensor(b.matrix());
  double sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (j >= i && l >= k) continue;
          sq += std::pow(eta(i, j, k, l), 2);
        }
  report.check("off_borel_component", std::sqrt(sq), tol, {{"eta_norm", eta.norm()}});
  return report;
}

Report verify_sigma_antipoisson(const SmoothFunction& f1, const SmoothFunction& f2,
                                const GroupElement& g, double tol) {
  Report report("sigma-antipoisson");
  const GroupElement sg(g.inverse().transpose());
  const SmoothFunction s1 = pullback_sigma(f1), s2 = pullback_sigma(f2);
  const double lhs = poisson_bracket(s1, s2, g);
  const double rhs = poisson_bracket(f1, f2, sg);
  const double scale = std::max(bracket_scale(s1, s2, g), bracket_scale(f1, f2, sg));
  report.check("sigma_antipoisson", std::abs(lhs + rhs) / scale, tol,
               {{"f1", f1.name()}, {"f2", f2.name()}, {"lhs", lhs}, {"rhs", rhs},
                {"scale", scale}});
  return report;
}

Report verify_KGK_commutativity(int j, int k, const ANElement& b, double tol) {
  if (j < 1 || k < 1) throw InputError("verify_KGK_commutativity: j, k must be >= 1");
  Report report("kgk-commutativity");
  const SmoothFunction hj = reflection_trace(j), hk = reflection_trace(k);
  const double value = poisson_bracket(hj, hk, b);
  const double scale = bracket_scale(hj, hk, b);
  report.check("bracket_H" + std::to_string(j) + "_H" + std::to_string(k),
               std::abs(value) / scale, tol,
               {{"j", j}, {"k", k}, {"b", matrix_to_json(b.matrix())}, {"bracket", value},
                {"scale", scale}});
  return report;
}

}  // namespace symtoda
