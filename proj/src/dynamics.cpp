#include "symtoda/dynamics.hpp"

#include "symtoda/errors.hpp"
#include "symtoda/sampling.hpp"

#include <cmath>
#include <sstream>

namespace symtoda {

namespace {

Matrix power_of(const Matrix& m, int k) {
  Matrix p = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) p = p * m;
  return p;
}

// Σ 2k c_k S^k for symmetric S.
Matrix gradient_polynomial(const std::map<int, double>& c, const Matrix& s) {
  Matrix out = Matrix::Zero(s.rows(), s.cols());
  for (const auto& [k, ck] : c) out += 2.0 * k * ck * power_of(s, k);
  return out;
}

void validate_gradients(const ReflectionHamiltonian& h) {
  const int n = std::max(2, h.max_degree() + 1);
  Rng rng(0x5eed);
  const GroupElement g = random_group(n, rng, 0.3);
  const double step = 1e-5;
  for (int trial = 0; trial < 4; ++trial) {
    const AlgebraElement x = random_algebra(n, rng);
    for (Side side : {Side::Left, Side::Right}) {
      auto moved = [&](double t) {
        const Matrix e = expm(t * x.matrix());
        return h.value(side == Side::Left ? Matrix(g.matrix() * e) : Matrix(e * g.matrix()));
      };
      const double fd = (moved(step) - moved(-step)) / (2.0 * step);
      const double closed = (gradient(h, g, side).matrix() * x.matrix()).trace();
      if (std::abs(fd - closed) > 1e-6 * std::max(1.0, std::abs(fd))) {
        throw NumericalError("gradient of " + h.name() +
                             " disagrees with finite differences");
      }
    }
  }
}

}  // namespace

ReflectionHamiltonian::ReflectionHamiltonian(std::map<int, double> coefficients) {
  for (const auto& [k, c] : coefficients) {
    if (k < 1) throw InputError("ReflectionHamiltonian: degrees must be >= 1");
    if (!std::isfinite(c)) throw InputError("ReflectionHamiltonian: non-finite coefficient");
    if (c != 0.0) coefficients_[k] = c;
  }
  if (coefficients_.empty()) {
    throw InputError("ReflectionHamiltonian: at least one nonzero coefficient required");
  }
  validate_gradients(*this);
}

ReflectionHamiltonian ReflectionHamiltonian::power(int k, double c) {
  return ReflectionHamiltonian({{k, c}});
}

std::string ReflectionHamiltonian::name() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : coefficients_) {
    if (!first) os << " + ";
    first = false;
    if (c != 1.0) os << c << "*";
    os << "H" << k;
  }
  return os.str();
}

void ReflectionHamiltonian::require_dimension(int n) const {
  if (max_degree() >= n) {
    throw InputError("ReflectionHamiltonian: degree " + std::to_string(max_degree()) +
                     " must be < n = " + std::to_string(n));
  }
}

double ReflectionHamiltonian::value(const Matrix& g) const {
  const Matrix s = g * g.transpose();
  double v = 0.0;
  for (const auto& [k, c] : coefficients_) v += c * power_of(s, k).trace();
  return v;
}

SmoothFunction ReflectionHamiltonian::as_function() const {
  const auto coeffs = coefficients_;
  return SmoothFunction(
      name(),
      [coeffs](const Matrix& g) {
        const Matrix s = g * g.transpose();
        double v = 0.0;
        for (const auto& [k, c] : coeffs) v += c * power_of(s, k).trace();
        return v;
      },
      [coeffs](const Matrix& g) {
        // d tr(S^k) = 2k tr(S^{k-1} g dgᵀ) for S = g gᵀ.
        const Matrix s = g * g.transpose();
        Matrix d = Matrix::Zero(g.rows(), g.cols());
        for (const auto& [k, c] : coeffs) d += 2.0 * k * c * power_of(s, k - 1) * g;
        return d;
      });
}

double ReflectionHamiltonian::spectral_function(double h) const {
  double v = 0.0;
  for (const auto& [k, c] : coefficients_) v += 2.0 * k * c * std::pow(h, k);
  return v;
}

double hamiltonian_value(const ReflectionHamiltonian& h, const GroupElement& g) {
  return h.value(g.matrix());
}

AlgebraElement gradient(const ReflectionHamiltonian& h, const GroupElement& g, Side side) {
  const Matrix& m = g.matrix();
  const Matrix s = side == Side::Left ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  return AlgebraElement::project(gradient_polynomial(h.coefficients(), s));
}

// ---------------------------------------------------------------------------

ANElement factorization_flow_step(const ReflectionHamiltonian& h, const ANElement& b0,
                                  double t) {
  if (t == 0.0) return b0;
  const Matrix x_plus = gradient(h, b0, Side::Right).matrix();
  const Matrix x_minus = gradient(h, b0, Side::Left).matrix();
  Matrix e_plus, e_minus;
  try {
    e_plus = expm(t * x_plus);
    e_minus = expm(t * x_minus);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) +
                         "; split the time interval (time slicing)");
  }
  // exp(t X±) = b±(t) k±(t)^{-1}
  const OrthogonalElement k_plus = iwasawa_factorize(GroupElement(e_plus)).k;
  const OrthogonalElement k_minus = iwasawa_factorize(GroupElement(e_minus)).k;
  const Matrix g = k_plus.matrix().transpose() * b0.matrix() * k_minus.matrix();
  return iwasawa_factorize(GroupElement(g)).b;
}

ANElement factorization_flow(const ReflectionHamiltonian& h, const ANElement& b0, double t,
                             const FlowOptions& options) {
  h.require_dimension(b0.n());
  if (!std::isfinite(t)) throw InputError("factorization_flow: non-finite time");
  if (!options.slice || t == 0.0) return factorization_flow_step(h, b0, t);

  // ‖∇⁺H‖₂ is a spectral invariant, so it is constant along the flow.
  const double norm = gradient(h, b0, Side::Right).matrix().operatorNorm();
  const long slices =
      std::max(1L, static_cast<long>(std::ceil(std::abs(t) * norm / options.max_exponent)));
  const double dt = t / static_cast<double>(slices);
  ANElement b = b0;
  for (long s = 0; s < slices; ++s) {
    b = factorization_flow_step(h, b, dt);
    b = reverse_cholesky(reflection_monodromy(b).matrix());
  }
  return b;
}

ANElement vector_field_flow(const ReflectionHamiltonian& h, const ANElement& b0, double t,
                            double dt) {
  h.require_dimension(b0.n());
  if (!(dt > 0.0) || dt > 1e-2) throw InputError("vector_field_flow: need 0 < dt <= 1e-2");
  if (t == 0.0) return b0;
  const SmoothFunction f = h.as_function();
  const long steps = static_cast<long>(std::ceil(std::abs(t) / dt - 1e-9));
  const double step = t / static_cast<double>(steps);
  auto field = [&](const Matrix& g) { return hamiltonian_vector_field(f, g); };

  Matrix b = b0.matrix();
  for (long s = 0; s < steps; ++s) {
    const Matrix k1 = field(b);
    const Matrix k2 = field(b + 0.5 * step * k1);
    const Matrix k3 = field(b + 0.5 * step * k2);
    const Matrix k4 = field(b + step * k3);
    b += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = std::abs(b.determinant() - 1.0);
    if (!(drift <= 1e-6)) {
      throw NumericalError("vector_field_flow: determinant drift " + std::to_string(drift) +
                           " at step " + std::to_string(s));
    }
  }
  const double lower = max_abs(Matrix(b.triangularView<Eigen::StrictlyLower>()));
  if (lower > 1e-8 * std::max(1.0, max_abs(b))) {
    throw NumericalError("vector_field_flow: left the upper triangular subgroup (" +
                         std::to_string(lower) + ")");
  }
  Matrix upper = b.triangularView<Eigen::Upper>();
  return ANElement(std::move(upper));
}

double calibrate_time_constant(const ReflectionHamiltonian& h, const ANElement& b0) {
  const Matrix field = hamiltonian_vector_field(h.as_function(), b0.matrix());
  const double eps = 1e-5;
  const Matrix fwd = factorization_flow(h, b0, eps).matrix();
  const Matrix bwd = factorization_flow(h, b0, -eps).matrix();
  const Matrix velocity = (fwd - bwd) / (2.0 * eps);
  const double denom = (velocity.array() * velocity.array()).sum();
  if (!(denom > 0.0)) throw DegeneracyError("calibrate_time_constant: flow is stationary");
  return (field.array() * velocity.array()).sum() / denom;
}

Vector actions_of(const ANElement& b) {
  const Matrix m = reflection_monodromy(b).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

Report verify_flow_commutativity(const ReflectionHamiltonian& ha,
                                 const ReflectionHamiltonian& hb, const ANElement& b0,
                                 double t, double tol) {
  Report report("flow-commutativity");
  const ANElement ab = factorization_flow(ha, factorization_flow(hb, b0, t), t);
  const ANElement ba = factorization_flow(hb, factorization_flow(ha, b0, t), t);
  report.check("commutator_" + ha.name() + "_" + hb.name(),
               (ab.matrix() - ba.matrix()).norm(), tol, {{"t", t}});
  return report;
}

}  // namespace symtoda
