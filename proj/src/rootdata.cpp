#include "symtoda/rootdata.hpp"

#include "symtoda/errors.hpp"

#include <cmath>
#include <string>

namespace symtoda {

RootSystemA::RootSystemA(int n) : n_(n) {
  if (n < 2) throw InputError("RootSystemA: n must be >= 2");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) roots_.push_back({i, j});
}

bool RootSystemA::contains(const Root& r) const {
  return r.i >= 0 && r.i < r.j && r.j < n_;
}

namespace {

void require_root(int n, const Root& root) {
  if (!RootSystemA(n).contains(root)) {
    throw InputError("invalid positive root (" + std::to_string(root.i) + "," +
                     std::to_string(root.j) + ") for n=" + std::to_string(n));
  }
}

int unit_index(int n, int i, int j) { return i * n + j; }

}  // namespace

AlgebraElement chevalley_generator(int n, Root root, RootSign sign) {
  require_root(n, root);
  return sign == RootSign::Positive ? AlgebraElement(matrix_unit(n, root.i, root.j))
                                    : AlgebraElement(matrix_unit(n, root.j, root.i));
}

AlgebraElement y_generator(int n, Root root) {
  require_root(n, root);
  return AlgebraElement(matrix_unit(n, root.j, root.i) - matrix_unit(n, root.i, root.j));
}

double killing_pairing(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.n() != y.n()) throw InputError("killing_pairing: dimension mismatch");
  return (x.matrix() * y.matrix()).trace();
}

AlgebraElement involution_on_algebra(const AlgebraElement& x) {
  return AlgebraElement(-x.matrix().transpose());
}

// ---------------------------------------------------------------------------

RTensor::RTensor(int n) : n_(n), c_(Matrix::Zero(n * n, n * n)) {}

RTensor::RTensor(int n, Matrix coefficients) : n_(n), c_(std::move(coefficients)) {
  if (c_.rows() != n * n || c_.cols() != n * n) {
    throw InputError("RTensor: coefficient matrix must be n^2 x n^2");
  }
}

double RTensor::operator()(int i, int j, int k, int l) const {
  return c_(unit_index(n_, i, j), unit_index(n_, k, l));
}

void RTensor::add_product(const Matrix& x, const Matrix& y, double c) {
  Vector vx(n_ * n_), vy(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      vx(unit_index(n_, i, j)) = x(i, j);
      vy(unit_index(n_, i, j)) = y(i, j);
    }
  c_.noalias() += c * vx * vy.transpose();
}

void RTensor::add_wedge(const Matrix& x, const Matrix& y, double c) {
  add_product(x, y, c);
  add_product(y, x, -c);
}

RTensor RTensor::flip() const { return RTensor(n_, c_.transpose()); }

RTensor RTensor::transformed(const Matrix& left, const Matrix& right) const {
  return RTensor(n_, left * c_ * right.transpose());
}

double RTensor::trace_leakage() const {
  Vector id = Vector::Zero(n_ * n_);
  for (int i = 0; i < n_; ++i) id(unit_index(n_, i, i)) = 1.0;
  // Contracting slot one with the identity under the trace form picks the
  // diagonal units of that slot.
  return (id.transpose() * c_).norm() + (c_ * id).norm();
}

RTensor RTensor::operator+(const RTensor& o) const { return RTensor(n_, c_ + o.c_); }
RTensor RTensor::operator-(const RTensor& o) const { return RTensor(n_, c_ - o.c_); }
RTensor RTensor::operator*(double s) const { return RTensor(n_, c_ * s); }

// ---------------------------------------------------------------------------

RTensor standard_r_matrix(int n) {
  const RootSystemA roots(n);
  RTensor r(n);
  for (const Root& a : roots.positive_roots()) {
    r.add_wedge(chevalley_generator(n, a, RootSign::Positive).matrix(),
                chevalley_generator(n, a, RootSign::Negative).matrix());
  }
  return r;
}

RTensor r_matrix_via_y(int n) {
  const RootSystemA roots(n);
  RTensor r(n);
  for (const Root& a : roots.positive_roots()) {
    r.add_wedge(chevalley_generator(n, a, RootSign::Positive).matrix(),
                y_generator(n, a).matrix());
  }
  return r;
}

RTensor quasitriangular_r_matrix(int n) {
  const RootSystemA roots(n);
  RTensor r(n);
  // Σ h_i ⊗ h^i over an orthonormal basis of the traceless diagonal equals
  // Σ_i E_ii ⊗ E_ii - (1/n) I ⊗ I.
  for (int i = 0; i < n; ++i) {
    r.add_product(matrix_unit(n, i, i), matrix_unit(n, i, i), 0.5);
  }
  const Matrix id = Matrix::Identity(n, n);
  r.add_product(id, id, -0.5 / n);
  for (const Root& a : roots.positive_roots()) {
    r.add_product(chevalley_generator(n, a, RootSign::Positive).matrix(),
                  chevalley_generator(n, a, RootSign::Negative).matrix());
  }
  return r;
}

namespace {

struct Term {
  double c;
  int p;  // slot-one matrix unit
  int q;  // slot-two matrix unit
};

std::vector<Term> sparse_terms(const RTensor& r) {
  std::vector<Term> out;
  const Matrix& c = r.coefficients();
  for (int p = 0; p < c.rows(); ++p)
    for (int q = 0; q < c.cols(); ++q)
      if (c(p, q) != 0.0) out.push_back({c(p, q), p, q});
  return out;
}

// Accumulates s * [E_p, E_q] into slot `slot` of a rank-3 tensor whose other
// slots carry units a and b (in slot order).
class Cubic {
 public:
  explicit Cubic(int n) : n_(n), nn_(n * n), data_(Vector::Zero(nn_ * nn_ * nn_)) {}

  void add_commutator(int slot, int p, int q, int a, int b, double s) {
    const int i = p / n_, j = p % n_, k = q / n_, l = q % n_;
    // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
    if (j == k) add(slot, i * n_ + l, a, b, s);
    if (l == i) add(slot, k * n_ + j, a, b, -s);
  }

  double norm() const { return data_.norm(); }

 private:
  void add(int slot, int u, int a, int b, double s) {
    int idx[3];
    idx[slot] = u;
    int other = 0;
    for (int t = 0; t < 3; ++t) {
      if (t == slot) continue;
      idx[t] = other++ == 0 ? a : b;
    }
    data_((idx[0] * nn_ + idx[1]) * nn_ + idx[2]) += s;
  }

  int n_;
  int nn_;
  Vector data_;
};

}  // namespace

double cybe_residual(const RTensor& r) {
  const auto terms = sparse_terms(r);
  Cubic acc(r.n());
  for (const Term& x : terms) {
    for (const Term& y : terms) {
      const double s = x.c * y.c;
      // [r12, r13] = Σ [a_x, a_y] ⊗ b_x ⊗ b_y
      acc.add_commutator(0, x.p, y.p, x.q, y.q, s);
      // [r12, r23] = Σ a_x ⊗ [b_x, a_y] ⊗ b_y
      acc.add_commutator(1, x.q, y.p, x.p, y.q, s);
      // [r13, r23] = Σ a_x ⊗ a_y ⊗ [b_x, b_y]
      acc.add_commutator(2, x.q, y.q, x.p, y.p, s);
    }
  }
  return acc.norm();
}

double borel_membership_residual(const RTensor& r) {
  const int n = r.n();
  double sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const bool in_b_plus = i <= j;
          const bool in_b_minus = k >= l;
          if (!(in_b_plus && in_b_minus)) sq += std::pow(r(i, j, k, l), 2);
        }
  return std::sqrt(sq);
}

Matrix involution_operator(int n) {
  Matrix s = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(unit_index(n, j, i), unit_index(n, i, j)) = -1.0;
  return s;
}

Report verify_r_identities(int n, double tol, double cybe_tol) {
  Report report("r-identities");
  const RTensor r = standard_r_matrix(n);
  const Matrix sigma = involution_operator(n);
  const Matrix id = Matrix::Identity(n * n, n * n);

  const RTensor ss = r.transformed(sigma, sigma);
  const RTensor s1 = r.transformed(sigma, id);
  const RTensor one_s = r.transformed(id, sigma);

  report.check("sigma_sigma_r_plus_r", (ss + r).norm(), tol);
  report.check("reflection_lhs", (ss + r).norm(), tol);
  report.check("reflection_rhs", (s1 + one_s).norm(), tol);
  report.check("r_equals_sum_E_wedge_Y", (r - r_matrix_via_y(n)).norm(), tol);
  report.check("r_skew", (r + r.flip()).norm(), tol);
  report.check("r_in_sl_tensor_sl", r.trace_leakage(), tol);

  const RTensor q = quasitriangular_r_matrix(n);
  report.check("quasitriangular_skew_part", (q - q.flip() - r).norm(), tol);
  report.check("quasitriangular_cybe", cybe_residual(q), cybe_tol);
  report.check("quasitriangular_in_bplus_bminus", borel_membership_residual(q), tol);

  report.note("printed_difference_rhs_norm", (s1 - one_s).norm());
  return report;
}

}  // namespace symtoda
