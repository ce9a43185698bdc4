#include "symtoda/sampling.hpp"

#include <cmath>

namespace symtoda {

Matrix random_uniform(int n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

AlgebraElement random_algebra(int n, Rng& rng, double scale) {
  return AlgebraElement::project(random_uniform(n, rng, -scale, scale));
}

ANElement random_an(int n, Rng& rng, double scale) {
  Matrix x = random_uniform(n, rng, -scale, scale).triangularView<Eigen::Upper>();
  x = traceless(x);
  Matrix b = expm(x);
  // exp of an upper triangular matrix is upper triangular; clear roundoff.
  b = b.triangularView<Eigen::Upper>();
  b /= std::pow(b.diagonal().prod(), 1.0 / n);
  return ANElement(std::move(b));
}

OrthogonalElement random_rotation(int n, Rng& rng) {
  std::normal_distribution<double> dist;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return OrthogonalElement(std::move(q));
}

GroupElement random_group(int n, Rng& rng, double scale) {
  return GroupElement(random_an(n, rng, scale).matrix() *
                      random_rotation(n, rng).matrix());
}

Vector random_positive_diagonal(int n, Rng& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Vector logs(n);
  for (int i = 0; i < n; ++i) logs(i) = dist(rng);
  logs.array() -= logs.mean();
  return logs.array().exp();
}

}  // namespace symtoda
