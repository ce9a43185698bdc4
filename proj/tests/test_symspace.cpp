#include <doctest.h>

#include "symtoda/errors.hpp"
#include "symtoda/sampling.hpp"
#include "symtoda/symspace.hpp"

#include <cmath>

using namespace symtoda;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("involutions") {
  Rng rng(1);
  const OrthogonalElement k = random_rotation(3, rng);
  CHECK((sigma(k).matrix() - k.matrix()).norm() < 1e-14);
  CHECK((sigma(GroupElement(m2(2, 0, 0, 0.5))).matrix() - m2(0.5, 0, 0, 2)).norm() == 0.0);

  const GroupElement g = random_group(4, rng);
  CHECK((sigma(sigma(g)).matrix() - g.matrix()).norm() < 1e-12);
  CHECK(tau(tau(g)).matrix() == g.matrix());

  const ANElement b = random_an(3, rng);
  const Matrix tb = tau(b).matrix();
  CHECK(tb.isLowerTriangular());
  CHECK_FALSE(tb.isUpperTriangular());

  const Matrix t = reflection_monodromy(g).matrix();
  CHECK(tau(GroupElement(t)).matrix() == t);
}

TEST_CASE("reflection monodromy") {
  CHECK(reflection_monodromy(GroupElement(Matrix::Identity(3, 3))).matrix() == Matrix::Identity(3, 3));
  CHECK(reflection_monodromy(GroupElement(m2(1, 1, 0, 1))).matrix() == m2(2, 1, 1, 1));

  Rng rng(2);
  for (int n = 2; n <= 5; ++n) {
    const GroupElement g = random_group(n, rng);
    const OrthogonalElement k = random_rotation(n, rng);
    const Matrix t = reflection_monodromy(g).matrix();
    const Matrix tk = reflection_monodromy(GroupElement(g.matrix() * k.matrix())).matrix();
    CHECK((t - tk).norm() < 1e-12 * t.norm());
    CHECK(t.determinant() == doctest::Approx(1.0));
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(t).eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("Iwasawa factorization") {
  Rng rng(3);
  const OrthogonalElement k = random_rotation(3, rng);
  const IwasawaFactors fk = iwasawa_factorize(k);
  CHECK((fk.b.matrix() - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((fk.k.matrix() - k.matrix().transpose()).norm() < 1e-12);

  const ANElement b = random_an(3, rng);
  const IwasawaFactors fb = iwasawa_factorize(b);
  CHECK((fb.b.matrix() - b.matrix()).norm() < 1e-12);
  CHECK((fb.k.matrix() - Matrix::Identity(3, 3)).norm() < 1e-12);

  for (int s = 0; s < 10; ++s) {
    const GroupElement g = random_group(4, rng, 1.0);
    const IwasawaFactors f = iwasawa_factorize(g);
    CHECK(f.b.matrix().isUpperTriangular());
    CHECK((f.b.matrix() * f.k.inverse() - g.matrix()).norm() < 1e-10 * g.matrix().norm());
  }
}

TEST_CASE("reverse Cholesky and the AN Cholesky factor") {
  CHECK((reverse_cholesky(Matrix::Identity(3, 3)).matrix() - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK((reverse_cholesky(m2(4, 0, 0, 0.25)).matrix() - m2(2, 0, 0, 0.5)).norm() < 1e-15);
  CHECK((reverse_cholesky(m2(2, 1, 1, 1)).matrix() - m2(1, 1, 0, 1)).norm() < 1e-15);

  Rng rng(4);
  for (int n = 2; n <= 5; ++n) {
    const ANElement b = random_an(n, rng);
    CHECK((reverse_cholesky(reflection_monodromy(b).matrix()).matrix() - b.matrix()).norm() < 1e-12);
    const Matrix m = reflection_monodromy(random_group(n, rng)).matrix();
    const Matrix beta = cholesky_an(m).matrix();
    CHECK(beta.isUpperTriangular());
    CHECK((beta.transpose() * beta - m).norm() < 1e-12 * m.norm());
  }
  CHECK_THROWS_AS(reverse_cholesky(m2(1, 2, 2, 1)), InputError);
  CHECK_THROWS_AS(reverse_cholesky(m2(1, 0.5, 0, 1)), InputError);
}

TEST_CASE("T differentials") {
  Rng rng(5);
  for (int n = 2; n <= 4; ++n) {
    const GroupElement g = random_group(n, rng, 0.5);
    const Matrix t = reflection_monodromy(g).matrix();
    for (const Root& a : RootSystemA(n).positive_roots()) {
      const AlgebraElement y = y_generator(n, a);
      CHECK(T_differential(g, y, Side::Left).norm() == 0.0);
      CHECK((T_differential(g, y, Side::Right) - (y.matrix() * t - t * y.matrix())).norm() < 1e-13);
      const AlgebraElement e = chevalley_generator(n, a, RootSign::Positive);
      const Matrix em = chevalley_generator(n, a, RootSign::Negative).matrix();
      CHECK((T_differential(g, e, Side::Right) - (e.matrix() * t + t * em)).norm() < 1e-13);
      for (Side side : {Side::Left, Side::Right}) {
        CHECK((T_differential(g, e, side) - T_differential_fd(g, e, side)).norm() < 1e-7);
      }
    }
    CHECK(verify_pushforwards(g).passed());
  }
}

TEST_CASE("T maps brackets to the symmetrized bracket") {
  Rng rng(6);
  const GroupElement g2 = random_group(2, rng, 0.5);
  CHECK(verify_rmpb(trace_power(1), trace_power(2), g2).passed());
  CHECK(verify_rmpb(coordinate_function(0, 0), coordinate_function(1, 1), g2).passed());
  CHECK(verify_rmpb(coordinate_function(0, 0).finite_difference_only(),
                    coordinate_function(1, 1).finite_difference_only(), g2)
            .passed());

  const GroupElement g3 = random_group(3, rng, 0.5);
  CHECK(verify_rmpb(trace_power(1), coordinate_function(0, 1), g3).passed());
  const SmoothFunction p = polynomial_function("p", random_uniform(3, rng),
                                               {{random_uniform(3, rng), random_uniform(3, rng)}});
  const SmoothFunction q = polynomial_function("q", random_uniform(3, rng));
  const Report r = verify_rmpb(p, q, g3);
  CHECK(r.passed());
}

TEST_CASE("factor-2 corollary for tau-invariant functions") {
  Rng rng(7);
  const GroupElement g2 = random_group(2, rng, 0.5);
  const SmoothFunction s11 = tau_symmetrized(coordinate_function(0, 0));
  const SmoothFunction s12 = tau_symmetrized(coordinate_function(0, 1));
  const Report same = verify_factor2_corollary(s12, s12, g2);
  CHECK(same.passed());
  CHECK(same.max_residual() == 0.0);
  CHECK(verify_factor2_corollary(s11, s12, g2).passed());

  const GroupElement g3 = random_group(3, rng, 0.5);
  CHECK(verify_factor2_corollary(tau_symmetrized(coordinate_function(0, 2)),
                                 tau_symmetrized(coordinate_function(1, 0)), g3)
            .passed());
  CHECK_THROWS_AS(verify_factor2_corollary(coordinate_function(0, 1), s12, g3), InputError);
}

TEST_CASE("tau is a Poisson map") {
  Rng rng(8);
  const GroupElement g = random_group(3, rng, 0.5);
  CHECK(verify_tau_poisson(coordinate_function(0, 1), coordinate_function(2, 0), g).passed());
}
