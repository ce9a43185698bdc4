#include <doctest.h>

#include "symtoda/actionangle.hpp"
#include "symtoda/errors.hpp"
#include "symtoda/sampling.hpp"

#include <cmath>

using namespace symtoda;

namespace {

ANElement unipotent2() {
  Matrix b(2, 2);
  b << 1, 1, 0, 1;
  return ANElement(b);
}

// Generic point: well separated spectrum and r_a away from zero.
ANElement generic_an(int n, Rng& rng) {
  for (;;) {
    const ANElement b = random_an(n, rng);
    try {
      if (angle_variables(b).r.minCoeff() > 1e-3) return b;
    } catch (const DegeneracyError&) {
    }
  }
}

std::vector<double> grid(double t1, int count) {
  std::vector<double> t;
  for (int i = 0; i < count; ++i) t.push_back(t1 * i / (count - 1));
  return t;
}

}  // namespace

TEST_CASE("spectral decomposition") {
  CHECK_THROWS_AS(spectral_decomposition(Matrix::Identity(3, 3)), DegeneracyError);
  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(spectral_decomposition(bad), InputError);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 4.0;
  const SpectralData sd = spectral_decomposition(d);
  CHECK(sd.eigenvalues(0) == doctest::Approx(4.0));
  CHECK(sd.eigenvalues(1) == doctest::Approx(0.25));
  CHECK((sd.projector(0) - matrix_unit(2, 1, 1)).norm() < 1e-15);
  CHECK((sd.projector(1) - matrix_unit(2, 0, 0)).norm() < 1e-15);

  Matrix m(2, 2);
  m << 2, 1, 1, 1;
  const SpectralData s2 = spectral_decomposition(m);
  const double r5 = std::sqrt(5.0);
  CHECK(s2.eigenvalues(0) == doctest::Approx((3 + r5) / 2));
  CHECK(s2.eigenvalues(1) == doctest::Approx((3 - r5) / 2));
  // Closed-form eigenvector (1, h - 2) normalized.
  for (int a = 0; a < 2; ++a) {
    Vector v(2);
    v << 1.0, s2.eigenvalues(a) - 2.0;
    v.normalize();
    CHECK((s2.projector(a) - v * v.transpose()).norm() < 1e-14);
  }

  Rng rng(1);
  const Matrix t = reflection_monodromy(random_an(4, rng)).matrix();
  const SpectralData s4 = spectral_decomposition(t);
  Matrix sum = Matrix::Zero(4, 4), rebuilt = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    sum += s4.projector(a);
    rebuilt += s4.eigenvalues(a) * s4.projector(a);
    for (int c = 0; c < 4; ++c) {
      const Matrix pq = s4.projector(a) * s4.projector(c);
      CHECK((pq - (a == c ? s4.projector(a) : Matrix::Zero(4, 4))).norm() < 1e-10);
    }
  }
  CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-10);
  CHECK((rebuilt - t).norm() < 1e-10 * t.norm());
  CHECK(s4.eigenvalues.prod() == doctest::Approx(1.0));
}

TEST_CASE("spherical vector and contravariance") {
  Rng rng(2);
  for (int n : {2, 3}) {
    const Matrix u = spherical_vector(n);
    CHECK(u == Matrix::Identity(n, n));
    for (int s = 0; s < 20; ++s) {
      const Matrix k = random_rotation(n, rng).matrix();
      CHECK((k * u * k.transpose() - u).norm() < 1e-14);
    }
    const Matrix b = random_an(n, rng).matrix();
    CHECK((b * u * b.transpose() - u).norm() > 1e-3);
  }
  const Matrix x = random_uniform(3, rng);
  const Matrix skew = x - x.transpose();
  const Matrix s = random_uniform(3, rng) + random_uniform(3, rng).transpose();
  const Matrix sym = s + s.transpose();
  CHECK(std::abs((sym2_action(skew, sym) * sym).trace()) < 1e-12);

  for (int n : {2, 4}) {
    const Report r = shapovalov_check(n, 20, 7);
    CHECK(r.passed());
    CHECK(r.max_residual() < 1e-12);
  }
}

TEST_CASE("angle variables") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 2;
  d(1, 1) = 0.25;
  d(2, 2) = 2;
  CHECK_THROWS_AS(angle_variables(ANElement(d)), DegeneracyError);

  const AngleData ad = angle_variables(unipotent2());
  CHECK(ad.r(0) == doctest::Approx(0.2763932022500210));
  CHECK(ad.r(1) == doctest::Approx(0.7236067977499790));
  CHECK(ad.theta(0, 1) == doctest::Approx(std::log(ad.r(0) / ad.r(1))));

  Rng rng(3);
  const ANElement b4 = generic_an(4, rng);
  CHECK(std::abs(angle_variables(b4).r.sum() - 1.0) < 1e-10);

  for (int n : {2, 3}) {
    const ANElement b = generic_an(n, rng);
    CHECK((angle_variables(b).r - angle_variables_sym2(b)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("angles evolve linearly along the flow") {
  const auto h1 = ReflectionHamiltonian::power(1);
  const ANElement b0 = unipotent2();
  const auto res = verify_angle_linearity(h1, b0, grid(angle_window(h1, b0), 9));
  CHECK(res.report.passed());
  // |slope| = Δ (h_1 - h_2) with Δ = 4 and h_1 - h_2 = √5.
  CHECK(std::abs(res.slopes(0, 1)) == doctest::Approx(4.0 * std::sqrt(5.0)).epsilon(1e-8));
  CHECK(res.delta == doctest::Approx(4.0).epsilon(1e-8));

  Rng rng(4);
  const ANElement b3 = generic_an(3, rng);
  const auto r1 = verify_angle_linearity(h1, b3, grid(angle_window(h1, b3), 7));
  CHECK(r1.report.passed());
  const Vector h = actions_of(b3);
  CHECK(r1.slopes(0, 1) / r1.slopes(0, 2) == doctest::Approx((h(0) - h(1)) / (h(0) - h(2))).epsilon(1e-6));
  CHECK(r1.slopes(1, 2) / r1.slopes(0, 2) == doctest::Approx((h(1) - h(2)) / (h(0) - h(2))).epsilon(1e-6));

  const auto h2 = ReflectionHamiltonian::power(2);
  const auto r2 = verify_angle_linearity(h2, b3, grid(angle_window(h2, b3), 7));
  CHECK(r2.report.passed());
  auto sq = [](double x) { return x * x; };
  CHECK(r2.slopes(0, 1) / r2.slopes(0, 2) ==
        doctest::Approx((sq(h(0)) - sq(h(1))) / (sq(h(0)) - sq(h(2)))).epsilon(1e-6));
  CHECK(r2.delta == doctest::Approx(8.0).epsilon(1e-6));

  CHECK_THROWS_AS(verify_angle_linearity(h1, b0, {0.0, 0.1}), InputError);
}

TEST_CASE("level-set translation") {
  Rng rng(5);
  const ANElement b = generic_an(3, rng);
  const LevelSetTranslation same = level_set_translate(b, Vector::Ones(3));
  CHECK(same.b_prime.matrix() == b.matrix());

  std::vector<Matrix> images;
  for (int s = 0; s < 3; ++s) {
    const LevelSetTranslation lt = level_set_translate(b, random_positive_diagonal(3, rng));
    CHECK(lt.spectrum_residual < 1e-9);
    CHECK(lt.witness_residual < 1e-9);
    const Matrix beta = lt.beta.matrix();
    const Matrix m = reflection_monodromy(b).matrix();
    const Matrix mp = reflection_monodromy(lt.b_prime).matrix();
    CHECK((mp - beta * m * beta.inverse()).norm() < 1e-9 * m.norm());
    images.push_back(lt.b_prime.matrix());
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) CHECK((images[i] - images[j]).norm() > 1e-8);

  // Translations compose like a group action of the diagonal torus.
  Vector d1(3), d2(3);
  d1 << 2.0, 0.5, 1.0;
  d2 << 0.8, 1.0, 1.25;
  const Matrix a = level_set_translate(level_set_translate(b, d1).b_prime, d2).b_prime.matrix();
  const Matrix c = level_set_translate(level_set_translate(b, d2).b_prime, d1).b_prime.matrix();
  CHECK((a - c).norm() < 1e-10);

  Vector bad(3);
  bad << 2.0, 1.0, 1.0;
  CHECK_THROWS_AS(level_set_translate(b, bad), InputError);
  CHECK_THROWS_AS(level_set_translate(b, Vector::Ones(2)), InputError);
  bad << -1.0, -1.0, 1.0;
  CHECK_THROWS_AS(level_set_translate(b, bad), InputError);
}

TEST_CASE("orbit and leaf tangent spaces meet in dimension n - 1") {
  Matrix u(2, 2), a(2, 2);
  u << 1, 1, 0, 1;
  a << 2, 0, 0, 0.5;
  CHECK(orbit_leaf_intersection_dim(ANElement(u * a)) == 1);
  Rng rng(6);
  CHECK(orbit_leaf_intersection_dim(generic_an(3, rng)) == 2);
  const IntersectionDimension d5 = orbit_leaf_intersection(generic_an(5, rng));
  CHECK(d5.dimension == 4);
  CHECK(d5.gap_decades > 2);
}
