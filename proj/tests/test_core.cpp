#include <doctest.h>

#include "symtoda/elements.hpp"
#include "symtoda/errors.hpp"
#include "symtoda/linalg.hpp"
#include "symtoda/sampling.hpp"

#include <cmath>

using namespace symtoda;

TEST_CASE("matrix helpers") {
  const Matrix e = matrix_unit(3, 0, 2);
  CHECK(e(0, 2) == 1.0);
  CHECK(e.sum() == 1.0);

  const Matrix j = reversal(3);
  CHECK((j * j - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK(j(0, 2) == 1.0);

  Matrix m(2, 2);
  m << 3, 1, 2, 5;
  CHECK(traceless(m).trace() == doctest::Approx(0.0));
  CHECK(traceless(m)(0, 1) == 1.0);

  CHECK(unvec(vec(m), 2) == m);
  CHECK(vec(m)(1) == 1.0);  // row-major
}

TEST_CASE("expm of diagonal and nilpotent matrices") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::log(2.0);
  d(1, 1) = -std::log(2.0);
  const Matrix e = expm(d);
  CHECK(e(0, 0) == doctest::Approx(2.0));
  CHECK(e(1, 1) == doctest::Approx(0.5));

  const Matrix n = 3.0 * matrix_unit(2, 0, 1);
  const Matrix en = expm(n);
  CHECK(en(0, 1) == doctest::Approx(3.0));
  CHECK(en(0, 0) == doctest::Approx(1.0));

  Matrix huge = Matrix::Zero(2, 2);
  huge(0, 0) = 1e4;
  CHECK_THROWS_AS(expm(huge), NumericalError);
}

TEST_CASE("numeric rank separates noise from signal") {
  Matrix m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  const RankInfo info = numeric_rank(m);
  CHECK(info.rank == 2);
  CHECK(info.gap_decades() > 8);
  CHECK(numeric_rank(Matrix::Zero(3, 3)).rank == 0);
}

TEST_CASE("algebra element validation") {
  Matrix m(2, 2);
  m << 1, 2, 3, -1;
  CHECK(AlgebraElement(m).n() == 2);
  m(0, 0) = 2;
  CHECK_THROWS_AS(AlgebraElement{m}, InputError);
  CHECK(std::abs(AlgebraElement::project(m).matrix().trace()) < 1e-15);
}

TEST_CASE("group element determinant handling") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 1.0 + 1e-8;
  const GroupElement g(m);
  CHECK(g.matrix().determinant() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(GroupElement{2.0 * Matrix::Identity(2, 2)}, InputError);
  Matrix neg(2, 2);
  neg << 0, 1, 1, 0;
  CHECK_THROWS_AS(GroupElement{neg}, InputError);

  Matrix nonsquare = Matrix::Identity(2, 3);
  CHECK_THROWS_AS(GroupElement{nonsquare}, InputError);
}

TEST_CASE("AN and orthogonal validation") {
  Matrix b(2, 2);
  b << 2, 5, 0, 0.5;
  CHECK(is_an_matrix(b));
  CHECK_NOTHROW(ANElement{b});

  Matrix lower = b;
  lower(1, 0) = 1e-3;
  CHECK_FALSE(is_an_matrix(lower));
  CHECK_THROWS_AS(ANElement{lower}, InputError);

  Matrix neg(2, 2);
  neg << -2, 0, 0, -0.5;
  CHECK_THROWS_AS(ANElement{neg}, InputError);

  Matrix rot(2, 2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  rot << c, -s, s, c;
  CHECK_NOTHROW(OrthogonalElement{rot});
  CHECK_THROWS_AS(OrthogonalElement{b}, InputError);
  CHECK(ANElement::identity(3).matrix() == Matrix::Identity(3, 3));
}

TEST_CASE("samplers produce valid, reproducible elements") {
  Rng a(11), b(11);
  for (int n = 2; n <= 5; ++n) {
    const ANElement x = random_an(n, a), y = random_an(n, b);
    CHECK(x.matrix() == y.matrix());
    CHECK(is_an_matrix(x.matrix()));

    const OrthogonalElement k = random_rotation(n, a);
    random_rotation(n, b);
    CHECK((k.matrix().transpose() * k.matrix() - Matrix::Identity(n, n)).norm() < 1e-12);
    CHECK(k.matrix().determinant() == doctest::Approx(1.0));

    const Vector d = random_positive_diagonal(n, a);
    random_positive_diagonal(n, b);
    CHECK(d.prod() == doctest::Approx(1.0));
    CHECK(d.minCoeff() > 0.0);

    const AlgebraElement x2 = random_algebra(n, a);
    random_algebra(n, b);
    CHECK(std::abs(x2.matrix().trace()) < 1e-12);

    const GroupElement g = random_group(n, a);
    random_group(n, b);
    CHECK(g.matrix().determinant() == doctest::Approx(1.0));
  }
}
