#include <doctest.h>

#include "symtoda/errors.hpp"
#include "symtoda/io.hpp"
#include "symtoda/report.hpp"
#include "symtoda/trajectory.hpp"

#include <cmath>
#include <sstream>

using namespace symtoda;

TEST_CASE("report status and JSON shape") {
  Report r("demo", 42ULL);
  r.check("small", 1e-9, 1e-6);
  CHECK(r.passed());
  r.check("exact", 0.0, 0.0);
  CHECK(r.passed());
  r.check("nan", NAN, 1.0);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(r.throw_if_failed(), VerificationFailure);

  const auto j = r.to_json();
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["suite"] == "demo");
  CHECK(j["seed"] == 42);
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["name"] == "small");
  CHECK(j["checks"][0].contains("residual"));
  CHECK(j["checks"][0].contains("tol"));
  CHECK(j["checks"][2]["residual"].is_null());

  Report outer("all");
  outer.merge(r);
  CHECK(outer.checks()[1].name == "demo/exact");
  CHECK(outer.to_json()["seed"].is_null());

  Report e("e");
  e.expect("flag", true);
  e.note("k", 3);
  CHECK(e.passed());
  CHECK(e.notes()["k"] == 3);
}

TEST_CASE("tolerances") {
  Tolerances t;
  CHECK(t["jacobi"] == 1e-6);
  t.override_with("jacobi", 1e-3);
  CHECK(t["jacobi"] == 1e-3);
  CHECK_THROWS_AS(t.override_with("nope", 1.0), InputError);
  CHECK_THROWS_AS(t.override_with("jacobi", 0.0), InputError);
  CHECK_THROWS_AS(t.override_with("jacobi", -1.0), InputError);
  CHECK_THROWS_AS(t["nope"], InputError);
}

TEST_CASE("matrix JSON") {
  const auto j = nlohmann::json::parse(R"({"n": 2, "rows": [[1, 2], [0, 1]]})");
  const Matrix m = matrix_from_json(j);
  CHECK(m(0, 1) == 2.0);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);

  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"n": 3, "rows": [[1, 2], [0, 1]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"n": 2, "rows": [[1, 2], [0]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"n": 2, "rows": [[1, "x"], [0, 1]]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"rows": []})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([1, 2])")), InputError);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("command-line value parsing") {
  const ReflectionHamiltonian h = parse_hamiltonian("1:1,2:0.5");
  CHECK(h.coefficients().at(1) == 1.0);
  CHECK(h.coefficients().at(2) == 0.5);
  CHECK_THROWS_AS(parse_hamiltonian("1"), InputError);
  CHECK_THROWS_AS(parse_hamiltonian("1.5:1"), InputError);
  CHECK_THROWS_AS(parse_hamiltonian("1:x"), InputError);
  CHECK_THROWS_AS(parse_hamiltonian("1:1,1:2"), InputError);
  CHECK_THROWS_AS(parse_hamiltonian("1:0"), InputError);

  const auto [name, value] = parse_tolerance_assignment("jacobi=1e-3");
  CHECK(name == "jacobi");
  CHECK(value == 1e-3);
  CHECK_THROWS_AS(parse_tolerance_assignment("jacobi"), InputError);
  CHECK_THROWS_AS(parse_tolerance_assignment("=1"), InputError);
  CHECK_THROWS_AS(parse_tolerance_assignment("a=1e-3x"), InputError);

  const Vector v = parse_number_list("2,0.5,1");
  CHECK(v.size() == 3);
  CHECK(v(1) == 0.5);
  CHECK_THROWS_AS(parse_number_list("1,,2"), InputError);
  CHECK_THROWS_AS(parse_number_list("1,inf"), InputError);
}

TEST_CASE("trajectory sampling and CSV") {
  Matrix b(2, 2);
  b << 1, 1, 0, 1;
  const auto h1 = ReflectionHamiltonian::power(1);
  const Trajectory traj = simulate(h1, ANElement(b), 0.0, 2.0, 200);
  CHECK(traj.samples().size() == 201);
  CHECK(traj.max_action_drift() < 1e-9);
  CHECK(traj.max_hamiltonian_drift() < 1e-9);
  REQUIRE(traj.theta_fit_residual().has_value());
  CHECK(*traj.theta_fit_residual() < 1e-6);
  CHECK(traj.degenerate_samples() == 0);

  std::ostringstream os;
  traj.write_csv(os);
  std::istringstream is(os.str());
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header == "t,b_1_1,b_1_2,b_2_2,H,h_1,h_2,r_1,r_2,theta_1_2");
  CHECK(first.rfind("0,1,1,1,3,", 0) == 0);

  const Trajectory single = simulate(h1, ANElement(b), 0.0, 0.0, 1);
  CHECK(single.samples().size() == 1);
  CHECK(single.samples().front().b.matrix() == b);

  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2.0, 0.5;
  CHECK_THROWS_AS(simulate(h1, ANElement(d), 0.0, 1.0, 10), DegeneracyError);
  CHECK_THROWS_AS(simulate(h1, ANElement(b), 1.0, 0.0, 10), InputError);
  CHECK_THROWS_AS(simulate(h1, ANElement(b), 0.0, 1.0, 0), InputError);
}
