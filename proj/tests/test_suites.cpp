#include <doctest.h>

#include "symtoda/errors.hpp"
#include "symtoda/suites.hpp"

using namespace symtoda;

TEST_CASE("every suite passes at small n") {
  for (int n : {2, 3}) {
    SuiteConfig config{n, 3, Tolerances{}, 5};
    for (const std::string& name : suite_names()) {
      const Report r = run_suite(name, config);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(r.passed());
      CHECK_FALSE(r.checks().empty());
      CHECK(r.seed() == 3ULL);
    }
  }
}

TEST_CASE("reports are deterministic and ordered") {
  SuiteConfig config{3, 11, Tolerances{}, 4};
  const Report a = run_suites({}, config);
  const Report b = run_suites({}, config);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.checks().size() > 40);

  // A suite run alone matches its slice of the full run.
  const Report alone = run_suite("rm-pb", config);
  for (const CheckRecord& c : alone.checks()) {
    bool found = false;
    for (const CheckRecord& d : a.checks())
      if (d.name == "rm-pb/" + c.name) found = d.residual == c.residual;
    CHECK(found);
  }
  const Report other = run_suites({}, SuiteConfig{3, 12, Tolerances{}, 4});
  CHECK(other.to_json().dump() != a.to_json().dump());
}

TEST_CASE("a broken tolerance fails the run") {
  SuiteConfig config{3, 1, Tolerances{}, 3};
  config.tolerances.override_with("isospectral", 1e-30);
  CHECK_FALSE(run_suite("flow-crossval", config).passed());
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(run_suite("nope", SuiteConfig{}), InputError);
  CHECK_THROWS_AS(run_suite("r-identities", SuiteConfig{1, 0, Tolerances{}, 1}), InputError);
  CHECK_THROWS_AS(run_suite("r-identities", SuiteConfig{9, 0, Tolerances{}, 1}), InputError);
  CHECK(suite_names().size() == 11);
}
