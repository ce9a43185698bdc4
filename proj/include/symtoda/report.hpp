#pragma once

// Verification records and reports. Every verify_* operation returns a Report;
// the CLI serializes them as JSON.

#include <Eigen/Core>
#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symtoda {

inline constexpr int kSchemaVersion = 1;

/// {"n": n, "rows": [[...], ...]}
template <typename M>
nlohmann::json matrix_to_json(const M& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", std::move(rows)}};
}

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  nlohmann::json meta = nlohmann::json::object();
};

class Report {
 public:
  explicit Report(std::string suite, std::optional<unsigned long long> seed = {});

  const std::string& suite() const { return suite_; }
  std::optional<unsigned long long> seed() const { return seed_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }

  /// Records residual <= tol as a pass. NaN residuals always fail.
  CheckRecord& check(std::string name, double residual, double tol,
                     nlohmann::json meta = nlohmann::json::object());
  /// Records a non-numeric outcome (residual 0 on pass, 1 on failure).
  CheckRecord& expect(std::string name, bool ok,
                      nlohmann::json meta = nlohmann::json::object());
  /// Records a value that is reported but never gates the overall status.
  void note(std::string key, nlohmann::json value);

  /// Appends the records of `other`, prefixing names with its suite.
  void merge(const Report& other);

  bool passed() const;
  double max_residual() const;
  const nlohmann::json& notes() const { return notes_; }

  /// Throws VerificationFailure naming the first failed check.
  void throw_if_failed() const;

  nlohmann::json to_json() const;

 private:
  std::string suite_;
  std::optional<unsigned long long> seed_;
  std::vector<CheckRecord> checks_;
  nlohmann::json notes_ = nlohmann::json::object();
};

/// Named tolerances with the defaults used throughout the verification
/// suites; individual entries may be overridden (CLI `--tol name=value`).
class Tolerances {
 public:
  Tolerances();

  /// Throws InputError for unknown names or non-positive values.
  void override_with(const std::string& name, double value);
  double operator[](const std::string& name) const;
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace symtoda
