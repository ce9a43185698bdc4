#include "symtoda/report.hpp"

#include "symtoda/errors.hpp"

#include <algorithm>
#include <cmath>

namespace symtoda {

Report::Report(std::string suite, std::optional<unsigned long long> seed)
    : suite_(std::move(suite)), seed_(seed) {}

CheckRecord& Report::check(std::string name, double residual, double tol,
                           nlohmann::json meta) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.residual = residual;
  rec.tol = tol;
  rec.pass = !std::isnan(residual) && residual <= tol;
  rec.meta = std::move(meta);
  checks_.push_back(std::move(rec));
  return checks_.back();
}

CheckRecord& Report::expect(std::string name, bool ok, nlohmann::json meta) {
  return check(std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(meta));
}

void Report::note(std::string key, nlohmann::json value) {
  notes_[std::move(key)] = std::move(value);
}

void Report::merge(const Report& other) {
  for (CheckRecord rec : other.checks_) {
    rec.name = other.suite_ + "/" + rec.name;
    checks_.push_back(std::move(rec));
  }
  if (!other.notes_.empty()) notes_[other.suite_] = other.notes_;
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

double Report::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks_) m = std::max(m, c.residual);
  return m;
}

void Report::throw_if_failed() const {
  for (const auto& c : checks_) {
    if (!c.pass) {
      throw VerificationFailure(suite_ + ": " + c.name + " residual " +
                                std::to_string(c.residual) + " exceeds " +
                                std::to_string(c.tol));
    }
  }
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = suite_;
  j["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json rec = {{"name", c.name},
                          {"residual", std::isfinite(c.residual)
                                           ? nlohmann::json(c.residual)
                                           : nlohmann::json(nullptr)},
                          {"tol", c.tol},
                          {"pass", c.pass}};
    if (!c.meta.empty()) rec["meta"] = c.meta;
    j["checks"].push_back(std::move(rec));
  }
  if (!notes_.empty()) j["notes"] = notes_;
  return j;
}

Tolerances::Tolerances()
    : values_{
          {"r_identity", 1e-12},      {"cybe", 1e-12},
          {"antisymmetry", 0.0},      {"jacobi", 1e-6},
          {"leibniz", 1e-6},          {"torus", 1e-12},
          {"an_tangency", 1e-10},     {"sigma_antipoisson", 1e-6},
          {"tau_poisson", 1e-6},      {"kgk", 1e-6},
          {"rmpb", 1e-6},             {"factor2", 1e-6},
          {"pushforward_fd", 1e-7},
          {"monodromy", 1e-12},       {"iwasawa", 1e-10},
          {"isospectral", 1e-9},      {"crossval", 1e-5},
          {"lambda_invariance", 1e-4}, {"flow_commute", 1e-7},
          {"group_property", 1e-8},   {"angle_sum", 1e-10},
          {"angle_fit", 1e-6},        {"slope_ratio", 1e-6},
          {"shapovalov", 1e-10},      {"level_set", 1e-9},
          {"dimension", 0.0},
      } {}

void Tolerances::override_with(const std::string& name, double value) {
  auto it = values_.find(name);
  if (it == values_.end()) throw InputError("unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InputError("tolerance '" + name + "' must be positive");
  }
  it->second = value;
}

double Tolerances::operator[](const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw InputError("unknown tolerance '" + name + "'");
  return it->second;
}

}  // namespace symtoda
