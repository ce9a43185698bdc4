#include "commands.hpp"

#include "symtoda/actionangle.hpp"
#include "symtoda/bruhat.hpp"
#include "symtoda/errors.hpp"
#include "symtoda/io.hpp"
#include "symtoda/poisson.hpp"
#include "symtoda/sampling.hpp"
#include "symtoda/suites.hpp"
#include "symtoda/trajectory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace symtoda::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Common {
  int n = 0;
  unsigned long long seed = 0;
  std::vector<std::string> tolerances;
  std::string out;
  std::string input;
};

void add_common(CLI::App& cmd, Common& c, bool with_input) {
  cmd.add_option("--n", c.n, "matrix size (2..8)");
  cmd.add_option("--seed", c.seed, "random seed");
  cmd.add_option("--tol", c.tolerances, "tolerance override name=value")->take_all();
  cmd.add_option("--out", c.out, "output path");
  if (with_input) cmd.add_option("--input", c.input, "matrix JSON {\"n\": n, \"rows\": [...]}");
}

void check_n(int n) {
  if (n < 2 || n > 8) throw InputError("n out of range (expected 2..8, got " + std::to_string(n) + ")");
}

Tolerances tolerances_from(const Common& c) {
  Tolerances tol;
  for (const std::string& t : c.tolerances) {
    const auto [name, value] = parse_tolerance_assignment(t);
    tol.override_with(name, value);
  }
  return tol;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// b0 from --input, or a seeded random generic point when no file is given.
ANElement load_or_sample_an(const Common& c) {
  if (!c.input.empty()) {
    const Matrix m = read_matrix_file(c.input);
    if (c.n != 0 && c.n != m.rows()) {
      throw InputError("--n " + std::to_string(c.n) + " does not match the input size " +
                       std::to_string(m.rows()));
    }
    check_n(static_cast<int>(m.rows()));
    if (!is_an_matrix(m)) {
      throw InputError("input is not upper triangular with positive diagonal and det 1");
    }
    return ANElement(m);
  }
  const int n = c.n == 0 ? 3 : c.n;
  check_n(n);
  Rng rng(c.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    ANElement b = random_an(n, rng, 0.5);
    try {
      spectral_decomposition(reflection_monodromy(b).matrix());
      angle_variables(b);
      return b;
    } catch (const DegeneracyError&) {
    }
  }
  throw NumericalError("could not sample a generic starting point");
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::vector<std::string> suites;
  int points = 20;
};

int cmd_verify(const VerifyArgs& a) {
  const int n = a.common.n == 0 ? 3 : a.common.n;
  check_n(n);
  SuiteConfig config{n, a.common.seed, tolerances_from(a.common), a.points};
  for (const std::string& s : a.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw InputError("unknown suite '" + s + "'");
    }
  }

  nlohmann::json out;
  bool ok = true;
  if (a.suites.size() == 1) {
    const Report r = run_suite(a.suites.front(), config);
    ok = r.passed();
    out = r.to_json();
  } else {
    const Report all = run_suites(a.suites, config);
    for (const auto& [name, info] : all.notes()["suites"].items()) {
      std::cerr << (info["passed"].get<bool>() ? "PASS " : "FAIL ") << name << "  max residual "
                << info["max_residual"].get<double>() << "\n";
    }
    ok = all.passed();
    out = all.to_json();
  }
  out["tolerances"] = config.tolerances.all();
  write_json(out, a.common.out);
  if (!ok) {
    for (const auto& c : out["checks"])
      if (!c["pass"].get<bool>())
        std::cerr << "failed: " << c["name"].get<std::string>() << " residual "
                  << c["residual"].dump() << " > tol " << c["tol"].get<double>() << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string hamiltonian = "1:1";
  double t0 = 0.0;
  double t1 = 2.0;
  int steps = 200;
};

std::string sidecar_path(const std::string& csv) {
  std::filesystem::path p(csv);
  return p.replace_extension(".json").string();
}

int cmd_simulate(const SimulateArgs& a) {
  if (a.steps < 1) throw InputError("--steps must be >= 1");
  if (!std::isfinite(a.t0) || !std::isfinite(a.t1) || a.t1 < a.t0) {
    throw InputError("need finite t0 <= t1");
  }
  const ReflectionHamiltonian h = parse_hamiltonian(a.hamiltonian);
  const ANElement b0 = load_or_sample_an(a.common);
  h.require_dimension(b0.n());

  const Trajectory traj = simulate(h, b0, a.t0, a.t1, a.steps);
  const std::string csv_path = a.common.out.empty() ? "trajectory.csv" : a.common.out;
  {
    std::ofstream csv(csv_path);
    if (!csv) throw InputError("cannot write '" + csv_path + "'");
    traj.write_csv(csv);
  }
  const auto fit = traj.theta_fit_residual();
  nlohmann::json side = {
      {"schema_version", kSchemaVersion},
      {"n", b0.n()},
      {"hamiltonian", h.name()},
      {"t0", a.t0},
      {"t1", a.t1},
      {"steps", a.steps},
      {"seed", a.common.input.empty() ? nlohmann::json(a.common.seed) : nlohmann::json(nullptr)},
      {"input", a.common.input.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.common.input)},
      {"b0", matrix_to_json(b0.matrix())},
      {"csv", csv_path},
      {"rows", traj.samples().size()},
      {"max_hamiltonian_drift", traj.max_hamiltonian_drift()},
      {"max_action_drift", traj.max_action_drift()},
      {"theta_fit_residual", fit ? nlohmann::json(*fit) : nlohmann::json(nullptr)},
      {"degenerate_samples", traj.degenerate_samples()},
  };
  write_json(side, sidecar_path(csv_path));
  std::cerr << "wrote " << csv_path << " (" << traj.samples().size() << " rows), action drift "
            << traj.max_action_drift() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_leaf(const Common& c) {
  if (c.input.empty()) throw InputError("leaf needs --input");
  const Matrix m = read_matrix_file(c.input);
  if (c.n != 0 && c.n != m.rows()) throw InputError("--n does not match the input size");
  check_n(static_cast<int>(m.rows()));
  if (!is_an_matrix(m)) {
    throw InputError("input is not upper triangular with positive diagonal and det 1");
  }
  const ANElement b(m);
  const Report r = verify_leaf_dimension(b);
  const CheckRecord& rec = r.checks().front();
  std::cout << "u = " << rec.meta["u"].get<std::string>() << "\n"
            << "length = " << rec.meta["length"] << "\n"
            << "torus_fixed_dimension = " << rec.meta["torus_fixed_dimension"] << "\n"
            << "predicted = " << rec.meta["predicted"] << "\n"
            << "measured = " << rec.meta["measured"] << "\n"
            << (r.passed() ? "PASS" : "FAIL") << "\n";
  if (!c.out.empty()) write_json(r.to_json(), c.out);
  return r.passed() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

struct OrbitArgs {
  Common common;
  std::vector<std::string> diagonals;
  int random_count = 0;
};

Vector checked_diagonal(const Vector& d, int n) {
  if (d.size() != n) {
    throw InputError("D has " + std::to_string(d.size()) + " entries, expected " + std::to_string(n));
  }
  return d;
}

int cmd_orbit_flow(const OrbitArgs& a) {
  const ANElement b0 = load_or_sample_an(a.common);
  const int n = b0.n();
  const Tolerances tol = tolerances_from(a.common);

  std::vector<Vector> ds;
  for (const std::string& s : a.diagonals) ds.push_back(checked_diagonal(parse_number_list(s), n));
  if (a.random_count < 0) throw InputError("--random must be >= 0");
  Rng rng(a.common.seed ^ 0x0b17f10eULL);
  for (int i = 0; i < a.random_count; ++i) ds.push_back(random_positive_diagonal(n, rng, 0.5));
  if (ds.empty()) ds.push_back(Vector::Ones(n));

  // Validates genericity once, before any translation.
  spectral_decomposition(reflection_monodromy(b0).matrix());

  Report report("orbit-flow", a.common.input.empty() ? std::optional(a.common.seed) : std::nullopt);
  nlohmann::json results = nlohmann::json::array();
  std::vector<LevelSetTranslation> translations;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const LevelSetTranslation lt = level_set_translate(b0, ds[i]);
    const std::string tag = "D" + std::to_string(i + 1);
    report.check(tag + "/spectrum_preserved", lt.spectrum_residual, tol["level_set"]);
    report.check(tag + "/witness_conjugation", lt.witness_residual, tol["level_set"]);
    results.push_back({{"d", std::vector<double>(ds[i].data(), ds[i].data() + n)},
                       {"b_prime", matrix_to_json(lt.b_prime.matrix())},
                       {"beta", matrix_to_json(lt.beta.matrix())},
                       {"spectrum_residual", lt.spectrum_residual},
                       {"witness_residual", lt.witness_residual},
                       {"symmetry_residual", lt.symmetry_residual}});
    translations.push_back(lt);
  }

  // Exploratory: does translating by D1 then D2 agree with translating by
  // D1 D2? Reported, never gating.
  nlohmann::json composition = nlohmann::json::array();
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    const Vector prod = ds[i].cwiseProduct(ds[i + 1]);
    const ANElement twice = level_set_translate(translations[i].b_prime, ds[i + 1]).b_prime;
    const ANElement once = level_set_translate(b0, prod).b_prime;
    composition.push_back({{"pair", {i + 1, i + 2}},
                           {"residual", max_abs(twice.matrix() - once.matrix())}});
  }
  report.note("composition_law", composition);

  nlohmann::json out = report.to_json();
  out["b0"] = matrix_to_json(b0.matrix());
  const Vector actions = actions_of(b0);
  out["actions"] = std::vector<double>(actions.data(), actions.data() + n);
  out["translations"] = results;
  write_json(out, a.common.out);
  return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Reflection Toda flows on SL_n(R)/SO(n): verification, simulation, leaves"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run verification suites and write a JSON report");
  add_common(*v, verify.common, false);
  v->add_option("--suite", verify.suites, "suite name (repeatable); default all")->take_all();
  v->add_option("--points", verify.points, "random points per sampled suite");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "sample a factorization-flow trajectory to CSV");
  add_common(*s, sim.common, true);
  s->add_option("--hamiltonian", sim.hamiltonian, "degree:coefficient list, e.g. 1:1,2:0.5");
  s->add_option("--t0", sim.t0, "start time")->capture_default_str();
  s->add_option("--t1", sim.t1, "end time")->capture_default_str();
  s->add_option("--steps", sim.steps, "intervals; steps + 1 rows are written")->capture_default_str();

  Common leaf;
  auto* l = app.add_subcommand("leaf", "classify the Bruhat cell and leaf dimension of b");
  add_common(*l, leaf, true);

  OrbitArgs orbit;
  auto* o = app.add_subcommand("orbit-flow", "translate b along its action level set");
  add_common(*o, orbit.common, true);
  o->add_option("--d", orbit.diagonals, "positive diagonal with det 1, comma separated (repeatable)");
  o->add_option("--random", orbit.random_count, "number of random diagonals to add");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (v->parsed()) return cmd_verify(verify);
    if (s->parsed()) return cmd_simulate(sim);
    if (l->parsed()) return cmd_leaf(leaf);
    if (o->parsed()) return cmd_orbit_flow(orbit);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegeneracyError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitFailure;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace symtoda::cli
