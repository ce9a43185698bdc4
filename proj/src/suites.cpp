#include "symtoda/suites.hpp"

#include "symtoda/actionangle.hpp"
#include "symtoda/bruhat.hpp"
#include "symtoda/dynamics.hpp"
#include "symtoda/errors.hpp"
#include "symtoda/poisson.hpp"
#include "symtoda/rootdata.hpp"
#include "symtoda/sampling.hpp"
#include "symtoda/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace symtoda {

namespace {

// Keeps the worst record per check name over many samples, so a suite
// reports one line per property instead of one per sample.
class Worst {
 public:
  void add(const CheckRecord& c) {
    ++counts_[c.name];
    auto [it, fresh] = worst_.try_emplace(c.name, c);
    if (!fresh && worse(c, it->second)) it->second = c;
  }
  void add(const Report& r) {
    for (const CheckRecord& c : r.checks()) add(c);
  }
  void flush_into(Report& out) const {
    for (const auto& [name, c] : worst_) {
      nlohmann::json meta = c.meta;
      meta["samples"] = counts_.at(name);
      out.check(name, c.residual, c.tol, std::move(meta));
    }
  }

 private:
  static bool worse(const CheckRecord& a, const CheckRecord& b) {
    if (a.pass != b.pass) return !a.pass;
    if (std::isnan(a.residual)) return !std::isnan(b.residual);
    return a.residual > b.residual;
  }
  std::map<std::string, CheckRecord> worst_;
  std::map<std::string, int> counts_;
};

Rng suite_rng(const SuiteConfig& config, std::size_t index) {
  std::seed_seq seq{static_cast<unsigned>(config.seed & 0xffffffffu),
                    static_cast<unsigned>(config.seed >> 32), static_cast<unsigned>(index),
                    static_cast<unsigned>(config.n)};
  return Rng(seq);
}

CheckRecord record(std::string name, double residual, double tol, nlohmann::json meta = {}) {
  CheckRecord c;
  c.name = std::move(name);
  c.residual = residual;
  c.tol = tol;
  c.pass = !std::isnan(residual) && residual <= tol;
  c.meta = meta.is_null() ? nlohmann::json::object() : std::move(meta);
  return c;
}

SmoothFunction random_smooth_function(int n, Rng& rng, const std::string& name) {
  return polynomial_function(name, random_uniform(n, rng),
                             {{random_uniform(n, rng), random_uniform(n, rng)}});
}

SmoothFunction random_coordinate(int n, Rng& rng) {
  std::uniform_int_distribution<int> idx(0, n - 1);
  const int i = idx(rng);
  return coordinate_function(i, idx(rng));
}

// A point of AN whose spectrum and angle chart are comfortably generic.
ANElement random_generic_an(int n, Rng& rng, double scale = 0.5) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ANElement b = random_an(n, rng, scale);
    try {
      const SpectralData sd = spectral_decomposition(reflection_monodromy(b).matrix());
      bool spread = true;
      for (int a = 0; a + 1 < n; ++a)
        spread = spread && (sd.eigenvalues(a) - sd.eigenvalues(a + 1)) > 1e-2 * sd.eigenvalues(0);
      if (spread && angle_variables(b).r.minCoeff() > 1e-3) return b;
    } catch (const DegeneracyError&) {
    }
  }
  throw NumericalError("could not sample a generic point of AN");
}

double relative(double value, double scale) { return std::abs(value) / std::max(1.0, scale); }

// ---------------------------------------------------------------------------

Report r_identities(const SuiteConfig& c, Rng&) {
  const Tolerances& tol = c.tolerances;
  return verify_r_identities(c.n, tol["r_identity"], tol["cybe"]);
}

Report bracket_axioms(const SuiteConfig& c, Rng& rng) {
  const Tolerances& tol = c.tolerances;
  const int n = c.n;
  Worst worst;
  for (int s = 0; s < 50; ++s) {
    const Matrix g = random_group(n, rng, 0.5).matrix();
    const SmoothFunction f1 = random_coordinate(n, rng), f2 = random_coordinate(n, rng),
                         f3 = random_coordinate(n, rng);
    const double b12 = poisson_bracket(f1, f2, g), b21 = poisson_bracket(f2, f1, g);
    worst.add(record("antisymmetry", std::abs(b12 + b21), tol["antisymmetry"]));

    const double j1 = poisson_bracket(f1, bracket_function(f2, f3), g);
    const double j2 = poisson_bracket(f2, bracket_function(f3, f1), g);
    const double j3 = poisson_bracket(f3, bracket_function(f1, f2), g);
    const double jscale = std::abs(j1) + std::abs(j2) + std::abs(j3);
    worst.add(record("jacobi", relative(j1 + j2 + j3, jscale), tol["jacobi"],
                     {{"f", {f1.name(), f2.name(), f3.name()}}}));

    const double lhs = poisson_bracket(f1, product(f2, f3), g);
    const double t2 = poisson_bracket(f1, f2, g) * f3(g), t3 = f2(g) * poisson_bracket(f1, f3, g);
    worst.add(record("leibniz", relative(lhs - t2 - t3, std::abs(t2) + std::abs(t3)),
                     tol["leibniz"]));
  }
  for (int s = 0; s < c.points; ++s) {
    const Matrix a = random_positive_diagonal(n, rng, 1.0).asDiagonal();
    worst.add(record("torus_bivector_vanishes", bivector_tensor(a).norm(), tol["torus"]));
  }
  Report out("bracket-axioms");
  worst.flush_into(out);
  return out;
}

Report sigma_tau(const SuiteConfig& c, Rng& rng) {
  const Tolerances& tol = c.tolerances;
  const int n = c.n;
  Worst worst;
  for (int s = 0; s < c.points; ++s) {
    const GroupElement g = random_group(n, rng, 0.5);
    const SmoothFunction f1 = random_smooth_function(n, rng, "p1"),
                         f2 = random_smooth_function(n, rng, "p2");
    worst.add(verify_sigma_antipoisson(f1, f2, g, tol["sigma_antipoisson"]));
    worst.add(verify_tau_poisson(f1, f2, g, tol["tau_poisson"]));

    const Matrix& m = g.matrix();
    const double scale = std::max(1.0, max_abs(m) * max_abs(m));
    const Matrix t = reflection_monodromy(g).matrix();
    worst.add(record("monodromy_is_g_gT", max_abs(t - m * m.transpose()) / scale,
                     tol["monodromy"]));
    worst.add(record("monodromy_tau_invariant", max_abs(t - tau(GroupElement(t)).matrix()) / scale,
                     tol["monodromy"]));
    worst.add(record("sigma_involution",
                     max_abs(sigma(sigma(g)).matrix() - m) / std::max(1.0, max_abs(m)),
                     tol["monodromy"]));

    const IwasawaFactors f = iwasawa_factorize(g);
    worst.add(record("iwasawa_reconstructs",
                     max_abs(f.b.matrix() * f.k.matrix().transpose() - m) / std::max(1.0, max_abs(m)),
                     tol["iwasawa"]));
  }
  Report out("sigma-tau");
  worst.flush_into(out);
  return out;
}

Report an_tangency(const SuiteConfig& c, Rng& rng) {
  Worst worst;
  for (int s = 0; s < c.points; ++s)
    worst.add(verify_AN_tangency(random_an(c.n, rng, 0.5), c.tolerances["an_tangency"]));
  Report out("an-tangency");
  worst.flush_into(out);
  return out;
}

SmoothFunction eigenvalue_function(int a) {
  return SmoothFunction("h" + std::to_string(a + 1), [a](const Matrix& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g * g.transpose(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse()(a);
  });
}

Report kgk_commutativity(const SuiteConfig& c, Rng& rng) {
  const int n = c.n;
  const int top = std::max(2, n - 1);
  Worst worst;
  for (int s = 0; s < c.points; ++s) {
    const ANElement b = random_an(n, rng, 0.5);
    for (int j = 1; j <= top; ++j)
      for (int k = j + 1; k <= top; ++k)
        worst.add(verify_KGK_commutativity(j, k, b, c.tolerances["kgk"]));
  }
  // The eigenvalues of b bᵀ themselves are in involution.
  for (int s = 0; s < std::min(c.points, 5); ++s) {
    const ANElement b = random_generic_an(n, rng);
    for (int a = 0; a < n; ++a)
      for (int d = a + 1; d < n; ++d) {
        const SmoothFunction ha = eigenvalue_function(a), hd = eigenvalue_function(d);
        worst.add(record("actions_in_involution",
                         std::abs(poisson_bracket(ha, hd, b)) / bracket_scale(ha, hd, b),
                         c.tolerances["kgk"]));
      }
  }
  Report out("kgk-commutativity");
  worst.flush_into(out);
  return out;
}

Report rm_pb(const SuiteConfig& c, Rng& rng) {
  const int n = c.n;
  Worst worst;
  for (int s = 0; s < c.points; ++s) {
    const GroupElement g = random_group(n, rng, 0.5);
    const SmoothFunction f1 = random_smooth_function(n, rng, "p1"),
                         f2 = random_smooth_function(n, rng, "p2");
    worst.add(verify_rmpb(f1, f2, g, c.tolerances["rmpb"]));
    worst.add(verify_factor2_corollary(tau_symmetrized(f1), tau_symmetrized(f2), g,
                                       c.tolerances["factor2"]));
  }
  Report out("rm-pb");
  worst.flush_into(out);
  return out;
}

Report t_pushforward(const SuiteConfig& c, Rng& rng) {
  Worst worst;
  for (int s = 0; s < std::min(c.points, 5); ++s)
    worst.add(verify_pushforwards(random_group(c.n, rng, 0.5), c.tolerances["pushforward_fd"]));
  Report out("t-pushforward");
  worst.flush_into(out);
  return out;
}

std::vector<ReflectionHamiltonian> test_hamiltonians(int n) {
  std::vector<ReflectionHamiltonian> hs{ReflectionHamiltonian::power(1)};
  if (n >= 3) {
    hs.push_back(ReflectionHamiltonian::power(2));
    hs.push_back(ReflectionHamiltonian({{1, 1.0}, {2, 0.25}}));
  }
  return hs;
}

Report flow_crossval(const SuiteConfig& c, Rng& rng) {
  const Tolerances& tol = c.tolerances;
  const int n = c.n;
  Report out("flow-crossval");

  Matrix ref_b(2, 2);
  ref_b << 1.0, 1.0, 0.0, 1.0;
  const double lambda = calibrate_time_constant(ReflectionHamiltonian::power(1), ANElement(ref_b));
  out.note("time_constant", lambda);

  Worst worst;
  for (const ReflectionHamiltonian& h : test_hamiltonians(n)) {
    for (int s = 0; s < 2; ++s) {
      const ANElement b0 = random_generic_an(n, rng, 0.3);
      const double local = calibrate_time_constant(h, b0);
      worst.add(record("time_constant_invariant", std::abs(local / lambda - 1.0),
                       tol["lambda_invariance"], {{"H", h.name()}, {"lambda", local}}));

      const double t = 0.5;
      const ANElement vf = vector_field_flow(h, b0, t);
      const ANElement ff = factorization_flow(h, b0, lambda * t);
      worst.add(record("vector_field_agreement", max_abs(vf.matrix() - ff.matrix()),
                       tol["crossval"], {{"H", h.name()}, {"t", t}}));

      const Vector h0 = actions_of(b0);
      double drift = 0.0;
      for (double tt : {0.5, 1.0, 1.5, 2.0})
        drift = std::max(drift, max_abs(actions_of(factorization_flow(h, b0, tt)) - h0) / h0(0));
      worst.add(record("isospectral", drift, tol["isospectral"], {{"H", h.name()}}));

      const ANElement split = factorization_flow(h, factorization_flow(h, b0, 0.3), 0.4);
      const ANElement whole = factorization_flow(h, b0, 0.7);
      worst.add(record("group_property",
                       max_abs(split.matrix() - whole.matrix()) /
                           std::max(1.0, max_abs(whole.matrix())),
                       tol["group_property"], {{"H", h.name()}}));
    }
  }
  const auto hs = test_hamiltonians(n);
  const ReflectionHamiltonian& hb = hs.size() > 1 ? hs[1] : hs[0];
  for (int s = 0; s < 2; ++s) {
    worst.add(verify_flow_commutativity(hs[0], hb, random_generic_an(n, rng, 0.3), 0.7,
                                        tol["flow_commute"]));
  }
  if (hs.size() == 1) out.note("flow_commutativity", "only H1 is independent for n = 2");
  worst.flush_into(out);
  return out;
}

Report angle_linearity(const SuiteConfig& c, Rng& rng) {
  const Tolerances& tol = c.tolerances;
  const int n = c.n;
  Report out("angle-linearity");
  Worst worst;
  nlohmann::json deltas = nlohmann::json::object();
  for (int k = 1; k <= std::min(2, n - 1); ++k) {
    const ReflectionHamiltonian h = ReflectionHamiltonian::power(k);
    for (int s = 0; s < 2; ++s) {
      const ANElement b0 = random_generic_an(n, rng, 0.5);
      const double window = angle_window(h, b0);
      std::vector<double> times;
      for (int i = 0; i < 7; ++i) times.push_back(window * i / 6.0);
      const AngleLinearityResult res =
          verify_angle_linearity(h, b0, times, tol["angle_fit"], tol["slope_ratio"]);
      for (const CheckRecord& rec : res.report.checks()) {
        if (rec.name == "sum_r_equals_one") {
          worst.add(record(rec.name, rec.residual, tol["angle_sum"]));
        } else {
          worst.add(rec);
        }
      }
      deltas["H" + std::to_string(k)] = res.delta;

      const AngleData ad = angle_variables(b0);
      worst.add(record("sym2_representation_agrees", max_abs(ad.r - angle_variables_sym2(b0)),
                       tol["angle_sum"]));
    }
  }
  worst.add(shapovalov_check(n, 10, rng(), tol["shapovalov"]));
  worst.flush_into(out);
  out.note("delta", deltas);
  return out;
}

Report leaf_dimensions(const SuiteConfig& c, Rng& rng) {
  const int n = c.n;
  const double tol = c.tolerances["dimension"];
  Worst worst;

  // Parity of the prediction over the whole Weyl group (capped at S_6).
  int odd = 0;
  const auto group = all_permutations(std::min(n, 6));
  for (const WeylElement& u : group) {
    try {
      predicted_leaf_dimension(u);
    } catch (const std::logic_error&) {
      ++odd;
    }
  }
  worst.add(record("predicted_dimension_even", odd, tol,
                   {{"elements", static_cast<int>(group.size())}}));

  std::vector<WeylElement> cells{WeylElement::identity(n), WeylElement::coxeter(n),
                                 WeylElement::simple_reflection(n, 0)};
  {
    std::vector<int> w0(n);
    for (int i = 0; i < n; ++i) w0[i] = n - 1 - i;
    cells.emplace_back(std::move(w0));
  }
  if (n >= 4) {
    std::vector<int> pairs(n);
    std::iota(pairs.begin(), pairs.end(), 0);
    std::swap(pairs[0], pairs[1]);
    std::swap(pairs[2], pairs[3]);
    cells.emplace_back(std::move(pairs));
  }
  std::vector<WeylElement> distinct;
  for (const auto& u : cells)
    if (std::find(distinct.begin(), distinct.end(), u) == distinct.end()) distinct.push_back(u);

  std::set<std::string> measured_cells;
  for (const WeylElement& u : distinct) {
    for (int s = 0; s < c.points; ++s) {
      const ANElement b = sample_cell_point(u, rng);
      const WeylElement found = bruhat_cell(b);
      worst.add(record("cell_round_trip", found == u ? 0.0 : 1.0, tol,
                       {{"u", u.to_string()}, {"found", found.to_string()}}));
      const Report leaf = verify_leaf_dimension(b);
      worst.add(leaf);
      if (leaf.passed()) measured_cells.insert(u.to_string());
    }
    // B₋ u B₋' round trip with random lower-triangular factors.
    Matrix lower = random_uniform(n, rng).triangularView<Eigen::Lower>();
    Matrix lower2 = random_uniform(n, rng).triangularView<Eigen::Lower>();
    lower.diagonal().array() = lower.diagonal().array().abs() + 0.5;
    lower2.diagonal().array() = lower2.diagonal().array().abs() + 0.5;
    const WeylElement back = bruhat_cell_of(lower * u.matrix() * lower2);
    worst.add(record("lower_borel_round_trip", back == u ? 0.0 : 1.0, tol,
                     {{"u", u.to_string()}, {"found", back.to_string()}}));
  }
  const WeylElement cox = WeylElement::coxeter(n);
  worst.add(record("coxeter_dimension", std::abs(predicted_leaf_dimension(cox) - 2 * (n - 1)), tol));
  // S_2 has only two cells.
  const int wanted = std::min(3, static_cast<int>(all_permutations(n).size()));
  worst.add(record("distinct_cells_verified",
                   std::max(0, wanted - static_cast<int>(measured_cells.size())), tol,
                   {{"cells", measured_cells}, {"wanted", wanted}}));
  Report out("leaf-dimensions");
  worst.flush_into(out);
  return out;
}

Report orbit_intersection(const SuiteConfig& c, Rng& rng) {
  const int n = c.n;
  const Tolerances& tol = c.tolerances;
  Worst worst;
  for (int s = 0; s < c.points; ++s) {
    const ANElement b = random_generic_an(n, rng);
    const IntersectionDimension d = orbit_leaf_intersection(b);
    worst.add(record("intersection_dimension", std::abs(d.dimension - (n - 1)), tol["dimension"],
                     {{"dimension", d.dimension}, {"gap_decades", d.gap_decades}}));
  }
  for (int s = 0; s < std::min(c.points, 5); ++s) {
    const ANElement b = random_generic_an(n, rng);
    const LevelSetTranslation same = level_set_translate(b, Vector::Ones(n));
    worst.add(record("identity_translation", max_abs(same.b_prime.matrix() - b.matrix()),
                     tol["level_set"]));
    for (int r = 0; r < 2; ++r) {
      const LevelSetTranslation lt = level_set_translate(b, random_positive_diagonal(n, rng, 0.5));
      worst.add(record("spectrum_preserved", lt.spectrum_residual, tol["level_set"]));
      worst.add(record("witness_conjugation", lt.witness_residual, tol["level_set"]));
    }
  }
  Report out("orbit-intersection");
  worst.flush_into(out);
  return out;
}

using SuiteFn = std::function<Report(const SuiteConfig&, Rng&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"r-identities", r_identities},
      {"bracket-axioms", bracket_axioms},
      {"sigma-tau", sigma_tau},
      {"an-tangency", an_tangency},
      {"kgk-commutativity", kgk_commutativity},
      {"rm-pb", rm_pb},
      {"t-pushforward", t_pushforward},
      {"flow-crossval", flow_crossval},
      {"angle-linearity", angle_linearity},
      {"leaf-dimensions", leaf_dimensions},
      {"orbit-intersection", orbit_intersection},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& config) {
  if (config.n < 2 || config.n > 8) throw InputError("n out of range (expected 2..8)");
  if (config.points < 1) throw InputError("points must be positive");
  const auto& suites = registry();
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (suites[i].first != name) continue;
    Rng rng = suite_rng(config, i);
    const Report body = suites[i].second(config, rng);
    Report out(name, config.seed);
    for (const CheckRecord& c : body.checks()) out.check(c.name, c.residual, c.tol, c.meta);
    for (const auto& [key, value] : body.notes().items()) out.note(key, value);
    out.note("n", config.n);
    return out;
  }
  throw InputError("unknown suite '" + name + "'");
}

Report run_suites(const std::vector<std::string>& names, const SuiteConfig& config) {
  Report all("verify", config.seed);
  nlohmann::json summary = nlohmann::json::object();
  for (const std::string& name : names.empty() ? suite_names() : names) {
    const Report r = run_suite(name, config);
    summary[name] = {{"passed", r.passed()}, {"max_residual", r.max_residual()},
                     {"checks", r.checks().size()}};
    all.merge(r);
  }
  all.note("suites", summary);
  all.note("n", config.n);
  return all;
}

}  // namespace symtoda
