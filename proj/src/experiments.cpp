#include "virial_lab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "virial_lab/diagnostics.hpp"
#include "virial_lab/fft.hpp"
#include "virial_lab/hartree_kernels.hpp"
#include "virial_lab/special_solutions.hpp"
#include "virial_lab/spectra.hpp"
#include "virial_lab/virial.hpp"

namespace virial_lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t resolve_seed(const Json& cfg, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  return get_or<std::uint64_t>(cfg, "seed", 0);
}

ExperimentResult start(ExperimentKind kind, const Json& cfg, const RunOptions& opt) {
  ExperimentResult r;
  r.kind = kind;
  r.config = cfg;
  r.seed = resolve_seed(cfg, opt);
  r.config["seed"] = r.seed;
  r.config["kind"] = kind_name(kind);
  return r;
}

const Json& models_of(const Json& cfg) {
  const Json& models = require(cfg, "models", "config");
  if (!models.is_array() || models.empty()) throw ConfigError("config.models must be a non-empty list");
  return models;
}

DiagnosticsOptions diagnostics_options(const Json& cfg) {
  DiagnosticsOptions d;
  d.interval = parse_interval(cfg);
  if (cfg.contains("weights")) {
    const Json& w = cfg.at("weights");
    d.lambda_virial = get_or(w, "lambda_virial", 2.0);
    if (w.contains("lambda_lower_bound")) d.lambda_lower_bound = w.at("lambda_lower_bound").get<double>();
  }
  d.contamination_band = get_or(cfg, "contamination_band", 0.0);
  return d;
}

struct SeriesRun {
  std::vector<DiagnosticsRecord> records;
  std::vector<double> lower_rhs;
  std::vector<double> l2_alpha_rate;
  Trajectory traj;
};

SeriesRun run_series(const ComplexField& u0, const ModelSpec& model, const EvolveConfig& ev,
                     const DiagnosticsOptions& dopt, std::vector<Monitor> extra = {}) {
  DiagnosticsRecorder rec(u0.grid, model, dopt);
  std::vector<Monitor> monitors{rec.monitor()};
  for (auto& m : extra) monitors.push_back(std::move(m));
  SeriesRun out;
  try {
    out.traj = evolve(u0, ev, model, monitors);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("evolve: ") + e.what());
  }
  rec.finalize();
  out.records = rec.records();
  out.lower_rhs = rec.lower_rhs();
  out.l2_alpha_rate = rec.l2_alpha_rate();
  return out;
}

double evenness_defect_complex(const ComplexField& u) {
  double d = 0.0, m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    d = std::max(d, std::abs(u[j] - u[u.grid.mirror(j)]));
    m = std::max(m, std::abs(u[j]));
  }
  return m > 0.0 ? d / m : 0.0;
}

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::string tag(double v) { return format_double(v); }

Json verdict_json(const Verdict& v) {
  Json j;
  j["name"] = v.name;
  j["group"] = v.group;
  j["relation"] = v.relation;
  j["measured"] = std::isfinite(v.measured) ? Json(v.measured) : Json(nullptr);
  j["threshold"] = v.threshold;
  if (v.threshold_hi) j["threshold_hi"] = *v.threshold_hi;
  j["pass"] = v.pass;
  j["note"] = v.note;
  return j;
}

// Fraction of samples with rhs >= c h1.
double lower_bound_fraction(const std::vector<double>& rhs, const std::vector<DiagnosticsRecord>& rec, double c) {
  if (rec.empty()) return 1.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < rec.size(); ++i)
    if (rhs[i] >= c * rec[i].h1_alpha_sq) ++ok;
  return static_cast<double>(ok) / static_cast<double>(rec.size());
}

}  // namespace

Verdict make_verdict(std::string name, std::string group, std::string relation, double measured, double threshold,
                     std::string note, std::optional<double> threshold_hi) {
  Verdict v{std::move(name), std::move(group), std::move(relation), measured, threshold, threshold_hi, false,
            std::move(note)};
  if (std::isfinite(measured) || std::isinf(measured)) {
    if (v.relation == "<=")
      v.pass = measured <= threshold;
    else if (v.relation == ">=")
      v.pass = measured >= threshold;
    else if (v.relation == "<")
      v.pass = measured < threshold;
    else if (v.relation == ">")
      v.pass = measured > threshold;
    else if (v.relation == "==")
      v.pass = measured == threshold;
    else if (v.relation == "in")
      v.pass = threshold_hi && measured >= threshold && measured <= *threshold_hi;
  }
  return v;
}

bool ExperimentResult::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict* ExperimentResult::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

int resolve_threads(int requested) {
  if (const char* env = std::getenv("VIRIAL_LAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1, requested);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------

ExperimentResult run_conservation(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Conservation, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const Json& models = models_of(cfg);
  const EvolveConfig base = parse_evolve(require(cfg, "evolve", "config"));
  const std::vector<double> dts = number_list(cfg, "dts", {1e-3, 5e-4});
  if (dts.size() != 2) throw ConfigError("conservation needs exactly two time steps in 'dts'");
  const DiagnosticsOptions dopt = diagnostics_options(cfg);
  const double tol_mass = tolerance(cfg, "mass_rel", 1e-10);
  const double tol_mom = tolerance(cfg, "momentum", 1e-8);
  const double ratio_lo = tolerance(cfg, "energy_ratio_lo", 3.5);
  const double ratio_hi = tolerance(cfg, "energy_ratio_hi", 4.5);

  struct Job {
    std::size_t model;
    std::size_t dt;
  };
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < models.size(); ++m)
    for (std::size_t k = 0; k < dts.size(); ++k) jobs.push_back({m, k});
  std::vector<SeriesRun> runs(jobs.size());
  std::vector<ModelSpec> specs;
  for (const auto& m : models) specs.push_back(parse_model(m, g));
  const ComplexField u0 = make_datum(require(cfg, "data", "config"), g);

  parallel_for(jobs.size(), opt.threads, [&](std::size_t i) {
    EvolveConfig ev = base;
    ev.dt = dts[jobs[i].dt];
    // Keep the sampling instants identical across the two step sizes.
    ev.sample_every = static_cast<std::size_t>(std::llround(base.sample_every * base.dt / ev.dt));
    runs[i] = run_series(u0, specs[jobs[i].model], ev, dopt);
  });

  CsvTable table({"model", "dt", "mass_drift_rel", "energy_drift", "momentum_drift", "aborted"});
  std::vector<std::array<double, 3>> drift(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& rec = runs[i].records;
    double dm = 0.0, de = 0.0, dp = 0.0;
    for (const auto& r : rec) {
      dm = std::max(dm, std::abs(r.mass - rec.front().mass));
      de = std::max(de, std::abs(r.energy - rec.front().energy));
      dp = std::max(dp, std::abs(r.momentum - rec.front().momentum));
    }
    dm = ratio_or_zero(dm, rec.front().mass);
    drift[i] = {dm, de, dp};
    const std::string label = model_label(models[jobs[i].model], jobs[i].model);
    table.row().add(label).add(dts[jobs[i].dt]).add(dm).add(de).add(dp).add(
        static_cast<long long>(runs[i].traj.aborted));
    if (i == 0)
      res.files.emplace_back("series.csv", series_csv(rec));
    else
      res.files.emplace_back("series_" + label + "_dt" + tag(dts[jobs[i].dt]) + ".csv", series_csv(rec));
  }
  res.files.emplace_back("results.csv", table.str());

  for (std::size_t m = 0; m < models.size(); ++m) {
    const std::string label = model_label(models[m], m);
    const auto& a = drift[2 * m];
    const auto& b = drift[2 * m + 1];
    const bool aborted = runs[2 * m].traj.aborted || runs[2 * m + 1].traj.aborted;
    res.verdicts.push_back(make_verdict(label + ".completed", "conservation", "==", aborted ? 1.0 : 0.0, 0.0,
                                        "evolution finished without blow-up"));
    res.verdicts.push_back(make_verdict(label + ".mass_drift_rel", "conservation", "<=", std::max(a[0], b[0]),
                                        tol_mass, "mass conservation; both substeps are L2 isometries"));
    res.verdicts.push_back(make_verdict(label + ".momentum_drift", "conservation", "<=", std::max(a[2], b[2]),
                                        tol_mom, "momentum conservation"));
    res.verdicts.push_back(make_verdict(label + ".energy_drift_ratio", "conservation", "in", ratio_or_zero(a[1], b[1]),
                                        ratio_lo, "energy drift is second order in dt (ratio under dt halving)",
                                        ratio_hi));
    res.details["energy_drift"][label] = {a[1], b[1]};
  }
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_virial_check(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::VirialCheck, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const DiagnosticsOptions dopt = diagnostics_options(cfg);
  const VirialWeights W = make_virial_weights(g, dopt.lambda_virial);

  if (cfg.contains("models")) {
    const Json& models = models_of(cfg);
    const ComplexField u0 = make_datum(require(cfg, "data", "config"), g);
    const std::vector<double> dts = number_list(cfg, "dts", {4e-3, 2e-3, 1e-3});
    if (dts.size() < 2) throw ConfigError("virial-check needs at least two time steps");
    const double lo = tolerance(cfg, "order_lo", 1.8), hi = tolerance(cfg, "order_hi", 2.2);

    std::vector<std::vector<VirialIdentityCheck>> checks(models.size(), std::vector<VirialIdentityCheck>(dts.size()));
    std::vector<ModelSpec> specs;
    for (const auto& m : models) specs.push_back(parse_model(m, g));
    parallel_for(models.size() * dts.size(), opt.threads, [&](std::size_t i) {
      const std::size_t m = i / dts.size(), k = i % dts.size();
      checks[m][k] = check_virial_identity(u0, specs[m], W, dts[k]);
    });

    CsvTable table({"model", "dt", "lhs", "rhs", "defect", "order"});
    for (std::size_t m = 0; m < models.size(); ++m) {
      const std::string label = model_label(models[m], m);
      for (std::size_t k = 0; k < dts.size(); ++k) {
        const auto& c = checks[m][k];
        table.row().add(label).add(dts[k]).add(c.lhs).add(c.rhs).add(c.defect);
        if (k == 0) {
          table.add(std::string());
          continue;
        }
        const double order =
            std::log(checks[m][k - 1].defect / c.defect) / std::log(dts[k - 1] / dts[k]);
        table.add(order);
        res.verdicts.push_back(make_verdict(label + ".order_" + std::to_string(k - 1) + "_" + std::to_string(k),
                                            "virial-identity", "in", order, lo,
                                            "finite-difference -dI/dt converges to the virial right-hand side at "
                                            "second order in dt",
                                            hi));
      }
    }
    res.files.emplace_back("results.csv", table.str());
  }

  if (cfg.contains("sign_sweep")) {
    const Json& s = cfg.at("sign_sweep");
    const auto samples = get_or<std::size_t>(s, "samples", 100);
    const std::vector<double> exps = number_list(s, "exponents", {2.0, 3.0, 4.0});
    const double amp_max = get_or(s, "amplitude_max", 2.0);
    std::mt19937_64 rng(res.seed);
    std::uniform_real_distribution<double> amp(0.05, amp_max);
    CsvTable table({"p", "sample", "nonlinear_term", "weighted_power"});
    for (double p : exps) {
      const ModelSpec model = Semilinear{NonlinearitySpec::defocusing(p)};
      double worst = kInf;
      for (std::size_t i = 0; i < samples; ++i) {
        ComplexField u = random_complex_field(g, rng);
        const double A = amp(rng);
        for (auto& v : u.values) v *= A;
        const double term = virial_terms(u, W, model).nonlinear;
        double power = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) power += W.phi_x[j] * std::pow(std::norm(u[j]), 0.5 * (p + 1.0));
        power *= g.dx();
        worst = std::min(worst, term);
        table.row().add(p).add(static_cast<long long>(i)).add(term).add(power);
      }
      res.verdicts.push_back(make_verdict("defocusing_sign.p" + tag(p), "defocusing-sign", ">=", worst, 0.0,
                                          "defocusing nonlinear virial contribution is nonnegative"));
    }
    res.files.emplace_back("sign_sweep.csv", table.str());
  }
  if (res.verdicts.empty()) throw ConfigError("virial-check needs 'models' or 'sign_sweep'");
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_coercivity(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Coercivity, cfg, opt);
  std::mt19937_64 rng(res.seed);
  CsvTable table({"check", "lambda", "sample", "value", "reference"});

  if (cfg.contains("transform")) {
    const Json& t = cfg.at("transform");
    const Grid g = parse_grid(require(t, "grid", "transform"));
    const auto samples = get_or<std::size_t>(t, "samples", 200);
    const double tol = tolerance(cfg, "transform_rel", 1e-8);
    std::optional<PotentialSpec> pot;
    if (t.contains("potential")) {
      const Json& p = t.at("potential");
      pot = PotentialSpec::from_shape(g, get_or(p, "mu", 0.0), parse_shape(p));
    }
    for (double lambda : number_list(t, "lambdas", {2.0, 100.0})) {
      const VirialWeights W = make_virial_weights(g, lambda);
      double worst = 0.0, worst_pot = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        const RealField w = random_smooth_field(g, rng);
        const BilinearReport b = bilinear_B(w, W);
        const double err = std::abs(b.B - b.B_transformed) / (1.0 + std::abs(b.B));
        worst = std::max(worst, err);
        table.row().add(std::string("transform")).add(lambda).add(static_cast<long long>(i)).add(b.B).add(
            b.B_transformed);
        if (pot) {
          const BilinearReport bp = bilinear_B(w, W, &*pot);
          worst_pot = std::max(worst_pot, std::abs(bp.B - bp.B_transformed) / (1.0 + std::abs(bp.B)));
          table.row().add(std::string("transform_potential")).add(lambda).add(static_cast<long long>(i)).add(bp.B).add(
              bp.B_transformed);
        }
      }
      res.verdicts.push_back(make_verdict("transform.lambda" + tag(lambda), "transform-identity", "<=", worst, tol,
                                          "B(w) equals the transformed form of alpha w"));
      if (pot)
        res.verdicts.push_back(make_verdict("transform_potential.lambda" + tag(lambda), "transform-identity", "<=",
                                            worst_pot, tol,
                                            "with a potential, B(w) equals L + K of alpha w, K carrying +mu V0"));
    }
  }

  if (cfg.contains("odd")) {
    const Json& o = cfg.at("odd");
    const std::vector<double> lambdas = number_list(o, "lambdas", {1.0, 2.0, 10.0, 100.0});
    const auto samples = get_or<std::size_t>(o, "samples", 200);
    const auto N = get_or<std::size_t>(o, "N", 4096);
    const double factor = get_or(o, "L_factor", 40.0), cap = get_or(o, "L_cap", 400.0);
    const double tol = tolerance(cfg, "odd_margin", 1e-8);
    const std::size_t per = (samples + lambdas.size() - 1) / lambdas.size();
    double worst = kInf;
    for (double lambda : lambdas) {
      const Grid g = make_grid(std::min(factor * lambda, cap), N);
      const VirialWeights W = make_virial_weights(g, lambda);
      for (std::size_t i = 0; i < per; ++i) {
        const RealField v = random_smooth_field(g, rng, Parity::Odd);
        const BilinearReport b = transformed_form(v, W);
        double l2 = 0.0;
        for (double x : v.values) l2 += x * x;
        const double scale = b.grad_sq + l2 * g.dx();
        worst = std::min(worst, (b.B_transformed - 1.5 * b.grad_sq) / scale);
        table.row().add(std::string("odd")).add(lambda).add(static_cast<long long>(i)).add(b.B_transformed).add(
            1.5 * b.grad_sq);
      }
    }
    res.verdicts.push_back(make_verdict("odd_coercivity.min_margin", "odd-coercivity", ">=", worst, -tol,
                                        "transformed form dominates 3/2 int v_x^2 on odd v (margin / scale)"));
  }

  if (cfg.contains("weighted")) {
    const Json& w = cfg.at("weighted");
    const Grid g = parse_grid(require(w, "grid", "weighted"));
    const double lambda = get_or(w, "lambda", 100.0);
    const auto samples = get_or<std::size_t>(w, "samples", 200);
    const double ratio_max = tolerance(cfg, "weighted_ratio_max", 1e3);
    const VirialWeights W = make_virial_weights(g, lambda);
    double worst = 0.0, violations = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const ComplexField u = random_complex_field(g, rng, Parity::Odd);
      const CoercivityBound c = coercivity_weighted_bound(u, W);
      if (c.violation) violations += 1.0;
      if (c.ratio) worst = std::max(worst, *c.ratio);
      table.row().add(std::string("weighted")).add(lambda).add(static_cast<long long>(i)).add(c.lhs).add(c.rhs);
    }
    res.details["weighted_constant_estimate"] = worst;
    res.verdicts.push_back(make_verdict("weighted.violations", "weighted-coercivity", "==", violations, 0.0,
                                        "B(u1) + B(u2) > 0 for odd u"));
    res.verdicts.push_back(make_verdict("weighted.max_ratio", "weighted-coercivity", "<=", worst, ratio_max,
                                        "empirical constant C in |u|^2_{H1_alpha} <= C (B(u1) + B(u2))"));

    // Even direction for comparison: the sech^2 well has an even ground state.
    const RealField s = sample_real(g, [](double x) { return 1.0 / std::cosh(x); });
    const BilinearReport b = bilinear_B(s, W);
    res.details["even_sech"] = {{"B", b.B}, {"three_halves_grad_sq", 1.5 * b.grad_sq}};
  }
  if (res.verdicts.empty()) throw ConfigError("coercivity needs 'transform', 'odd' or 'weighted'");
  res.files.emplace_back("results.csv", table.str());
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_spectrum(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Spectrum, cfg, opt);
  const std::vector<double> lambdas = number_list(cfg, "lambdas", {1.0, 2.0, 10.0, 100.0});
  const auto N = get_or<std::size_t>(cfg, "N", 4096);
  const double factor = get_or(cfg, "L_factor", 40.0), cap = get_or(cfg, "L_cap", 400.0);
  const double tol = tolerance(cfg, "odd_eigenvalue", 1e-8);

  std::vector<EigenReport> full(lambdas.size()), odd(lambdas.size());
  parallel_for(lambdas.size(), opt.threads, [&](std::size_t i) {
    const double lambda = lambdas[i];
    const Grid g = make_grid(std::min(factor * lambda, cap), N);
    const RealField W = sample_real(g, [&](double x) {
      const double s = 1.0 / std::cosh(x / lambda);
      return -2.0 / (lambda * lambda) * s * s;
    });
    full[i] = negative_eigencount(SchrodingerProblem::from_field(W, Sector::Full));
    odd[i] = negative_eigencount(SchrodingerProblem::from_field(W, Sector::Odd));
  });

  CsvTable table({"lambda", "L", "N", "full_count", "odd_count", "e0", "e1", "e2", "lowest_odd"});
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    const auto& f = full[i];
    table.row().add(lambda).add(std::min(factor * lambda, cap)).add(static_cast<long long>(N));
    table.add(static_cast<long long>(f.negative_count)).add(static_cast<long long>(odd[i].negative_count));
    for (std::size_t k = 0; k < 3; ++k) table.add(k < f.lowest_eigenvalues.size() ? f.lowest_eigenvalues[k] : 0.0);
    table.add(odd[i].lowest_eigenvalues.front());
    const std::string p = "lambda" + tag(lambda);
    res.verdicts.push_back(make_verdict(p + ".full_count", "spectrum", "==", static_cast<double>(f.negative_count),
                                        1.0, "one negative eigenvalue on the full line, with an even eigenfunction"));
    res.verdicts.push_back(make_verdict(p + ".odd_count", "spectrum", "==",
                                        static_cast<double>(odd[i].negative_count), 0.0,
                                        "no negative eigenvalue in the odd sector"));
    res.verdicts.push_back(make_verdict(p + ".lowest_odd", "spectrum", ">=", odd[i].lowest_eigenvalues.front(), -tol,
                                        "odd-sector coercivity of -d^2/dx^2 - (2/lambda^2) sech^2(x/lambda)"));
    if (f.coarse_grid) res.details["warnings"].push_back(p + ": " + f.warning);
  }
  res.files.emplace_back("results.csv", table.str());

  // Index formula: operator -d^2/dx^2 - gamma sech^2(x/a) with nu = h = 1.
  CsvTable itab({"gamma", "a", "nu", "h", "value", "bound", "raw", "count", "numeric_count"});
  const Json cases = cfg.contains("index_cases") ? cfg.at("index_cases")
                                                 : Json::array({{{"gamma", 2.0}, {"a", 1.0}, {"expect", 1}}});
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Json& c = cases[i];
    const double gamma = get_or(c, "gamma", 2.0), a = get_or(c, "a", 1.0);
    const double nu = get_or(c, "nu", 1.0), h = get_or(c, "h", 1.0);
    const IndexFormulaResult f = index_formula(gamma, nu, a, h);
    const Grid g = make_grid(40.0 * a, N);
    const RealField W = sample_real(g, [&](double x) { return -gamma * std::pow(1.0 / std::cosh(x / a), 2); });
    const std::size_t numeric = negative_eigencount(SchrodingerProblem::from_field(W), 1).negative_count;
    itab.row().add(gamma).add(a).add(nu).add(h).add(f.value).add(f.bound).add(static_cast<long long>(f.raw));
    itab.add(static_cast<long long>(f.count)).add(static_cast<long long>(numeric));
    const std::string p = "index.value" + tag(f.value);
    if (c.contains("expect"))
      res.verdicts.push_back(make_verdict(p + ".formula", "index-formula", "==", static_cast<double>(f.count),
                                          c.at("expect").get<double>(), "bound-state index of the sech^2 well"));
    if (get_or(c, "compare_numeric", false))
      res.verdicts.push_back(make_verdict(p + ".numeric", "index-formula", "==", static_cast<double>(numeric),
                                          static_cast<double>(f.count), "index formula agrees with the eigencount"));
    if (numeric != f.count)
      res.details["index_discrepancies"].push_back(
          {{"gamma", gamma}, {"a", a}, {"formula", f.count}, {"numeric", numeric}});
  }
  res.files.emplace_back("index.csv", itab.str());
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_simon(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Simon, cfg, opt);
  const double lambda = get_or(cfg, "lambda", 2.0);
  const std::vector<double> mus = number_list(cfg, "mu", {1e-3, 1e-2, 5e-2});
  SimonOptions so;
  so.dx = get_or(cfg, "dx", so.dx);
  so.box_factor = get_or(cfg, "box_factor", so.box_factor);
  so.min_half_length = get_or(cfg, "min_half_length", so.min_half_length);
  const Grid dual = parse_grid(cfg.contains("dual_grid") ? cfg.at("dual_grid") : Json{{"L", 40.0}, {"N", 4096}});
  const double tol_dual = tolerance(cfg, "dual_formula", 1e-8);
  const Json& shapes = require(cfg, "shapes", "config");

  std::vector<SimonTable> tables(shapes.size());
  parallel_for(shapes.size(), opt.threads,
               [&](std::size_t i) { tables[i] = simon_check(parse_shape(shapes[i]), lambda, mus, so); });

  CsvTable table({"shape", "amplitude", "mu", "L", "integral_V0", "full_count", "odd_count", "even_count",
                  "lowest_full", "lowest_odd"});
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const PotentialShape shape = parse_shape(shapes[i]);
    const std::string p = shape.name() + "_" + tag(shape.amplitude);
    const SimonV0 v0 = simon_V0(sample_real(dual, [&](double x) { return shape.value(x); }),
                                sample_real(dual, [&](double x) { return shape.derivative(x); }), lambda);
    res.verdicts.push_back(make_verdict(p + ".dual_formula", "weak-coupling", "<=",
                                        std::abs(v0.integral_direct - v0.integral_cosh), tol_dual,
                                        "int V0 equals int cosh(2x/lambda) V"));
    if (v0.divergent) res.details["warnings"].push_back(p + ": condition on cosh(2x) decay violated on grid");
    if (shapes[i].contains("expect_sign")) {
      const double sgn = shapes[i].at("expect_sign").get<double>();
      res.verdicts.push_back(make_verdict(p + ".integral_sign", "weak-coupling", sgn < 0 ? "<" : ">",
                                          tables[i].integral_V0, 0.0, "sign of int V0"));
    }
    const double expect_full = tables[i].integral_V0 <= 0.0 ? 1.0 : 0.0;
    for (const auto& r : tables[i].rows) {
      table.row().add(shape.name()).add(shape.amplitude).add(r.mu).add(r.box_half_length).add(tables[i].integral_V0);
      table.add(static_cast<long long>(r.full_count)).add(static_cast<long long>(r.odd_count));
      table.add(static_cast<long long>(r.even_count)).add(r.lowest_full).add(r.lowest_odd);
      const std::string q = p + ".mu" + tag(r.mu);
      res.verdicts.push_back(make_verdict(q + ".full_count", "weak-coupling", "==", static_cast<double>(r.full_count),
                                          expect_full,
                                          "weak coupling: a unique negative eigenvalue iff int V0 <= 0"));
      res.verdicts.push_back(make_verdict(q + ".odd_count", "weak-coupling", "==", static_cast<double>(r.odd_count),
                                          0.0, "the weak-coupling bound state is even"));
    }
    res.details["integral_V0"][p] = tables[i].integral_V0;
  }
  res.files.emplace_back("results.csv", table.str());
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_decay(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Decay, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const ModelSpec model = parse_model(require(cfg, "model", "config"), g);
  const ComplexField u0 = make_datum(require(cfg, "data", "config"), g);
  if (oddness_defect(u0) > 1e-12) throw ConfigError("decay requires odd data");
  const EvolveConfig ev = parse_evolve(require(cfg, "evolve", "config"));
  const DiagnosticsOptions dopt = diagnostics_options(cfg);

  const SeriesRun run = run_series(u0, model, ev, dopt);
  const auto& rec = run.records;
  res.files.emplace_back("series.csv", series_csv(rec));

  const double f2 = tolerance(cfg, "decay_factor_l2", 0.1);
  const double finf = tolerance(cfg, "decay_factor_inf", 0.2);
  const double C = tolerance(cfg, "rate_constant", 1.0);
  const double contam = tolerance(cfg, "contamination", 1e-8);
  const double odd_tol = tolerance(cfg, "oddness", 1e-10);

  res.verdicts.push_back(make_verdict("completed", "local-decay", "==", run.traj.aborted ? 1.0 : 0.0, 0.0,
                                      run.traj.aborted ? run.traj.abort_reason : "evolution reached t_end"));
  const double l2_ratio = ratio_or_zero(rec.back().l2_on_I, rec.front().l2_on_I);
  const double linf_ratio = ratio_or_zero(rec.back().linf_on_I, rec.front().linf_on_I);
  res.verdicts.push_back(make_verdict("l2_on_I_ratio", "local-decay", "<=", l2_ratio, f2,
                                      "local L2 decay on the interval (desk-scale factor at t_end)"));
  res.verdicts.push_back(make_verdict("linf_on_I_ratio", "local-decay", "<=", linf_ratio, finf,
                                      "local L-infinity decay on the interval (desk-scale factor at t_end)"));
  double rate = 0.0, edge = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const double bound = C * rec[i].h1_alpha_sq;
    const double r = std::abs(run.l2_alpha_rate[i]);
    if (bound > 0.0)
      rate = std::max(rate, r / bound);
    else if (r > 0.0)
      rate = kInf;
    edge = std::max(edge, rec[i].boundary_contamination);
    odd = std::max(odd, rec[i].oddness_defect);
  }
  res.verdicts.push_back(make_verdict("l2_alpha_rate", "local-decay", "<=", rate, 1.0,
                                      "|d/dt int sech |u|^2| <= C |u|^2_{H1_alpha} at every sample"));
  res.verdicts.push_back(make_verdict("boundary_contamination", "local-decay", "<=", edge, contam,
                                      "field stays small near the box edge"));
  res.verdicts.push_back(make_verdict("oddness_defect", "local-decay", "<=", odd, odd_tol,
                                      "oddness is preserved by the flow"));

  if (cfg.contains("lower_bound")) {
    if (!dopt.lambda_lower_bound) throw ConfigError("lower_bound needs weights.lambda_lower_bound");
    const Json& lb = cfg.at("lower_bound");
    const double c_test = get_or(lb, "C_test", 0.1);
    const double frac = lower_bound_fraction(run.lower_rhs, rec, c_test);
    res.verdicts.push_back(make_verdict("lower_bound_fraction", "virial-lower-bound", ">=", frac,
                                        get_or(lb, "min_fraction", 0.99),
                                        "-dI/dt >= C_test |u|^2_{H1_alpha} along the flow"));
    CsvTable t({"t", "minus_dIdt", "h1_alpha_sq"});
    for (std::size_t i = 0; i < rec.size(); ++i) t.row().add(rec[i].t).add(run.lower_rhs[i]).add(rec[i].h1_alpha_sq);
    res.files.emplace_back("lower_bound.csv", t.str());
  }

  res.details["l2_on_I_ratio"] = l2_ratio;
  res.details["linf_on_I_ratio"] = linf_ratio;
  if (const auto* h = std::get_if<Hartree>(&model))
    res.details["kernel_tail"] = std::pow(g.half_length(), -h->spec.a) * rec.front().mass;
  if (run.traj.aborted) res.details["aborted_at"] = run.traj.aborted_at;
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_counterexample(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::Counterexample, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const ModelSpec model = parse_model(require(cfg, "model", "config"), g);
  const Json& data = require(cfg, "data", "config");
  const ComplexField u0 = make_datum(data, g);
  if (evenness_defect_complex(u0) > 1e-12) throw ConfigError("counterexample requires even data");
  const EvolveConfig ev = parse_evolve(require(cfg, "evolve", "config"));
  const DiagnosticsOptions dopt = diagnostics_options(cfg);

  std::vector<double> dev_t, dev;
  double peak0 = 0.0;
  for (const auto& v : u0.values) peak0 = std::max(peak0, std::abs(v));
  Monitor profile = [&](const ComplexField& u) {
    double d = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) d = std::max(d, std::abs(std::abs(u[j]) - std::abs(u0[j])));
    dev_t.push_back(u.t);
    dev.push_back(ratio_or_zero(d, peak0));
  };
  const SeriesRun run = run_series(u0, model, ev, dopt, {profile});
  const auto& rec = run.records;
  res.files.emplace_back("series.csv", series_csv(rec));
  {
    CsvTable t({"t", "profile_deviation"});
    for (std::size_t i = 0; i < dev.size(); ++i) t.row().add(dev_t[i]).add(dev[i]);
    res.files.emplace_back("profile.csv", t.str());
  }
  res.verdicts.push_back(make_verdict("completed", "counterexample", "==", run.traj.aborted ? 1.0 : 0.0, 0.0,
                                      run.traj.aborted ? run.traj.abort_reason : "evolution reached t_end"));

  const std::string type = get_or<std::string>(data, "type", "");
  const std::string check = get_or<std::string>(cfg, "check", type == "breather" ? "recurrence" : "band");
  if (check == "band") {
    double lo = kInf, hi = 0.0;
    for (const auto& r : rec) {
      const double q = ratio_or_zero(r.l2_on_I, rec.front().l2_on_I);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const double band_lo = tolerance(cfg, "band_lo", 0.9), band_hi = tolerance(cfg, "band_hi", 1.1);
    res.verdicts.push_back(make_verdict("l2_on_I_min", "counterexample", "in", lo, band_lo,
                                        "even standing wave does not decay locally", band_hi));
    res.verdicts.push_back(make_verdict("l2_on_I_max", "counterexample", "in", hi, band_lo,
                                        "even standing wave does not decay locally", band_hi));
  } else if (check == "recurrence") {
    const Json rc = cfg.contains("recurrence") ? cfg.at("recurrence") : Json::object();
    const auto periods = get_or<std::size_t>(rc, "periods", 3);
    const double rise = get_or(rc, "rise", 0.2);
    const double window = get_or(rc, "window", 0.05);
    const double tol = tolerance(cfg, "recurrence", 0.05);
    // Period: first local minimum of the deviation after it has risen above `rise`.
    double period = 0.0;
    bool risen = false;
    for (std::size_t i = 1; i + 1 < dev.size(); ++i) {
      if (dev[i] > rise) risen = true;
      if (risen && dev[i] < rise && dev[i] <= dev[i - 1] && dev[i] <= dev[i + 1]) {
        // Parabolic refinement through three equally spaced samples.
        const double h = dev_t[i + 1] - dev_t[i];
        const double den = dev[i - 1] - 2.0 * dev[i] + dev[i + 1];
        const double shift = den > 0.0 ? 0.5 * h * (dev[i - 1] - dev[i + 1]) / den : 0.0;
        period = dev_t[i] + shift;
        break;
      }
    }
    res.details["measured_period"] = period;
    res.verdicts.push_back(make_verdict("period_found", "counterexample", ">", period, 0.0,
                                        "modulus profile returns close to the initial one"));
    for (std::size_t k = 1; k <= periods; ++k) {
      double best = kInf;
      if (period > 0.0) {
        const double c = static_cast<double>(k) * period;
        for (std::size_t i = 0; i < dev.size(); ++i)
          if (std::abs(dev_t[i] - c) <= window * period) best = std::min(best, dev[i]);
      }
      res.verdicts.push_back(make_verdict("recurrence_" + std::to_string(k), "counterexample", "<=", best, tol,
                                          "small even breather is time periodic, so it does not decay"));
    }
  } else {
    throw ConfigError("counterexample check must be 'band' or 'recurrence'");
  }
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_spacetime_bound(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::SpacetimeBound, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const ModelSpec model = parse_model(require(cfg, "model", "config"), g);
  const Json& data = require(cfg, "data", "config");
  const std::vector<double> eps = number_list(cfg, "eps", {0.025, 0.05, 0.1});
  const EvolveConfig ev = parse_evolve(require(cfg, "evolve", "config"));
  const DiagnosticsOptions dopt = diagnostics_options(cfg);
  if (!dopt.lambda_lower_bound) throw ConfigError("spacetime-bound needs weights.lambda_lower_bound");
  const double c_bound = tolerance(cfg, "C_bound", 10.0);
  const double spread_max = tolerance(cfg, "spread_max", 1.5);
  const double c_test = tolerance(cfg, "C_test", 0.1);
  const double min_frac = tolerance(cfg, "min_fraction", 0.99);
  const double i_factor = tolerance(cfg, "I_factor", 1.0);

  std::vector<SeriesRun> runs(eps.size());
  parallel_for(eps.size(), opt.threads, [&](std::size_t i) {
    Json d = data;
    d["eps"] = eps[i];
    const ComplexField u0 = make_datum(d, g);
    if (oddness_defect(u0) > 1e-12) throw ConfigError("spacetime-bound requires odd data");
    runs[i] = run_series(u0, model, ev, dopt);
  });

  CsvTable table({"eps", "cumulative_over_eps2", "lower_bound_fraction", "max_abs_I_over_eps2", "aborted"});
  double rmax = 0.0, rmin = kInf;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto& rec = runs[i].records;
    const double e2 = eps[i] * eps[i];
    const double ratio = rec.back().cumulative_spacetime / e2;
    const double frac = lower_bound_fraction(runs[i].lower_rhs, rec, c_test);
    double imax = 0.0;
    for (const auto& r : rec) imax = std::max(imax, std::abs(r.I));
    rmax = std::max(rmax, ratio);
    rmin = std::min(rmin, ratio);
    if (eps[i] > eps[largest]) largest = i;
    table.row().add(eps[i]).add(ratio).add(frac).add(imax / e2).add(static_cast<long long>(runs[i].traj.aborted));
    const std::string p = "eps" + tag(eps[i]);
    res.verdicts.push_back(make_verdict(p + ".completed", "spacetime-bound", "==", runs[i].traj.aborted ? 1.0 : 0.0,
                                        0.0, "evolution reached t_end"));
    res.verdicts.push_back(make_verdict(p + ".lower_bound_fraction", "virial-lower-bound", ">=", frac, min_frac,
                                        "-dI/dt >= C_test |u|^2_{H1_alpha} along the flow"));
    res.verdicts.push_back(make_verdict(p + ".I_bound", "spacetime-bound", "<=", imax / e2, i_factor,
                                        "|I(t)| <= |u|_{L2} |u_x|_{L2} <= eps^2"));
    res.files.emplace_back("series_eps" + tag(eps[i]) + ".csv", series_csv(rec));
  }
  res.files.insert(res.files.begin(), {"series.csv", series_csv(runs[largest].records)});
  res.files.emplace_back("results.csv", table.str());
  res.verdicts.push_back(make_verdict("ratio_max", "spacetime-bound", "<=", rmax, c_bound,
                                      "int_0^T |u|^2_{H1_alpha} dt <= C eps^2 across the ladder"));
  res.verdicts.push_back(make_verdict("ratio_spread", "spacetime-bound", "<=", ratio_or_zero(rmax, rmin), spread_max,
                                      "the space-time ratio is nearly independent of eps"));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_momentum_identity(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::MomentumIdentity, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const ModelSpec model = parse_model(require(cfg, "model", "config"), g);
  const Json& data = require(cfg, "data", "config");
  if (!data.is_array() || data.empty()) throw ConfigError("momentum-identity needs a list of data");
  const EvolveConfig base = parse_evolve(require(cfg, "evolve", "config"));
  if (base.sponge) throw ConfigError("momentum-identity runs without a sponge");
  const std::vector<double> dts = number_list(cfg, "dts", {base.dt});
  const DiagnosticsOptions dopt = diagnostics_options(cfg);
  const double tol_slope = tolerance(cfg, "slope_rel", 1e-4);
  const double tol_drift = tolerance(cfg, "drift", 1e-8);
  const double tol_loc = tolerance(cfg, "localization", 1e-10);
  const double zero_p = tolerance(cfg, "zero_momentum", 1e-12);

  struct Out {
    double deviation = 0.0, drift = 0.0, edge = 0.0, p0 = 0.0;
    std::vector<DiagnosticsRecord> records;
  };
  std::vector<Out> outs(data.size() * dts.size());
  parallel_for(outs.size(), opt.threads, [&](std::size_t i) {
    const std::size_t d = i / dts.size(), k = i % dts.size();
    const ComplexField u0 = make_datum(data[d], g);
    EvolveConfig ev = base;
    ev.dt = dts[k];
    ev.sample_every = static_cast<std::size_t>(std::llround(base.sample_every * base.dt / ev.dt));
    std::vector<double> t, X, P;
    double edge = 0.0;
    Monitor m = [&](const ComplexField& u) {
      double x1 = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) {
        x1 += g.x(j) * std::norm(u[j]);
        if (std::abs(g.x(j)) >= 0.5 * g.half_length()) edge = std::max(edge, std::abs(u[j]));
      }
      t.push_back(u.t);
      X.push_back(x1 * g.dx());
      P.push_back(momentum(u));
    };
    const SeriesRun run = run_series(u0, model, ev, dopt, {m});
    const std::vector<double> slope = fd_derivative(t, X);
    Out& o = outs[i];
    o.p0 = P.front();
    for (std::size_t s = 0; s < t.size(); ++s) {
      o.deviation = std::max(o.deviation, std::abs(slope[s] + 2.0 * P[s]));
      o.drift = std::max(o.drift, std::abs(X[s] - X.front()));
    }
    o.edge = edge;
    o.records = run.records;
  });

  CsvTable table({"datum", "dt", "momentum", "slope_deviation_rel", "x_moment_drift", "edge_max"});
  for (std::size_t d = 0; d < data.size(); ++d) {
    const std::string label = get_or<std::string>(data[d], "label", "datum_" + std::to_string(d));
    double dev = 0.0, drift = 0.0, edge = 0.0;
    const bool moving = std::abs(outs[d * dts.size()].p0) > zero_p;
    for (std::size_t k = 0; k < dts.size(); ++k) {
      const Out& o = outs[d * dts.size() + k];
      const double rel = moving ? o.deviation / std::abs(2.0 * o.p0) : o.deviation;
      dev = std::max(dev, rel);
      drift = std::max(drift, o.drift);
      edge = std::max(edge, o.edge);
      table.row().add(label).add(dts[k]).add(o.p0).add(rel).add(o.drift).add(o.edge);
      if (d == 0 && k == 0)
        res.files.emplace_back("series.csv", series_csv(o.records));
      else
        res.files.emplace_back("series_" + label + "_dt" + tag(dts[k]) + ".csv", series_csv(o.records));
      res.details["deviation"][label].push_back(rel);
    }
    const bool localized = edge <= tol_loc;
    res.verdicts.push_back(make_verdict(label + ".localized", "momentum-identity", "<=", edge, tol_loc,
                                        localized ? "datum stays inside [-L/2, L/2]" : "localization violated"));
    if (moving)
      res.verdicts.push_back(make_verdict(label + ".slope", "momentum-identity", "<=", dev, tol_slope,
                                          "d/dt int x |u|^2 = -2P"));
    else
      res.verdicts.push_back(make_verdict(label + ".drift", "momentum-identity", "<=", drift, tol_drift,
                                          "int x |u|^2 is constant when P = 0"));
  }
  res.files.emplace_back("results.csv", table.str());
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_hartree_positivity(const Json& cfg, const RunOptions& opt) {
  ExperimentResult res = start(ExperimentKind::HartreePositivity, cfg, opt);
  const Grid g = parse_grid(require(cfg, "grid", "config"));
  const std::vector<double> as = number_list(cfg, "a", {0.25, 0.5, 0.75});
  const auto samples = get_or<std::size_t>(cfg, "samples", 100);
  const double lambda = get_or(cfg, "lambda", 2.0);
  const double spread = get_or(cfg, "spread", 5.0);
  const double tol_pos = tolerance(cfg, "positivity", 1e-12);
  const double tol_sym = tolerance(cfg, "sym_asym", 1e-10);
  const double tol_fft = tolerance(cfg, "fft_direct", 1e-10);
  const VirialWeights W = make_virial_weights(g, lambda);

  std::mt19937_64 rng(res.seed);
  std::vector<RealField> rhos;
  for (std::size_t i = 0; i < samples; ++i) rhos.push_back(random_density(g, rng, spread));

  CsvTable table({"a", "sample", "sym", "asym", "fft"});
  for (double a : as) {
    double pos = kInf, sym_asym = 0.0, fft_dir = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const RealField& rho = rhos[i];
      const double s = hartree_sym_term(rho, W.phi, W.phi_x, a, KernelRule::ZetaCorrected, HsymMethod::ParallelDirect);
      const double as_ = hartree_asym_term(rho, W.phi, W.phi_x, a);
      const double f = hartree_sym_term(rho, W.phi, W.phi_x, a, KernelRule::ZetaCorrected, HsymMethod::Fft);
      const double mass = quadrature(rho);
      pos = std::min(pos, s / (mass * mass));
      sym_asym = std::max(sym_asym, std::abs(s - as_) / std::abs(s));
      fft_dir = std::max(fft_dir, std::abs(f - s) / std::abs(s));
      table.row().add(a).add(static_cast<long long>(i)).add(s).add(as_).add(f);
    }
    const std::string p = "a" + tag(a);
    res.verdicts.push_back(make_verdict(p + ".positivity", "hartree-positivity", ">=", pos, -tol_pos,
                                        "symmetrized Hartree virial term is nonnegative for nondecreasing phi"));
    res.verdicts.push_back(make_verdict(p + ".sym_vs_asym", "hartree-positivity", "<=", sym_asym, tol_sym,
                                        "symmetric and asymmetric double sums agree"));
    res.verdicts.push_back(make_verdict(p + ".fft_vs_direct", "hartree-positivity", "<=", fft_dir, tol_fft,
                                        "fast evaluation agrees with the direct double sum"));
  }
  res.files.emplace_back("results.csv", table.str());
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_experiment(ExperimentKind kind, const Json& cfg, const RunOptions& opt) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  if (cfg.contains("kind") && cfg.at("kind").get<std::string>() != kind_name(kind))
    throw ConfigError("config is for kind '" + cfg.at("kind").get<std::string>() + "', not '" + kind_name(kind) +
                      "'");
  set_kernel_threads(opt.threads);
  switch (kind) {
    case ExperimentKind::VirialCheck: return run_virial_check(cfg, opt);
    case ExperimentKind::Coercivity: return run_coercivity(cfg, opt);
    case ExperimentKind::Spectrum: return run_spectrum(cfg, opt);
    case ExperimentKind::Simon: return run_simon(cfg, opt);
    case ExperimentKind::Decay: return run_decay(cfg, opt);
    case ExperimentKind::Counterexample: return run_counterexample(cfg, opt);
    case ExperimentKind::SpacetimeBound: return run_spacetime_bound(cfg, opt);
    case ExperimentKind::MomentumIdentity: return run_momentum_identity(cfg, opt);
    case ExperimentKind::HartreePositivity: return run_hartree_positivity(cfg, opt);
    case ExperimentKind::Conservation: return run_conservation(cfg, opt);
  }
  throw ConfigError("unknown experiment kind");
}

std::string summary_json(const ExperimentResult& r) {
  Json j;
  j["kind"] = kind_name(r.kind);
  j["versions"] = {{"virial_lab", kVersion}, {"fft", fft_backend_version()}};
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["config"] = r.config;
  j["verdicts"] = Json::array();
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& v : r.verdicts) {
    j["verdicts"].push_back(verdict_json(v));
    groups[v.group].push_back(v.name);
  }
  j["groups"] = groups;
  j["details"] = r.details;
  return j.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    const auto target = dir / name;
    const auto tmp = dir / (name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << content;
    }
    std::filesystem::rename(tmp, target);
  };
  for (const auto& [name, content] : r.files) write(name, content);
  write("summary.json", summary_json(r));
}

}  // namespace virial_lab
