#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "virial_lab/diagnostics.hpp"
#include "virial_lab/experiments.hpp"

using namespace virial_lab;

namespace {

Json small_decay(const Json& data) {
  return Json{{"grid", {{"L", 40}, {"N", 512}}},
              {"model", {{"type", "semilinear"}, {"nonlinearity", {{{"c", 1}, {"p", 3}}}}}},
              {"data", data},
              {"evolve", {{"dt", 0.01}, {"t_end", 2}, {"sample_every", 10}}},
              {"tolerances", {{"decay_factor_l2", 10.0}, {"decay_factor_inf", 10.0}}}};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verdict relations") {
  CHECK(make_verdict("a", "g", "<=", 1.0, 1.0, "").pass);
  CHECK_FALSE(make_verdict("a", "g", "<", 1.0, 1.0, "").pass);
  CHECK(make_verdict("a", "g", ">=", 2.0, 1.0, "").pass);
  CHECK(make_verdict("a", "g", "==", 0.0, 0.0, "").pass);
  CHECK(make_verdict("a", "g", "in", 4.0, 3.5, "", 4.5).pass);
  CHECK_FALSE(make_verdict("a", "g", "in", 5.0, 3.5, "", 4.5).pass);
  CHECK_FALSE(make_verdict("a", "g", "<=", std::nan(""), 1.0, "").pass);
}

TEST_CASE("kinds") {
  for (const auto& name : kind_names()) CHECK(kind_name(parse_kind(name)) == name);
  CHECK_THROWS_AS(parse_kind("nope"), ConfigError);
  CHECK_THROWS_AS(run_experiment(ExperimentKind::Decay, Json{{"kind", "spectrum"}}), ConfigError);
}

TEST_CASE("decay of the zero datum is a trivial pass") {
  const ExperimentResult r = run_experiment(ExperimentKind::Decay, small_decay({{"type", "zero"}}));
  CHECK(r.passed());
  const auto& series = r.files.front();
  CHECK(series.first == "series.csv");
  const std::string header = series.second.substr(0, series.second.find('\n'));
  CHECK(header ==
        "t,mass,energy,momentum,I,virial_rhs,minus_dIdt_fd,h1_alpha_sq,l2_alpha_sq,l2_on_I,linf_on_I,"
        "cumulative_spacetime,oddness_defect,boundary_contamination");
}

TEST_CASE("parity preconditions") {
  const Json even = {{"type", "soliton"}, {"c", 0.25}, {"p", 3}};
  CHECK_THROWS_WITH_AS(run_experiment(ExperimentKind::Decay, small_decay(even)), "decay requires odd data",
                       ConfigError);
  Json cfg = small_decay({{"type", "odd_packet"}, {"eps", 0.1}, {"k", 0.5}, {"x0", 2}});
  CHECK_THROWS_WITH_AS(run_experiment(ExperimentKind::Counterexample, cfg), "counterexample requires even data",
                       ConfigError);
}

TEST_CASE("spacetime ladder with zero data") {
  Json cfg = small_decay({{"type", "zero"}});
  cfg["eps"] = {0.05, 0.1};
  cfg["weights"] = {{"lambda_lower_bound", 100}};
  const ExperimentResult r = run_experiment(ExperimentKind::SpacetimeBound, cfg);
  const Verdict* v = r.find("ratio_max");
  REQUIRE(v != nullptr);
  CHECK(v->measured == 0.0);
}

TEST_CASE("momentum identity localization guard") {
  const Json cfg = {{"grid", {{"L", 20}, {"N", 512}}},
                    {"model", {{"type", "semilinear"}, {"nonlinearity", {{{"c", -1}, {"p", 3}}}}}},
                    {"data", {{{"label", "edge"}, {"type", "sech_packet"}, {"amplitude", 1}, {"k", 0.5}, {"x0", 9}}}},
                    {"evolve", {{"dt", 0.01}, {"t_end", 1}, {"sample_every", 5}}}};
  const ExperimentResult r = run_experiment(ExperimentKind::MomentumIdentity, cfg);
  const Verdict* v = r.find("edge.localized");
  REQUIRE(v != nullptr);
  CHECK_FALSE(v->pass);
  CHECK(v->note == "localization violated");
  CHECK_FALSE(r.passed());
}

TEST_CASE("outputs are deterministic and complete") {
  const Json cfg = {{"kind", "hartree-positivity"}, {"grid", {{"L", 10}, {"N", 64}}}, {"samples", 5}, {"seed", 9}};
  const auto base = std::filesystem::temp_directory_path() / "virial_lab_test_outputs";
  std::filesystem::remove_all(base);
  RunOptions one, four;
  four.threads = 4;
  write_outputs(run_experiment(ExperimentKind::HartreePositivity, cfg, one), base / "a");
  write_outputs(run_experiment(ExperimentKind::HartreePositivity, cfg, four), base / "b");
  for (const char* f : {"summary.json", "results.csv"}) {
    REQUIRE(std::filesystem::exists(base / "a" / f));
    CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
  }
  for (const auto& e : std::filesystem::directory_iterator(base / "a"))
    CHECK(e.path().extension() != ".tmp");

  const Json summary = Json::parse(slurp(base / "a" / "summary.json"));
  CHECK(summary["kind"] == "hartree-positivity");
  CHECK(summary["seed"] == 9);
  CHECK(summary["config"]["samples"] == 5);
  CHECK(summary["versions"].contains("virial_lab"));
  CHECK(summary["groups"].contains("hartree-positivity"));
  for (const auto& v : summary["verdicts"]) CHECK_FALSE(v["note"].get<std::string>().empty());

  // A different seed changes the random sample set.
  RunOptions other;
  other.seed = 10;
  CHECK(summary_json(run_experiment(ExperimentKind::HartreePositivity, cfg, other)) != slurp(base / "a" / "summary.json"));
  std::filesystem::remove_all(base);
}

TEST_CASE("thresholds come from the config") {
  Json cfg = {{"lambdas", {2}}, {"N", 512}, {"index_cases", Json::array()}, {"tolerances", {{"odd_eigenvalue", 0.5}}}};
  const ExperimentResult r = run_experiment(ExperimentKind::Spectrum, cfg);
  const Verdict* v = r.find("lambda2.lowest_odd");
  REQUIRE(v != nullptr);
  CHECK(v->threshold == -0.5);
}

TEST_CASE("parallel_for and thread resolution") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  CHECK_THROWS_WITH(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 3 || i == 7) throw std::runtime_error("index " + std::to_string(i));
                                 }),
                    "index 3");
  CHECK(resolve_threads(3) >= 1);
  setenv("VIRIAL_LAB_THREADS", "5", 1);
  CHECK(resolve_threads(2) == 5);
  unsetenv("VIRIAL_LAB_THREADS");
  CHECK(resolve_threads(2) == 2);
}

TEST_CASE("diagnostics helpers") {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0}, y{1.0, 3.0, 5.0, 7.0};
  for (double d : fd_derivative(t, y)) CHECK(d == doctest::Approx(2.0));
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

  const Grid g(40.0, 512);
  const ModelSpec m = Semilinear{NonlinearitySpec::defocusing(3)};
  DiagnosticsRecorder rec(g, m, DiagnosticsOptions{});
  EvolveConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 3.0;
  cfg.sample_every = 10;
  const Monitor mon = rec.monitor();
  Json data = {{"type", "odd_packet"}, {"eps", 0.3}, {"k", 0.5}, {"x0", 2}};
  evolve(make_datum(data, g), cfg, m, std::span<const Monitor>(&mon, 1));
  rec.finalize();
  const auto& r = rec.records();
  REQUIRE(r.size() == 31);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].cumulative_spacetime >= r[i - 1].cumulative_spacetime);
  for (const auto& x : r) {
    CHECK(std::isfinite(x.minus_dIdt_fd));
    CHECK(std::isfinite(x.virial_rhs));
    CHECK(x.l2_on_I >= 0.0);
  }
}
