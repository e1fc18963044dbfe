#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "virial_lab/diagnostics.hpp"
#include "virial_lab/experiments.hpp"
#include "virial_lab/hartree_kernels.hpp"

namespace vl = virial_lab;

int main(int argc, char** argv) {
  CLI::App app{"Virial and local-decay experiments for 1D Schrodinger-type equations"};
  app.set_version_flag("--version", std::string(vl::kVersion));

  std::string kind_str;
  std::string config_path;
  std::string out_dir = "out";
  int threads = 1;
  std::optional<std::uint64_t> seed;

  std::string kinds;
  for (const auto& k : vl::kind_names()) kinds += (kinds.empty() ? "" : ", ") + k;
  app.add_option("kind", kind_str, "Experiment kind: " + kinds)->required();
  app.add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (VIRIAL_LAB_THREADS overrides)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const vl::ExperimentKind kind = vl::parse_kind(kind_str);
    const vl::Json cfg = vl::load_config(config_path);
    vl::RunOptions opt;
    opt.threads = vl::resolve_threads(threads);
    opt.seed = seed;
    const vl::ExperimentResult r = vl::run_experiment(kind, cfg, opt);
    vl::write_outputs(r, out_dir);
    std::size_t failed = 0;
    for (const auto& v : r.verdicts) {
      std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << "  measured=" << vl::format_double(v.measured) << " "
                << v.relation << " " << vl::format_double(v.threshold);
      if (v.threshold_hi) std::cout << ".." << vl::format_double(*v.threshold_hi);
      std::cout << "\n";
      if (!v.pass) ++failed;
    }
    std::cout << r.verdicts.size() - failed << "/" << r.verdicts.size() << " checks passed; outputs in " << out_dir
              << "\n";
    return failed == 0 ? 0 : 1;
  } catch (const vl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
