#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "virial_lab/config.hpp"

namespace virial_lab {

inline constexpr const char* kVersion = "1.0.0";

/// One pass/fail check. Thresholds always come from the config (or its defaults).
struct Verdict {
  std::string name;
  std::string group;
  std::string relation;  // "<=", ">=", "<", ">", "==", "in"
  double measured = 0.0;
  double threshold = 0.0;
  std::optional<double> threshold_hi;  // upper end for "in"
  bool pass = false;
  std::string note;
};

Verdict make_verdict(std::string name, std::string group, std::string relation, double measured, double threshold,
                     std::string note, std::optional<double> threshold_hi = std::nullopt);

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::VirialCheck;
  Json config;
  std::uint64_t seed = 0;
  std::vector<Verdict> verdicts;
  Json details = Json::object();
  /// Output files other than summary.json, in write order.
  std::vector<std::pair<std::string, std::string>> files;

  bool passed() const;
  const Verdict* find(const std::string& name) const;
};

struct RunOptions {
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

ExperimentResult run_experiment(ExperimentKind kind, const Json& cfg, const RunOptions& opt = {});

ExperimentResult run_conservation(const Json& cfg, const RunOptions& opt);
ExperimentResult run_virial_check(const Json& cfg, const RunOptions& opt);
ExperimentResult run_coercivity(const Json& cfg, const RunOptions& opt);
ExperimentResult run_spectrum(const Json& cfg, const RunOptions& opt);
ExperimentResult run_simon(const Json& cfg, const RunOptions& opt);
ExperimentResult run_decay(const Json& cfg, const RunOptions& opt);
ExperimentResult run_counterexample(const Json& cfg, const RunOptions& opt);
ExperimentResult run_spacetime_bound(const Json& cfg, const RunOptions& opt);
ExperimentResult run_momentum_identity(const Json& cfg, const RunOptions& opt);
ExperimentResult run_hartree_positivity(const Json& cfg, const RunOptions& opt);

std::string summary_json(const ExperimentResult& r);

/// Writes every file plus summary.json into `dir`, each via a temporary and rename.
void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir);

/// Runs fn(0..n-1) on up to `threads` workers; exceptions are rethrown in index order.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Thread count from VIRIAL_LAB_THREADS if set, else `requested` (at least 1).
int resolve_threads(int requested);

}  // namespace virial_lab
