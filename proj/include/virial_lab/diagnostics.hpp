#pragma once

#include <optional>
#include <string>
#include <vector>

#include "virial_lab/config.hpp"
#include "virial_lab/evolve.hpp"
#include "virial_lab/virial.hpp"

namespace virial_lab {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  double I = 0.0;
  double virial_rhs = 0.0;
  double minus_dIdt_fd = 0.0;
  double h1_alpha_sq = 0.0;
  double l2_alpha_sq = 0.0;
  double l2_on_I = 0.0;
  double linf_on_I = 0.0;
  double cumulative_spacetime = 0.0;
  double oddness_defect = 0.0;
  double boundary_contamination = 0.0;
};

/// Column names of series.csv, in file order.
const std::vector<std::string>& series_columns();

struct DiagnosticsOptions {
  Interval interval;
  double lambda_virial = 2.0;
  /// Second weight for lower-bound checks; its -dI/dt is kept in lower_rhs().
  std::optional<double> lambda_lower_bound;
  /// Width of the edge band |x| >= L - band; 0 selects max(5 dx, L/100).
  double contamination_band = 0.0;
};

/// Monitor that turns field samples into DiagnosticsRecords.
class DiagnosticsRecorder {
 public:
  DiagnosticsRecorder(const Grid& g, const ModelSpec& model, const DiagnosticsOptions& opt);

  void record(const ComplexField& u);
  Monitor monitor();

  /// Fills minus_dIdt_fd by finite differences over the sample times.
  void finalize();

  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  const std::vector<double>& lower_rhs() const { return lower_rhs_; }
  /// Finite-difference rate of l2_alpha_sq at each sample (after finalize).
  const std::vector<double>& l2_alpha_rate() const { return l2_alpha_rate_; }

 private:
  Grid grid_;
  ModelSpec model_;
  DiagnosticsOptions opt_;
  VirialWeights weights_;
  std::optional<VirialWeights> lower_weights_;
  DiagWeight diag_;
  std::vector<std::size_t> interval_nodes_;
  std::vector<std::size_t> edge_nodes_;
  std::vector<DiagnosticsRecord> records_;
  std::vector<double> lower_rhs_;
  std::vector<double> l2_alpha_rate_;
};

/// Central differences of y(t), one-sided at the ends.
std::vector<double> fd_derivative(const std::vector<double>& t, const std::vector<double>& y);

/// Shortest decimal form that round-trips a double.
std::string format_double(double v);

std::string series_csv(const std::vector<DiagnosticsRecord>& records);

/// Plain CSV table builder with round-trip number formatting.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row();
  CsvTable& add(double v);
  CsvTable& add(const std::string& s);
  CsvTable& add(long long v);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace virial_lab
