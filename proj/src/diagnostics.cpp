#include "virial_lab/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace virial_lab {

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> cols{"t",           "mass",          "energy",
                                             "momentum",    "I",             "virial_rhs",
                                             "minus_dIdt_fd", "h1_alpha_sq", "l2_alpha_sq",
                                             "l2_on_I",     "linf_on_I",     "cumulative_spacetime",
                                             "oddness_defect", "boundary_contamination"};
  return cols;
}

DiagnosticsRecorder::DiagnosticsRecorder(const Grid& g, const ModelSpec& model, const DiagnosticsOptions& opt)
    : grid_(g),
      model_(model),
      opt_(opt),
      weights_(make_virial_weights(g, opt.lambda_virial)),
      diag_(make_diag_weight(g)) {
  if (opt.lambda_lower_bound) lower_weights_ = make_virial_weights(g, *opt.lambda_lower_bound);
  const double L = g.half_length();
  const double band = opt.contamination_band > 0.0 ? opt.contamination_band : std::max(5.0 * g.dx(), L / 100.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    if (x >= opt.interval.lo && x <= opt.interval.hi) interval_nodes_.push_back(j);
    if (std::abs(x) >= L - band) edge_nodes_.push_back(j);
  }
}

void DiagnosticsRecorder::record(const ComplexField& u) {
  DiagnosticsRecord r;
  r.t = u.t;
  r.mass = mass(u);
  r.energy = energy(u, model_);
  r.momentum = momentum(u);
  r.I = virial_I(u, weights_.phi);
  r.virial_rhs = virial_rhs(u, weights_, model_);
  r.h1_alpha_sq = weighted_h1_norm_sq(u, diag_);
  r.l2_alpha_sq = weighted_l2_norm_sq(u, diag_);
  double l2 = 0.0, linf = 0.0;
  for (std::size_t j : interval_nodes_) {
    l2 += std::norm(u[j]);
    linf = std::max(linf, std::abs(u[j]));
  }
  r.l2_on_I = std::sqrt(l2 * grid_.dx());
  r.linf_on_I = linf;
  r.oddness_defect = oddness_defect(u);
  double edge = 0.0;
  for (std::size_t j : edge_nodes_) edge = std::max(edge, std::abs(u[j]));
  r.boundary_contamination = edge;
  if (!records_.empty()) {
    const DiagnosticsRecord& p = records_.back();
    r.cumulative_spacetime = p.cumulative_spacetime + 0.5 * (r.t - p.t) * (r.h1_alpha_sq + p.h1_alpha_sq);
  }
  records_.push_back(r);
  if (lower_weights_) lower_rhs_.push_back(virial_rhs(u, *lower_weights_, model_));
}

Monitor DiagnosticsRecorder::monitor() {
  return [this](const ComplexField& u) { record(u); };
}

std::vector<double> fd_derivative(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (y[1] - y[0]) / (t[1] - t[0]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
  return d;
}

void DiagnosticsRecorder::finalize() {
  std::vector<double> t, I, l2a;
  for (const auto& r : records_) {
    t.push_back(r.t);
    I.push_back(r.I);
    l2a.push_back(r.l2_alpha_sq);
  }
  const std::vector<double> dI = fd_derivative(t, I);
  for (std::size_t i = 0; i < records_.size(); ++i) records_[i].minus_dIdt_fd = -dI[i];
  l2_alpha_rate_ = fd_derivative(t, l2a);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string series_csv(const std::vector<DiagnosticsRecord>& records) {
  CsvTable table(series_columns());
  for (const auto& r : records) {
    table.row()
        .add(r.t)
        .add(r.mass)
        .add(r.energy)
        .add(r.momentum)
        .add(r.I)
        .add(r.virial_rhs)
        .add(r.minus_dIdt_fd)
        .add(r.h1_alpha_sq)
        .add(r.l2_alpha_sq)
        .add(r.l2_on_I)
        .add(r.linf_on_I)
        .add(r.cumulative_spacetime)
        .add(r.oddness_defect)
        .add(r.boundary_contamination);
  }
  return table.str();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double v) {
  rows_.back().push_back(format_double(v));
  return *this;
}

CsvTable& CsvTable::add(const std::string& s) {
  rows_.back().push_back(s);
  return *this;
}

CsvTable& CsvTable::add(long long v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace virial_lab
