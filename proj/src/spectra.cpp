#include "virial_lab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "virial_lab/virial.hpp"

namespace virial_lab {

std::string sector_name(Sector s) {
  switch (s) {
    case Sector::Full: return "full";
    case Sector::Odd: return "odd";
    case Sector::Even: return "even";
  }
  return "full";
}

SchrodingerProblem SchrodingerProblem::from_field(const RealField& W, Sector sector) {
  SchrodingerProblem p;
  p.half_length = W.grid.half_length();
  p.n_intervals = W.grid.size();
  p.sector = sector;
  p.W = W.values;
  p.W.push_back(W.values.front());
  p.validate();
  return p;
}

void SchrodingerProblem::validate() const {
  if (!(half_length > 0.0)) throw std::invalid_argument("L must be positive");
  if (n_intervals < 8 || n_intervals % 2 != 0) throw std::invalid_argument("need an even number of intervals >= 8");
  if (W.size() != n_intervals + 1) throw std::invalid_argument("potential has the wrong number of samples");
  for (double w : W)
    if (!std::isfinite(w)) throw std::invalid_argument("potential samples must be finite");
}

Tridiagonal assemble(const SchrodingerProblem& prob) {
  prob.validate();
  const double h2 = 1.0 / (prob.dx() * prob.dx());
  const std::size_t n = prob.n_intervals, mid = n / 2;
  std::size_t first = 1;
  if (prob.sector == Sector::Odd) first = mid + 1;
  if (prob.sector == Sector::Even) first = mid;
  Tridiagonal T;
  for (std::size_t i = first; i < n; ++i) T.d.push_back(2.0 * h2 + prob.W[i]);
  T.e.assign(T.d.size() - 1, -h2);
  if (prob.sector == Sector::Even) T.e[0] = -std::numbers::sqrt2 * h2;
  return T;
}

namespace {

double pivot_floor(const Tridiagonal& T) {
  double emax = 0.0;
  for (double e : T.e) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * std::max(1.0, emax);
}

std::pair<double, double> gershgorin(const Tridiagonal& T) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t n = T.d.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(T.e[i - 1]);
    if (i + 1 < n) r += std::abs(T.e[i]);
    lo = std::min(lo, T.d[i] - r);
    hi = std::max(hi, T.d[i] + r);
  }
  return {lo, hi};
}

std::size_t sturm_count_floor(const Tridiagonal& T, double shift, double pivmin) {
  std::size_t count = 0;
  double q = T.d[0] - shift;
  if (std::abs(q) <= pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < T.d.size(); ++i) {
    q = T.d[i] - shift - T.e[i - 1] * T.e[i - 1] / q;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// sqrt(max|W| / max|W''|), the scale on which W varies; 0 when W vanishes.
double potential_length_scale(const SchrodingerProblem& p) {
  double wmax = 0.0, curv = 0.0;
  const double h2 = 1.0 / (p.dx() * p.dx());
  for (std::size_t i = 0; i < p.W.size(); ++i) {
    wmax = std::max(wmax, std::abs(p.W[i]));
    if (i > 0 && i + 1 < p.W.size()) curv = std::max(curv, std::abs(p.W[i + 1] - 2.0 * p.W[i] + p.W[i - 1]) * h2);
  }
  if (wmax == 0.0 || curv == 0.0) return 0.0;
  return std::sqrt(wmax / curv);
}

bool is_even(const SchrodingerProblem& p) {
  double scale = 1.0;
  for (double w : p.W) scale = std::max(scale, std::abs(w));
  const std::size_t n = p.n_intervals;
  for (std::size_t i = 0; i <= n; ++i)
    if (std::abs(p.W[i] - p.W[n - i]) > 1e-12 * scale) return false;
  return true;
}

}  // namespace

std::size_t sturm_count(const Tridiagonal& T, double shift) {
  if (T.d.empty()) return 0;
  return sturm_count_floor(T, shift, pivot_floor(T));
}

double bisect_eigenvalue(const Tridiagonal& T, std::size_t k) {
  if (k >= T.d.size()) throw std::out_of_range("eigenvalue index exceeds matrix size");
  const double pivmin = pivot_floor(T);
  auto [lo, hi] = gershgorin(T);
  const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count_floor(T, mid, pivmin) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

EigenReport negative_eigencount(const SchrodingerProblem& prob, std::size_t k) {
  const Tridiagonal T = assemble(prob);
  EigenReport r;
  r.sector = prob.sector;
  r.negative_count = sturm_count(T, 0.0);
  const std::size_t m = std::min(k, T.d.size());
  for (std::size_t i = 0; i < m; ++i) r.lowest_eigenvalues.push_back(bisect_eigenvalue(T, i));

  const double ell = potential_length_scale(prob);
  if (ell > 0.0 && ell / prob.dx() < 8.0) {
    r.coarse_grid = true;
    r.warning = "grid too coarse: fewer than 8 points per potential length scale";
  }

  if (prob.sector == Sector::Odd) {
    if (!r.lowest_eigenvalues.empty()) r.lowest_odd_eigenvalue = r.lowest_eigenvalues.front();
  } else if (prob.sector == Sector::Full && is_even(prob)) {
    SchrodingerProblem odd = prob;
    odd.sector = Sector::Odd;
    const Tridiagonal To = assemble(odd);
    r.lowest_odd_eigenvalue = bisect_eigenvalue(To, 0);
  }
  return r;
}

IndexFormulaResult index_formula(double gamma, double nu, double a, double h) {
  if (!(gamma > 0.0 && nu > 0.0 && a > 0.0 && h > 0.0))
    throw std::invalid_argument("index formula parameters must be positive");
  IndexFormulaResult r;
  r.value = 8.0 * gamma * nu * a * a / (h * h);
  r.bound = 0.5 * std::sqrt(r.value + 1.0) - 0.5;
  r.raw = static_cast<long>(std::ceil(r.bound)) - 1;
  r.count = r.raw > 0 ? static_cast<std::size_t>(r.raw) : 0;
  return r;
}

SimonV0 simon_V0(const RealField& V, const RealField& V_x, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(V.grid == V_x.grid)) throw std::invalid_argument("V and V_x must share a grid");
  const Grid& g = V.grid;
  SimonV0 out{simon_v0_field(V_x, lambda)};
  double direct = 0.0, dual = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = g.x(j) / lambda;
    direct += out.V0[j];
    if (V[j] != 0.0) {
      // cosh(2y) V in log form so large |y| does not overflow before V is applied
      const double term = std::copysign(std::exp(std::log(std::abs(V[j])) + 2.0 * std::abs(y) - std::numbers::ln2) +
                                            std::exp(std::log(std::abs(V[j])) - 2.0 * std::abs(y) - std::numbers::ln2),
                                        V[j]);
      dual += term;
    }
    if (V_x[j] != 0.0 && std::abs(y) > 350.0)
      tail += std::exp(std::log(std::abs(V_x[j]) * lambda) + 2.0 * std::abs(y) - 2.0 * std::numbers::ln2);
  }
  out.integral_direct = direct * g.dx();
  out.integral_cosh = dual * g.dx();
  out.tail_bound = tail * g.dx();
  out.divergent = !std::isfinite(out.integral_cosh) || !std::isfinite(out.tail_bound);
  return out;
}

double simon_v0_value(const PotentialShape& shape, double lambda, double x) {
  const double y = x / lambda;
  const double vx = shape.derivative(x);
  if (vx == 0.0 || std::abs(y) > 350.0) return 0.0;
  const double c = std::cosh(y);
  return -vx * lambda * std::tanh(y) * c * c;
}

bool SimonTable::all_expected() const {
  return std::all_of(rows.begin(), rows.end(), [](const SimonRow& r) { return r.expected; });
}

SimonTable simon_check(const PotentialShape& shape, double lambda, const std::vector<double>& mu_list,
                       const SimonOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(opt.dx > 0.0)) throw std::invalid_argument("dx must be positive");
  SimonTable table;
  {
    const double Lq = std::max(opt.min_half_length, 60.0 * shape.width);
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * Lq / opt.dx));
    const double h = 2.0 * Lq / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += simon_v0_value(shape, lambda, -Lq + static_cast<double>(i) * h);
    table.integral_V0 = s * h;
  }
  for (double mu : mu_list) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu values must be positive");
    double L = opt.min_half_length;
    if (table.integral_V0 < 0.0) L = std::max(L, opt.box_factor / (0.5 * mu * std::abs(table.integral_V0)));
    const auto half = static_cast<std::size_t>(std::ceil(L / opt.dx));
    L = static_cast<double>(half) * opt.dx;
    auto W = [&](double x) { return mu * simon_v0_value(shape, lambda, x); };

    SimonRow row;
    row.mu = mu;
    row.box_half_length = L;
    const EigenReport full = negative_eigencount(SchrodingerProblem::from_function(L, 2 * half, W), 1);
    const EigenReport odd = negative_eigencount(SchrodingerProblem::from_function(L, 2 * half, W, Sector::Odd), 1);
    const EigenReport even = negative_eigencount(SchrodingerProblem::from_function(L, 2 * half, W, Sector::Even), 0);
    row.full_count = full.negative_count;
    row.odd_count = odd.negative_count;
    row.even_count = even.negative_count;
    row.lowest_full = full.lowest_eigenvalues.front();
    row.lowest_odd = odd.lowest_eigenvalues.front();
    if (table.integral_V0 <= 0.0)
      row.expected = row.full_count == 1 && row.odd_count == 0;
    else
      row.expected = row.full_count == 0;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace virial_lab
