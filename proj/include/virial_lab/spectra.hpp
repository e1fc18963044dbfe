#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "virial_lab/grid.hpp"
#include "virial_lab/models.hpp"

namespace virial_lab {

enum class Sector { Full, Odd, Even };
std::string sector_name(Sector s);

/// -d^2/dx^2 + W on [-L, L] with Dirichlet ends, discretized by second-order
/// finite differences. W is stored at x_i = -L + i dx, i = 0..n_intervals.
///
/// Odd sector: nodes i dx, 0 < i dx < L, Dirichlet at 0.
/// Even sector: nodes i dx, 0 <= i dx < L, reflecting at 0 (the first row is
/// scaled by sqrt 2 so the matrix stays symmetric).
struct SchrodingerProblem {
  double half_length = 0.0;
  std::size_t n_intervals = 0;
  std::vector<double> W;
  Sector sector = Sector::Full;

  double dx() const { return 2.0 * half_length / static_cast<double>(n_intervals); }
  double x(std::size_t i) const { return -half_length + static_cast<double>(i) * dx(); }

  /// Uses the grid nodes; the missing +L node repeats the -L sample.
  static SchrodingerProblem from_field(const RealField& W, Sector sector = Sector::Full);

  template <class F>
  static SchrodingerProblem from_function(double L, std::size_t n_intervals, F&& f, Sector sector = Sector::Full) {
    SchrodingerProblem p;
    p.half_length = L;
    p.n_intervals = n_intervals;
    p.sector = sector;
    p.W.resize(n_intervals + 1);
    for (std::size_t i = 0; i <= n_intervals; ++i) p.W[i] = f(p.x(i));
    p.validate();
    return p;
  }

  void validate() const;
};

/// Symmetric tridiagonal matrix: diag d, off-diagonal e (size d.size() - 1).
struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;
};

Tridiagonal assemble(const SchrodingerProblem& prob);

/// Number of eigenvalues strictly below `shift` (LDL^T inertia).
std::size_t sturm_count(const Tridiagonal& T, double shift);

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const Tridiagonal& T, std::size_t k);

struct EigenReport {
  Sector sector = Sector::Full;
  std::size_t negative_count = 0;
  std::vector<double> lowest_eigenvalues;          // ascending
  std::optional<double> lowest_odd_eigenvalue;     // full line: from the odd sector when W is even
  bool coarse_grid = false;                        // fewer than 8 points per length scale of W
  std::string warning;
};

EigenReport negative_eigencount(const SchrodingerProblem& prob, std::size_t k = 3);

struct IndexFormulaResult {
  double value = 0.0;  // 8 gamma nu a^2 / h^2
  double bound = 0.0;  // 1/2 sqrt(value + 1) - 1/2
  long raw = 0;        // largest integer strictly below bound
  std::size_t count = 0;
};

/// Bound-state index for the well -gamma sech^2(x/a) as quoted for the
/// operator -h^2/(2 nu) d^2/dx^2 + W.
IndexFormulaResult index_formula(double gamma, double nu, double a, double h);

struct SimonV0 {
  RealField V0;
  double integral_direct = 0.0;  // int V0
  double integral_cosh = 0.0;    // int cosh(2x/lambda) V
  double tail_bound = 0.0;       // |V_x| cosh^2 mass dropped where cosh^2 overflows
  bool divergent = false;        // weighted integral overflowed on the grid
};

/// V0 = -V_x phi / phi_x with phi = lambda tanh(x/lambda).
SimonV0 simon_V0(const RealField& V, const RealField& V_x, double lambda);

/// Closed-form V0 at a point for a shape potential.
double simon_v0_value(const PotentialShape& shape, double lambda, double x);

struct SimonRow {
  double mu = 0.0;
  double box_half_length = 0.0;
  std::size_t full_count = 0;
  std::size_t odd_count = 0;
  std::size_t even_count = 0;
  double lowest_full = 0.0;
  double lowest_odd = 0.0;
  bool expected = false;  // counts agree with the sign of int V0
};

struct SimonOptions {
  double dx = 0.05;
  double min_half_length = 40.0;
  /// The weak-coupling bound state decays like exp(-kappa |x|) with
  /// kappa ~ mu |int V0| / 2; the box is at least box_factor / kappa.
  double box_factor = 30.0;
};

struct SimonTable {
  double integral_V0 = 0.0;
  std::vector<SimonRow> rows;
  bool all_expected() const;
};

SimonTable simon_check(const PotentialShape& shape, double lambda, const std::vector<double>& mu_list,
                       const SimonOptions& opt = {});

}  // namespace virial_lab
