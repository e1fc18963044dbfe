#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "virial_lab/spectra.hpp"

using namespace virial_lab;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

SchrodingerProblem well(double gamma, double a, double L, std::size_t n, Sector s = Sector::Full) {
  return SchrodingerProblem::from_function(
      L, n, [&](double x) { return -gamma * std::pow(sech(x / a), 2); }, s);
}

}  // namespace

TEST_CASE("free laplacian in a box") {
  const double L = 10.0;
  const auto p = SchrodingerProblem::from_function(L, 2000, [](double) { return 0.0; });
  const EigenReport r = negative_eigencount(p);
  CHECK(r.negative_count == 0);
  CHECK(r.lowest_eigenvalues.front() > 0.0);
  CHECK(r.lowest_eigenvalues.front() == doctest::Approx(std::pow(std::numbers::pi / (2 * L), 2)).epsilon(1e-5));
  for (std::size_t i = 1; i < r.lowest_eigenvalues.size(); ++i)
    CHECK(r.lowest_eigenvalues[i] > r.lowest_eigenvalues[i - 1]);
}

TEST_CASE("Poschl-Teller ground state") {
  const EigenReport r = negative_eigencount(well(2.0, 1.0, 40.0, 4096));
  CHECK(r.negative_count == 1);
  CHECK(r.lowest_eigenvalues.front() == doctest::Approx(-1.0).epsilon(1e-4));
  REQUIRE(r.lowest_odd_eigenvalue.has_value());
  CHECK(*r.lowest_odd_eigenvalue >= -1e-8);
  CHECK_FALSE(r.coarse_grid);

  // Residual oracle: sech is the eigenfunction for -1.
  const auto p = well(2.0, 1.0, 40.0, 4096);
  const Tridiagonal T = assemble(p);
  double res = 0.0;
  for (std::size_t i = 0; i < T.d.size(); ++i) {
    const double x = p.x(i + 1);
    double Av = T.d[i] * sech(x);
    if (i > 0) Av += T.e[i - 1] * sech(p.x(i));
    if (i + 1 < T.d.size()) Av += T.e[i] * sech(p.x(i + 2));
    res = std::max(res, std::abs(Av + sech(x)));
  }
  // Three-point truncation error is dx^2 / 12 * |sech''''| <= dx^2.
  CHECK(res <= std::pow(p.dx(), 2));
}

TEST_CASE("lowest eigenvalue converges at second order in dx") {
  std::vector<double> err;
  for (std::size_t n : {1024, 2048, 4096}) err.push_back(std::abs(bisect_eigenvalue(assemble(well(2.0, 1.0, 40.0, n)), 0) + 1.0));
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double order = std::log2(err[i] / err[i + 1]);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
}

TEST_CASE("odd sector of the weight family") {
  for (double lambda : {1.0, 2.0, 100.0}) {
    const double L = std::min(40.0 * lambda, 400.0);
    const auto p = well(2.0 / (lambda * lambda), lambda, L, 4096, Sector::Odd);
    const EigenReport r = negative_eigencount(p);
    CHECK(r.negative_count == 0);
    REQUIRE(r.lowest_odd_eigenvalue.has_value());
    CHECK(*r.lowest_odd_eigenvalue >= -1e-8);
    CHECK(negative_eigencount(well(2.0 / (lambda * lambda), lambda, L, 4096)).negative_count == 1);
  }
}

TEST_CASE("coarse grid warning") {
  const EigenReport r = negative_eigencount(well(2.0, 0.05, 40.0, 512));
  CHECK(r.coarse_grid);
  CHECK_FALSE(r.warning.empty());
}

TEST_CASE("property: sector decomposition") {
  for (double gamma : {0.5, 2.0, 6.0, 12.0, 30.0}) {
    for (double a : {0.7, 1.0, 2.0}) {
      const std::size_t full = negative_eigencount(well(gamma, a, 30.0, 2048), 1).negative_count;
      const std::size_t odd = negative_eigencount(well(gamma, a, 30.0, 2048, Sector::Odd), 1).negative_count;
      const std::size_t even = negative_eigencount(well(gamma, a, 30.0, 2048, Sector::Even), 1).negative_count;
      CHECK(full == odd + even);
    }
  }
}

TEST_CASE("sturm count and bisection") {
  // 2x2 [[2, -1], [-1, 2]] has eigenvalues 1 and 3.
  const Tridiagonal T{{2.0, 2.0}, {-1.0}};
  CHECK(sturm_count(T, 0.5) == 0);
  CHECK(sturm_count(T, 1.5) == 1);
  CHECK(sturm_count(T, 3.5) == 2);
  CHECK(bisect_eigenvalue(T, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bisect_eigenvalue(T, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(bisect_eigenvalue(T, 2), std::out_of_range);
}

TEST_CASE("index formula") {
  const IndexFormulaResult a = index_formula(2.0, 1.0, 1.0, 1.0);
  CHECK(a.value == 16.0);
  CHECK(a.bound == doctest::Approx((std::sqrt(17.0) - 1.0) / 2.0));
  CHECK(a.count == 1);
  // The lambda family: gamma = 2 / lambda^2, a = lambda gives the same value.
  for (double lambda : {1.0, 2.0, 10.0, 100.0}) CHECK(index_formula(2.0 / (lambda * lambda), 1.0, lambda, 1.0).count == 1);

  const IndexFormulaResult b = index_formula(6.0, 1.0, 1.0, 1.0);
  CHECK(b.value == 48.0);
  CHECK(b.bound == 3.0);
  CHECK(b.count == 2);
  CHECK(negative_eigencount(well(6.0, 1.0, 40.0, 4096), 1).negative_count == 2);

  const IndexFormulaResult c = index_formula(1e-12, 1.0, 1.0, 1.0);
  CHECK(c.raw == 0);
  CHECK(c.count == 0);
  CHECK(index_formula(1e-20, 1.0, 1.0, 1.0).raw == -1);
  CHECK_THROWS_AS(index_formula(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("weak-coupling potential integral") {
  const Grid g(40.0, 4096);
  const SimonV0 z = simon_V0(RealField(g), RealField(g), 2.0);
  CHECK(z.integral_direct == 0.0);
  CHECK(z.integral_cosh == 0.0);

  for (double amp : {-1.0, 1.0}) {
    const PotentialShape s{PotentialShape::Kind::Sech4, amp, 1.0};
    const SimonV0 v = simon_V0(sample_real(g, [&](double x) { return s.value(x); }),
                               sample_real(g, [&](double x) { return s.derivative(x); }), 2.0);
    // int cosh(x) sech^4(x) dx = int sech^3 = pi / 2.
    CHECK(v.integral_cosh == doctest::Approx(amp * std::numbers::pi / 2.0).epsilon(1e-12));
    CHECK(std::abs(v.integral_direct - v.integral_cosh) <= 1e-8);
    CHECK_FALSE(v.divergent);
  }

  // A potential decaying slower than cosh(2x / lambda) grows on the grid.
  const PotentialShape slow{PotentialShape::Kind::Sech2, -1.0, 4.0};
  const Grid wide(400.0, 8192);
  const SimonV0 d = simon_V0(sample_real(wide, [&](double x) { return slow.value(x); }),
                             sample_real(wide, [&](double x) { return slow.derivative(x); }), 0.5);
  CHECK(std::abs(d.integral_cosh) > 1e10);
}

TEST_CASE("weak-coupling eigencounts") {
  const PotentialShape attractive{PotentialShape::Kind::Sech4, -1.0, 1.0};
  const PotentialShape repulsive{PotentialShape::Kind::Sech4, 1.0, 1.0};
  const std::vector<double> mus{1e-3, 1e-2, 5e-2};
  const SimonTable a = simon_check(attractive, 2.0, mus);
  CHECK(a.integral_V0 < 0.0);
  CHECK(a.all_expected());
  for (const auto& r : a.rows) {
    CHECK(r.full_count == 1);
    CHECK(r.odd_count == 0);
    CHECK(r.even_count == 1);
  }
  // Leading-order weak-coupling energy -(mu int V0 / 2)^2.
  CHECK(a.rows[0].lowest_full == doctest::Approx(-std::pow(1e-3 * a.integral_V0 / 2.0, 2)).epsilon(0.05));

  const SimonTable b = simon_check(repulsive, 2.0, mus);
  CHECK(b.integral_V0 > 0.0);
  for (const auto& r : b.rows) CHECK(r.full_count == 0);

  const SimonTable z = simon_check(PotentialShape{}, 2.0, mus);
  for (const auto& r : z.rows) {
    CHECK(r.full_count == 0);
    CHECK(r.odd_count == 0);
    CHECK(r.even_count == 0);
  }
}
