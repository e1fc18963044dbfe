#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "virial_lab/grid.hpp"

using namespace virial_lab;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

RealField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  // Smooth: a few low Fourier modes under a Gaussian envelope.
  const double a = n(rng), b = n(rng), c = n(rng), s = 1.0 + std::abs(n(rng));
  return sample_real(g, [&](double x) { return (a + b * std::sin(c * x)) * std::exp(-x * x / (s * s)); });
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(40.0, 1024);
  CHECK(g.dx() == 0.078125);
  CHECK(g.x(0) == -40.0);
  CHECK(g.dx() * static_cast<double>(g.size()) == 2.0 * g.half_length());
  CHECK_THROWS_WITH_AS(Grid(40.0, 1023), "N must be even", std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.0, 1024), std::invalid_argument);
  CHECK_THROWS_AS(Grid(-1.0, 1024), std::invalid_argument);
  CHECK_THROWS_AS(Grid(10.0, 8), std::invalid_argument);
}

TEST_CASE("node set is symmetric") {
  const Grid g(13.0, 256);
  CHECK(g.mirror(0) == 0);
  for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.x(g.mirror(j)) == doctest::Approx(-g.x(j)).epsilon(1e-15));
}

TEST_CASE("spectral derivative") {
  const Grid g(40.0, 1024);
  const double L = g.half_length();
  SUBCASE("sine") {
    const RealField f = sample_real(g, [&](double x) { return std::sin(std::numbers::pi * x / L); });
    const RealField d = spectral_derivative(f);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      err = std::max(err, std::abs(d[j] - std::numbers::pi / L * std::cos(std::numbers::pi * g.x(j) / L)));
    CHECK(err <= 1e-10);
  }
  SUBCASE("constant") {
    const RealField d = spectral_derivative(sample_real(g, [](double) { return 1.0; }));
    for (double v : d.values) CHECK(std::abs(v) <= 1e-14);
  }
  SUBCASE("first mode") {
    const double k1 = g.wavenumber(1);
    CHECK(k1 == doctest::Approx(std::numbers::pi / L));
    const ComplexField f = sample_complex(g, [&](double x) { return std::exp(cplx(0.0, k1 * x)); });
    const ComplexField d = spectral_derivative(f);
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(d[j] - cplx(0.0, k1) * f[j]));
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("quadrature") {
  const Grid g(40.0, 1024);
  CHECK(quadrature(sample_real(g, [](double x) { return sech(x) * sech(x); })) ==
        doctest::Approx(2.0 * std::tanh(40.0)).epsilon(1e-10));
  CHECK(quadrature(RealField(g)) == 0.0);
  CHECK(std::abs(quadrature(sample_real(g, [](double x) { return x * sech(x); }))) <= 1e-12);
}

TEST_CASE("parity projections") {
  const Grid g(20.0, 512);
  const RealField s = sample_real(g, [](double x) { return sech(x); });
  for (double v : antisymmetrize(s).values) CHECK(std::abs(v) <= 1e-15);

  const RealField odd = sample_real(g, [](double x) { return x * std::exp(-x * x); });
  const RealField p = antisymmetrize(odd);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(p[j] - odd[j]) <= 1e-15);

  const RealField shifted = sample_real(g, [](double x) { return std::exp(-(x - 1) * (x - 1)); });
  const RealField q = antisymmetrize(shifted);
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double x = g.x(j);
    CHECK(std::abs(q[j] - 0.5 * (std::exp(-(x - 1) * (x - 1)) - std::exp(-(x + 1) * (x + 1)))) <= 1e-15);
  }
}

TEST_CASE("oddness defect") {
  const Grid g(20.0, 512);
  const ComplexField odd = sample_complex(g, [](double x) { return cplx(std::tanh(x) * sech(x), x * sech(x)); });
  CHECK(oddness_defect(antisymmetrize(odd)) == 0.0);
  CHECK(oddness_defect(to_complex(sample_real(g, [](double x) { return sech(x); }))) == doctest::Approx(2.0));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const ComplexField f(g, [&] {
      std::vector<cplx> v(g.size());
      std::normal_distribution<double> n;
      for (auto& z : v) z = {n(rng), n(rng)};
      return v;
    }());
    CHECK(oddness_defect(antisymmetrize(f)) <= 1e-14);
  }
}

TEST_CASE("property: spectral derivative is linear") {
  const Grid g(30.0, 512);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField f = random_field(g, rng), h = random_field(g, rng);
    const double a = u(rng), b = u(rng);
    RealField comb(g);
    for (std::size_t j = 0; j < g.size(); ++j) comb[j] = a * f[j] + b * h[j];
    const RealField dc = spectral_derivative(comb), df = spectral_derivative(f), dh = spectral_derivative(h);
    double err = 0.0, scale = 1.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      err = std::max(err, std::abs(dc[j] - a * df[j] - b * dh[j]));
      scale = std::max(scale, std::abs(dc[j]));
    }
    CHECK(err <= 1e-12 * scale);
  }
}

TEST_CASE("property: derivatives integrate to zero") {
  const Grid g(30.0, 512);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField f = random_field(g, rng);
    CHECK(std::abs(quadrature(spectral_derivative(f))) <= 1e-12);
    // Not localized: still zero because the box is periodic.
    const RealField w = sample_real(g, [&](double x) { return std::cos(3.0 * std::numbers::pi * x / 30.0) + f[0]; });
    CHECK(std::abs(quadrature(spectral_derivative(w))) <= 1e-12);
  }
}

TEST_CASE("property: antisymmetrize is a projection") {
  const Grid g(30.0, 512);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const RealField once = antisymmetrize(random_field(g, rng));
    const RealField twice = antisymmetrize(once);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(once[j] - twice[j]) <= 1e-15);
  }
}
