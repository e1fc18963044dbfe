#include "virial_lab/special_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace virial_lab {

namespace {

// log sech z without overflow.
double log_sech(double z) {
  const double a = std::abs(z);
  return std::numbers::ln2 - a - std::log1p(std::exp(-2.0 * a));
}

ComplexField scale_to_h1(ComplexField u, double eps) {
  const double n = h1_norm(u);
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero field");
  for (auto& v : u.values) v *= eps / n;
  return u;
}

}  // namespace

void SolitonSpec::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("soliton c must be positive");
  if (!(p > 1.0 && p < 5.0)) throw std::invalid_argument("soliton exponent must lie in (1, 5)");
}

RealField soliton_profile(const SolitonSpec& spec, const Grid& g) {
  spec.validate();
  const double q = spec.p - 1.0;
  const double log_amp = std::log(spec.c * (spec.p + 1.0) / 2.0) / q;
  const double k = std::sqrt(spec.c) * q / 2.0;
  return sample_real(g, [&](double x) { return std::exp(log_amp + 2.0 / q * log_sech(k * x)); });
}

ComplexField breather_seed(double c, const Grid& g) {
  if (!(c > 0.0)) throw std::invalid_argument("breather scale must be positive");
  return sample_complex(g, [&](double x) { return cplx(2.0 * std::numbers::sqrt2 * c / std::cosh(c * x), 0.0); });
}

double h1_norm(const ComplexField& u) {
  const ComplexField ux = spectral_derivative(u);
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += std::norm(u[j]) + std::norm(ux[j]);
  return std::sqrt(s * u.grid.dx());
}

ComplexField odd_packet(double eps, double k, double x0, const Grid& g) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be non-negative");
  if (x0 < 0.0) throw std::invalid_argument("x0 must be non-negative");
  const ComplexField seed =
      sample_complex(g, [&](double x) { return std::exp(-(x - x0) * (x - x0)) * std::polar(1.0, k * x); });
  ComplexField u = antisymmetrize(seed);
  if (h1_norm(u) <= 1e-12 * h1_norm(seed)) throw std::invalid_argument("degenerate odd projection");
  if (eps == 0.0) return ComplexField(g);
  return scale_to_h1(u, eps);
}

ComplexField odd_gaussian(double eps, const Grid& g) {
  ComplexField u = antisymmetrize(sample_complex(g, [](double x) { return cplx(x * std::exp(-x * x), 0.0); }));
  if (eps == 0.0) return ComplexField(g);
  return scale_to_h1(u, eps);
}

ComplexField sech_packet(double amplitude, double k, double x0, const Grid& g) {
  return sample_complex(g, [&](double x) { return amplitude / std::cosh(x - x0) * std::polar(1.0, k * x); });
}

RealField random_smooth_field(const Grid& g, std::mt19937_64& rng, Parity parity, double spread) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::uniform_real_distribution<double> freq(0.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (;;) {
    const int K = count(rng);
    RealField f(g);
    for (int b = 0; b < K; ++b) {
      const double amp = unit(rng), c = spread * unit(rng), w = width(rng);
      const double om = freq(rng), th = phase(rng);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double z = (g.x(j) - c) / w;
        f[j] += amp * std::exp(-z * z) * std::cos(om * g.x(j) + th);
      }
    }
    if (parity == Parity::Odd) f = antisymmetrize(f);
    if (parity == Parity::Even) f = symmetrize(f);
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    if (m < 1e-3) continue;
    for (double& v : f.values) v /= m;
    return f;
  }
}

RealField random_density(const Grid& g, std::mt19937_64& rng, double spread) {
  RealField f = random_smooth_field(g, rng, Parity::None, spread);
  for (double& v : f.values) v *= v;
  return f;
}

ComplexField random_complex_field(const Grid& g, std::mt19937_64& rng, Parity parity, double spread) {
  const RealField re = random_smooth_field(g, rng, parity, spread);
  const RealField im = random_smooth_field(g, rng, parity, spread);
  ComplexField u(g);
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = cplx(re[j], im[j]);
  return u;
}

}  // namespace virial_lab
