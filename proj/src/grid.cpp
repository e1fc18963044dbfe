#include "virial_lab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "virial_lab/fft.hpp"

namespace virial_lab {

Grid::Grid(double half_length, std::size_t n_points) : half_length_(half_length), n_(n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw std::invalid_argument("L must be positive");
  if (n_points % 2 != 0) throw std::invalid_argument("N must be even");
  if (n_points < 16) throw std::invalid_argument("N must be at least 16");
  if ((n_points & (n_points - 1)) != 0) throw std::invalid_argument("N must be a power of two");
  dx_ = 2.0 * half_length / static_cast<double>(n_points);
}

double Grid::wavenumber(std::size_t m) const {
  const double base = std::numbers::pi / half_length_;
  const auto mm = static_cast<double>(m);
  return m < n_ / 2 ? base * mm : base * (mm - static_cast<double>(n_));
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> out(n_);
  for (std::size_t m = 0; m < n_; ++m) out[m] = wavenumber(m);
  return out;
}

Grid make_grid(double half_length, std::size_t n_points) { return Grid(half_length, n_points); }

RealField::RealField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
}

ComplexField::ComplexField(const Grid& g, std::vector<cplx> v, double time)
    : grid(g), values(std::move(v)), t(time) {
  if (values.size() != grid.size()) throw std::invalid_argument("field length does not match grid");
}

void spectral_derivative(const Grid& g, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = g.size();
  auto& fft = fft_for(n);
  std::vector<cplx> hat(n);
  fft.forward(in, hat);
  for (std::size_t m = 0; m < n; ++m) hat[m] *= cplx(0.0, g.wavenumber(m));
  // The Nyquist mode has no well-defined odd derivative.
  hat[n / 2] = 0.0;
  fft.inverse(hat, out);
}

ComplexField spectral_derivative(const ComplexField& f) {
  ComplexField out(f.grid);
  out.t = f.t;
  spectral_derivative(f.grid, f.values, out.values);
  return out;
}

RealField spectral_derivative(const RealField& f) {
  const ComplexField d = spectral_derivative(to_complex(f));
  return real_part(d);
}

double quadrature(const Grid& g, std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.dx();
}

cplx quadrature(const Grid& g, std::span<const cplx> f) {
  cplx s{};
  for (const cplx& v : f) s += v;
  return s * g.dx();
}

double quadrature(const RealField& f) { return quadrature(f.grid, f.values); }
cplx quadrature(const ComplexField& f) { return quadrature(f.grid, f.values); }

ComplexField antisymmetrize(const ComplexField& f) {
  ComplexField out(f.grid);
  out.t = f.t;
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = 0.5 * (f[j] - f[f.grid.mirror(j)]);
  return out;
}

RealField antisymmetrize(const RealField& f) {
  RealField out(f.grid);
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = 0.5 * (f[j] - f[f.grid.mirror(j)]);
  return out;
}

RealField symmetrize(const RealField& f) {
  RealField out(f.grid);
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = 0.5 * (f[j] + f[f.grid.mirror(j)]);
  return out;
}

double oddness_defect(const ComplexField& f) {
  double defect = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    defect = std::max(defect, std::abs(f[j] + f[f.grid.mirror(j)]));
    peak = std::max(peak, std::abs(f[j]));
  }
  return peak > 0.0 ? defect / peak : 0.0;
}

double evenness_defect(const RealField& f) {
  double defect = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    defect = std::max(defect, std::abs(f[j] - f[f.grid.mirror(j)]));
    peak = std::max(peak, std::abs(f[j]));
  }
  return peak > 0.0 ? defect / peak : 0.0;
}

RealField modulus_squared(const ComplexField& u) {
  RealField out(u.grid);
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = std::norm(u[j]);
  return out;
}

RealField real_part(const ComplexField& u) {
  RealField out(u.grid);
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j].real();
  return out;
}

RealField imag_part(const ComplexField& u) {
  RealField out(u.grid);
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j].imag();
  return out;
}

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid);
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j];
  return out;
}

}  // namespace virial_lab
