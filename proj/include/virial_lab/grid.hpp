#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace virial_lab {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L) with N nodes x_j = -L + j dx.
///
/// The node set is symmetric: node j pairs with node (N - j) mod N under
/// x -> -x, and x = -L is self-paired (it is identified with +L).
class Grid {
 public:
  Grid(double half_length, std::size_t n_points);

  double half_length() const { return half_length_; }
  std::size_t size() const { return n_; }
  double dx() const { return dx_; }

  double x(std::size_t j) const { return -half_length_ + static_cast<double>(j) * dx_; }
  std::size_t mirror(std::size_t j) const { return (n_ - j) % n_; }

  /// Angular wavenumber of Fourier mode m in FFT ordering.
  double wavenumber(std::size_t m) const;

  std::vector<double> nodes() const;
  std::vector<double> wavenumbers() const;

  bool operator==(const Grid& other) const = default;

 private:
  double half_length_;
  std::size_t n_;
  double dx_;
};

Grid make_grid(double half_length, std::size_t n_points);

struct RealField {
  Grid grid;
  std::vector<double> values;

  explicit RealField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const Grid& g, std::vector<double> v);

  double operator[](std::size_t j) const { return values[j]; }
  double& operator[](std::size_t j) { return values[j]; }
  std::size_t size() const { return values.size(); }
};

struct ComplexField {
  Grid grid;
  std::vector<cplx> values;
  double t = 0.0;

  explicit ComplexField(const Grid& g) : grid(g), values(g.size(), cplx{}) {}
  ComplexField(const Grid& g, std::vector<cplx> v, double time = 0.0);

  cplx operator[](std::size_t j) const { return values[j]; }
  cplx& operator[](std::size_t j) { return values[j]; }
  std::size_t size() const { return values.size(); }
};

template <class F>
RealField sample_real(const Grid& g, F&& f) {
  RealField out(g);
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f(g.x(j));
  return out;
}

template <class F>
ComplexField sample_complex(const Grid& g, F&& f) {
  ComplexField out(g);
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f(g.x(j));
  return out;
}

// Spectral calculus.
ComplexField spectral_derivative(const ComplexField& f);
RealField spectral_derivative(const RealField& f);
/// Derivative of a raw sample vector on `g`; used by hot loops to avoid copies.
void spectral_derivative(const Grid& g, std::span<const cplx> in, std::span<cplx> out);

// Periodic rectangle rule dx * sum f_j.
double quadrature(const Grid& g, std::span<const double> f);
cplx quadrature(const Grid& g, std::span<const cplx> f);
double quadrature(const RealField& f);
cplx quadrature(const ComplexField& f);

ComplexField antisymmetrize(const ComplexField& f);
RealField antisymmetrize(const RealField& f);
RealField symmetrize(const RealField& f);

/// max_j |f(x_j) + f(-x_j)| / max(1, max_j |f(x_j)|).
double oddness_defect(const ComplexField& f);
double evenness_defect(const RealField& f);

RealField modulus_squared(const ComplexField& u);
RealField real_part(const ComplexField& u);
RealField imag_part(const ComplexField& u);
ComplexField to_complex(const RealField& f);

}  // namespace virial_lab
