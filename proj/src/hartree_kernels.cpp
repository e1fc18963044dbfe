#include "virial_lab/hartree_kernels.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "virial_lab/fft.hpp"

namespace virial_lab {

namespace {

void check_exponent(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("Hartree exponent a must lie in (0, 1)");
}

double ordered_sum(const std::vector<double>& parts) {
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

// Shared row kernels so that serial and parallel paths perform identical arithmetic.
double conv_row(std::size_t i, std::size_t n, std::span<const double> kernel, std::span<const double> rho) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += kernel[(i + n - j) % n] * rho[j];
  return s;
}

double sym_row(std::size_t j, std::size_t n, const std::vector<double>& table, std::span<const double> phi,
               std::span<const double> rho) {
  double s = 0.0;
  const double pj = phi[j];
  for (std::size_t m = 0; m < j; ++m) s += (pj - phi[m]) * table[j - m] * rho[m];
  for (std::size_t m = j + 1; m < n; ++m) s -= (pj - phi[m]) * table[m - j] * rho[m];
  return s * rho[j];
}

double asym_row(std::size_t j, std::size_t n, const std::vector<double>& table, std::span<const double> phi,
                std::span<const double> rho) {
  double s = 0.0;
  for (std::size_t m = 0; m < j; ++m) s += table[j - m] * rho[m];
  for (std::size_t m = j + 1; m < n; ++m) s -= table[m - j] * rho[m];
  return s * phi[j] * rho[j];
}

double diagonal_sum(const Grid& g, std::span<const double> phi_x, std::span<const double> rho, double a,
                    KernelRule rule) {
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += phi_x[j] * rho[j] * rho[j];
  return 0.5 * g.dx() * hsym_diagonal_weight(g, a, rule) * s;
}

int g_threads = 0;

}  // namespace

double zeta_0_1(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("zeta_0_1 requires 0 < a < 1");
  return std::riemann_zeta(a);
}

std::vector<double> riesz_kernel(const Grid& g, double a, KernelRule rule) {
  check_exponent(a);
  const std::size_t n = g.size();
  const double dx = g.dx();
  std::vector<double> k(n);
  for (std::size_t m = 1; m < n; ++m) {
    const double d = (m <= n / 2) ? static_cast<double>(m) * dx : static_cast<double>(n - m) * dx;
    if (rule == KernelRule::CellAverage) {
      const double hi = d + 0.5 * dx, lo = d - 0.5 * dx;
      k[m] = (std::pow(hi, 1.0 - a) - std::pow(lo, 1.0 - a)) / ((1.0 - a) * dx);
    } else {
      k[m] = std::pow(d, -a);
    }
  }
  if (rule == KernelRule::CellAverage)
    k[0] = 2.0 / (1.0 - a) * std::pow(0.5 * dx, 1.0 - a) / dx;
  else
    k[0] = -2.0 * zeta_0_1(a) * std::pow(dx, -a);
  return k;
}

std::vector<double> odd_kernel_table(const Grid& g, double a) {
  check_exponent(a);
  std::vector<double> t(g.size(), 0.0);
  for (std::size_t k = 1; k < g.size(); ++k) t[k] = std::pow(static_cast<double>(k) * g.dx(), -a - 1.0);
  return t;
}

double hsym_diagonal_weight(const Grid& g, double a, KernelRule rule) {
  check_exponent(a);
  if (rule == KernelRule::CellAverage) return 2.0 / (1.0 - a) * std::pow(0.5 * g.dx(), 1.0 - a);
  return -2.0 * zeta_0_1(a) * std::pow(g.dx(), 1.0 - a);
}

namespace serial {

std::vector<double> convolve(const Grid& g, std::span<const double> kernel, std::span<const double> rho) {
  const std::size_t n = g.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = g.dx() * conv_row(i, n, kernel, rho);
  return out;
}

double hartree_sym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                   std::span<const double> rho, double a, KernelRule rule) {
  const auto table = odd_kernel_table(g, a);
  const std::size_t n = g.size();
  std::vector<double> rows(n);
  for (std::size_t j = 0; j < n; ++j) rows[j] = sym_row(j, n, table, phi, rho);
  return 0.5 * g.dx() * g.dx() * ordered_sum(rows) + diagonal_sum(g, phi_x, rho, a, rule);
}

double hartree_asym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                    std::span<const double> rho, double a, KernelRule rule) {
  const auto table = odd_kernel_table(g, a);
  const std::size_t n = g.size();
  std::vector<double> rows(n);
  for (std::size_t j = 0; j < n; ++j) rows[j] = asym_row(j, n, table, phi, rho);
  return g.dx() * g.dx() * ordered_sum(rows) + diagonal_sum(g, phi_x, rho, a, rule);
}

}  // namespace serial

namespace parallel {

std::vector<double> convolve(const Grid& g, std::span<const double> kernel, std::span<const double> rho) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<double> out(g.size());
#pragma omp parallel for schedule(static) num_threads(kernel_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = g.dx() * conv_row(static_cast<std::size_t>(i), g.size(), kernel, rho);
  return out;
}

double hartree_sym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                   std::span<const double> rho, double a, KernelRule rule) {
  const auto table = odd_kernel_table(g, a);
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<double> rows(g.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(kernel_threads())
  for (std::ptrdiff_t j = 0; j < n; ++j) rows[j] = sym_row(static_cast<std::size_t>(j), g.size(), table, phi, rho);
  return 0.5 * g.dx() * g.dx() * ordered_sum(rows) + diagonal_sum(g, phi_x, rho, a, rule);
}

double hartree_asym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                    std::span<const double> rho, double a, KernelRule rule) {
  const auto table = odd_kernel_table(g, a);
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<double> rows(g.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(kernel_threads())
  for (std::ptrdiff_t j = 0; j < n; ++j) rows[j] = asym_row(static_cast<std::size_t>(j), g.size(), table, phi, rho);
  return g.dx() * g.dx() * ordered_sum(rows) + diagonal_sum(g, phi_x, rho, a, rule);
}

}  // namespace parallel

namespace {

using SpectrumKey = std::tuple<std::size_t, double, double, int>;

// Spectrum of the periodic Riesz kernel, or of the zero-padded odd kernel.
const std::vector<cplx>& cached_spectrum(const Grid& g, double a, KernelRule rule, bool odd_padded) {
  thread_local std::map<SpectrumKey, std::vector<cplx>> cache;
  const int tag = odd_padded ? -1 : static_cast<int>(rule);
  const SpectrumKey key{g.size(), g.half_length(), a, tag};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<cplx> spec;
  if (!odd_padded) {
    const auto k = riesz_kernel(g, a, rule);
    std::vector<cplx> kc(k.begin(), k.end());
    spec.resize(g.size());
    fft_for(g.size()).forward(kc, spec);
  } else {
    const std::size_t n = g.size();
    const auto table = odd_kernel_table(g, a);
    std::vector<cplx> kc(2 * n, cplx{});
    for (std::size_t k = 1; k < n; ++k) {
      kc[k] = table[k];
      kc[2 * n - k] = -table[k];
    }
    spec.resize(2 * n);
    fft_for(2 * n).forward(kc, spec);
  }
  if (cache.size() > 16) cache.clear();
  return cache.emplace(key, std::move(spec)).first->second;
}

}  // namespace

std::vector<double> convolve_fft(const Grid& g, double a, KernelRule rule, std::span<const double> rho) {
  const std::size_t n = g.size();
  const auto& spec = cached_spectrum(g, a, rule, false);
  std::vector<cplx> buf(rho.begin(), rho.end());
  auto& fft = fft_for(n);
  fft.forward(buf, buf);
  for (std::size_t m = 0; m < n; ++m) buf[m] *= spec[m];
  fft.inverse(buf, buf);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = g.dx() * buf[i].real();
  return out;
}

double hartree_sym_fft(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                       std::span<const double> rho, double a, KernelRule rule) {
  const std::size_t n = g.size();
  const auto& spec = cached_spectrum(g, a, rule, true);
  std::vector<cplx> buf(2 * n, cplx{});
  for (std::size_t j = 0; j < n; ++j) buf[j] = rho[j];
  auto& fft = fft_for(2 * n);
  fft.forward(buf, buf);
  for (std::size_t m = 0; m < 2 * n; ++m) buf[m] *= spec[m];
  fft.inverse(buf, buf);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += phi[j] * rho[j] * buf[j].real();
  return g.dx() * g.dx() * s + diagonal_sum(g, phi_x, rho, a, rule);
}

void set_kernel_threads(int n) { g_threads = n; }

int kernel_threads() {
  if (g_threads > 0) return g_threads;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace virial_lab
