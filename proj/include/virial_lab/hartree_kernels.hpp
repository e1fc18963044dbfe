#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "virial_lab/grid.hpp"

namespace virial_lab {

/// How the weakly singular kernel |x|^{-a} is discretized on the grid.
///
/// CellAverage uses the exact average of |y|^{-a} over each cell. ZetaCorrected
/// uses point samples off the origin and replaces the origin weight by the
/// Navot/zeta correction -2 zeta(a) dx^{-a}, which removes the O(dx^{1-a})
/// error of punctured trapezoid sums and leaves O(dx^{3-a}).
enum class KernelRule { CellAverage, ZetaCorrected };

/// Riemann zeta restricted to (0, 1), the range needed for 0 < a < 1.
double zeta_0_1(double a);

/// Periodic kernel samples K[m], m in FFT order: displacement m dx for
/// m <= N/2 and (m - N) dx above, so that (W * rho)_i = dx sum_j K[(i-j) mod N] rho_j.
std::vector<double> riesz_kernel(const Grid& g, double a, KernelRule rule);

/// Odd derivative kernel s |s|^{-a-2} tabulated at s = k dx, k = 0..N-1 (k = 0 set to 0).
std::vector<double> odd_kernel_table(const Grid& g, double a);

/// Per-node weight multiplying phi'(x_j) rho_j^2 in the diagonal of H_sym.
double hsym_diagonal_weight(const Grid& g, double a, KernelRule rule);

/// Serial reference kernels: O(N^2) sums evaluated row by row.
namespace serial {

std::vector<double> convolve(const Grid& g, std::span<const double> kernel, std::span<const double> rho);

/// 1/2 dx^2 sum_{j != m} (phi_j - phi_m)(x_j - x_m)|x_j - x_m|^{-a-2} rho_j rho_m + diagonal.
double hartree_sym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                   std::span<const double> rho, double a, KernelRule rule);

/// dx^2 sum_{j != m} phi_j (x_j - x_m)|x_j - x_m|^{-a-2} rho_j rho_m + diagonal.
double hartree_asym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                    std::span<const double> rho, double a, KernelRule rule);

}  // namespace serial

/// OpenMP versions of the serial kernels. Row partial sums are reduced in
/// index order so results are bitwise identical to serial:: for any thread count.
namespace parallel {

std::vector<double> convolve(const Grid& g, std::span<const double> kernel, std::span<const double> rho);

double hartree_sym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                   std::span<const double> rho, double a, KernelRule rule);

double hartree_asym(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                    std::span<const double> rho, double a, KernelRule rule);

}  // namespace parallel

/// O(N log N) circular convolution with a cached kernel spectrum.
std::vector<double> convolve_fft(const Grid& g, double a, KernelRule rule, std::span<const double> rho);

/// O(N log N) evaluation of the asymmetric form through a zero-padded linear
/// convolution; equals the symmetrized sum up to rounding.
double hartree_sym_fft(const Grid& g, std::span<const double> phi, std::span<const double> phi_x,
                       std::span<const double> rho, double a, KernelRule rule);

void set_kernel_threads(int n);
int kernel_threads();

}  // namespace virial_lab
