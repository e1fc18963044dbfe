#pragma once

#include <cstdint>
#include <random>

#include "virial_lab/grid.hpp"

namespace virial_lab {

/// Standing wave Q_c e^{ict} of iu_t + u_xx = -|u|^{p-1} u.
struct SolitonSpec {
  double c = 1.0;
  double p = 3.0;

  void validate() const;
};

/// Q_c(x) = [c(p+1)/2]^{1/(p-1)} sech^{2/(p-1)}(sqrt(c)(p-1)x/2), the positive
/// solution of Q'' - cQ + Q^p = 0.
RealField soliton_profile(const SolitonSpec& spec, const Grid& g);

/// 2 sqrt(2) c sech(cx): the two-soliton breather datum of the focusing cubic
/// equation iu_t + u_xx + |u|^2 u = 0, rescaled by u -> c u(c^2 t, cx).
ComplexField breather_seed(double c, const Grid& g);

/// (int |u|^2 + |u_x|^2)^{1/2}.
double h1_norm(const ComplexField& u);

/// Odd part of exp(-(x - x0)^2 + ikx), scaled to H^1 norm eps.
/// Throws "degenerate odd projection" when the odd part vanishes.
ComplexField odd_packet(double eps, double k, double x0, const Grid& g);

/// x exp(-x^2) scaled to H^1 norm eps.
ComplexField odd_gaussian(double eps, const Grid& g);

/// amplitude sech(x - x0) e^{ikx}.
ComplexField sech_packet(double amplitude, double k, double x0, const Grid& g);

enum class Parity { None, Odd, Even };

/// Smooth localized real field: a few random Gaussian bumps times a random
/// slow oscillation, optionally projected to a parity sector, max |f| = 1.
RealField random_smooth_field(const Grid& g, std::mt19937_64& rng, Parity parity = Parity::None,
                              double spread = 5.0);

/// Nonnegative density |f|^2 of a random smooth field.
RealField random_density(const Grid& g, std::mt19937_64& rng, double spread = 5.0);

/// Re + i Im from two independent random smooth fields.
ComplexField random_complex_field(const Grid& g, std::mt19937_64& rng, Parity parity = Parity::None,
                                  double spread = 5.0);

}  // namespace virial_lab
