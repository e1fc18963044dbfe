#pragma once

#include <string>
#include <variant>
#include <vector>

#include "virial_lab/grid.hpp"
#include "virial_lab/hartree_kernels.hpp"

namespace virial_lab {

struct PowerTerm {
  double coefficient;
  double exponent;  // p in (1, 5]
};

/// f(s) = sum_j c_j s^{(p_j-1)/2}, F(s) = int_0^s f.
struct NonlinearitySpec {
  std::vector<PowerTerm> terms;

  static NonlinearitySpec pure_power(double coefficient, double exponent);
  static NonlinearitySpec focusing(double p) { return pure_power(-1.0, p); }
  static NonlinearitySpec defocusing(double p) { return pure_power(1.0, p); }

  void validate() const;
  bool is_zero() const;
};

double f_eval(const NonlinearitySpec& nl, double s);
double F_eval(const NonlinearitySpec& nl, double s);

/// Closed-form even potential shapes; `amplitude * shape(x / width)`.
struct PotentialShape {
  enum class Kind { Zero, Sech2, Sech4, Gaussian };
  Kind kind = Kind::Zero;
  double amplitude = 0.0;
  double width = 1.0;

  double value(double x) const;
  double derivative(double x) const;
  static Kind parse(const std::string& name);
  std::string name() const;
};

struct PotentialSpec {
  double mu = 0.0;
  RealField V;
  RealField V_x;

  PotentialSpec(double coupling, RealField potential, RealField derivative);
  static PotentialSpec from_shape(const Grid& g, double coupling, const PotentialShape& shape);

  void validate() const;
  /// dx sum (|V| + |V_x|) cosh(2x); +inf if a term overflows.
  double decay_certificate() const;
};

struct HartreeSpec {
  double a = 0.5;
  int sigma = 1;
  KernelRule rule = KernelRule::ZetaCorrected;

  void validate() const;
};

struct Semilinear {
  NonlinearitySpec nl;
};

struct WithPotential {
  NonlinearitySpec nl;
  PotentialSpec potential;
};

struct Hartree {
  HartreeSpec spec;
};

using ModelSpec = std::variant<Semilinear, WithPotential, Hartree>;

void validate(const ModelSpec& model);
std::string model_name(const ModelSpec& model);

/// Samples of (W * |u|^2) with W = |x|^{-a}, circular on the box.
RealField hartree_potential(const ComplexField& u, const HartreeSpec& h);

double mass(const ComplexField& u);
/// P = Im int u conj(u_x).
double momentum(const ComplexField& u);
/// E = 1/2 int |u_x|^2 + G(u).
double energy(const ComplexField& u, const ModelSpec& model);
/// The potential part G(u) of the energy.
double potential_energy(const ComplexField& u, const ModelSpec& model);

/// Real multiplier q(x) such that g(u) = q u; phase of the nonlinear substep.
RealField nonlinear_multiplier(const ComplexField& u, const ModelSpec& model);

ComplexField apply_g(const ComplexField& u, const ModelSpec& model);

}  // namespace virial_lab
