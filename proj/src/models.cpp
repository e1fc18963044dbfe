#include "virial_lab/models.hpp"

#include <cmath>
#include <stdexcept>

namespace virial_lab {

namespace {

double power_half(double s, double exponent_times_two) {
  // s^{e/2} via exp-log, s clamped at 0.
  if (s <= 0.0) return 0.0;
  return std::exp(0.5 * exponent_times_two * std::log(s));
}

double sech(double x) { return 1.0 / std::cosh(x); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

NonlinearitySpec NonlinearitySpec::pure_power(double coefficient, double exponent) {
  NonlinearitySpec nl{{PowerTerm{coefficient, exponent}}};
  nl.validate();
  return nl;
}

void NonlinearitySpec::validate() const {
  if (terms.empty()) throw std::invalid_argument("nonlinearity needs at least one term");
  bool has_subcritical = false;
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("nonlinearity coefficient must be finite");
    if (!(t.exponent > 1.0 && t.exponent <= 5.0))
      throw std::invalid_argument("nonlinearity exponent must lie in (1, 5]");
    if (t.exponent < 5.0) has_subcritical = true;
  }
  if (!has_subcritical) throw std::invalid_argument("an exponent p = 5 is only allowed as a perturbation term");
}

bool NonlinearitySpec::is_zero() const {
  for (const auto& t : terms)
    if (t.coefficient != 0.0) return false;
  return true;
}

double f_eval(const NonlinearitySpec& nl, double s) {
  if (s < 0.0) throw std::invalid_argument("f_eval requires s >= 0");
  double out = 0.0;
  for (const auto& t : nl.terms) out += t.coefficient * power_half(s, t.exponent - 1.0);
  return out;
}

double F_eval(const NonlinearitySpec& nl, double s) {
  if (s < 0.0) throw std::invalid_argument("F_eval requires s >= 0");
  double out = 0.0;
  for (const auto& t : nl.terms) out += t.coefficient * 2.0 / (t.exponent + 1.0) * power_half(s, t.exponent + 1.0);
  return out;
}

double PotentialShape::value(double x) const {
  const double y = x / width;
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Sech2: return amplitude * std::pow(sech(y), 2);
    case Kind::Sech4: return amplitude * std::pow(sech(y), 4);
    case Kind::Gaussian: return amplitude * std::exp(-y * y);
  }
  return 0.0;
}

double PotentialShape::derivative(double x) const {
  const double y = x / width;
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Sech2: return -2.0 * amplitude / width * std::pow(sech(y), 2) * std::tanh(y);
    case Kind::Sech4: return -4.0 * amplitude / width * std::pow(sech(y), 4) * std::tanh(y);
    case Kind::Gaussian: return -2.0 * y / width * amplitude * std::exp(-y * y);
  }
  return 0.0;
}

PotentialShape::Kind PotentialShape::parse(const std::string& name) {
  if (name == "zero") return Kind::Zero;
  if (name == "sech2") return Kind::Sech2;
  if (name == "sech4") return Kind::Sech4;
  if (name == "gaussian") return Kind::Gaussian;
  throw std::invalid_argument("unknown potential shape '" + name + "'");
}

std::string PotentialShape::name() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Sech2: return "sech2";
    case Kind::Sech4: return "sech4";
    case Kind::Gaussian: return "gaussian";
  }
  return "zero";
}

PotentialSpec::PotentialSpec(double coupling, RealField potential, RealField derivative)
    : mu(coupling), V(std::move(potential)), V_x(std::move(derivative)) {
  validate();
}

PotentialSpec PotentialSpec::from_shape(const Grid& g, double coupling, const PotentialShape& shape) {
  return PotentialSpec(coupling, sample_real(g, [&](double x) { return shape.value(x); }),
                       sample_real(g, [&](double x) { return shape.derivative(x); }));
}

void PotentialSpec::validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("potential coupling mu must be >= 0");
  if (!(V.grid == V_x.grid)) throw std::invalid_argument("V and V_x must share a grid");
  if (evenness_defect(V) > 1e-12) throw std::invalid_argument("potential V must be even");
}

double PotentialSpec::decay_certificate() const {
  double s = 0.0;
  for (std::size_t j = 0; j < V.size(); ++j) {
    const double w = std::abs(V[j]) + std::abs(V_x[j]);
    if (w == 0.0) continue;
    s += w * std::cosh(2.0 * V.grid.x(j));
  }
  return s * V.grid.dx();
}

void HartreeSpec::validate() const {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("Hartree exponent a must satisfy 0 < a < 1");
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("Hartree sigma must be +1 or -1");
}

void validate(const ModelSpec& model) {
  std::visit(overloaded{[](const Semilinear& m) { m.nl.validate(); },
                        [](const WithPotential& m) {
                          m.nl.validate();
                          m.potential.validate();
                        },
                        [](const Hartree& m) { m.spec.validate(); }},
             model);
}

std::string model_name(const ModelSpec& model) {
  return std::visit(overloaded{[](const Semilinear&) { return std::string("semilinear"); },
                               [](const WithPotential&) { return std::string("potential"); },
                               [](const Hartree&) { return std::string("hartree"); }},
                    model);
}

RealField hartree_potential(const ComplexField& u, const HartreeSpec& h) {
  h.validate();
  const RealField rho = modulus_squared(u);
  return RealField(u.grid, convolve_fft(u.grid, h.a, h.rule, rho.values));
}

double mass(const ComplexField& u) {
  return quadrature(modulus_squared(u));
}

double momentum(const ComplexField& u) {
  const ComplexField ux = spectral_derivative(u);
  cplx s{};
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * std::conj(ux[j]);
  return (s * u.grid.dx()).imag();
}

double potential_energy(const ComplexField& u, const ModelSpec& model) {
  const RealField rho = modulus_squared(u);
  const Grid& g = u.grid;
  return std::visit(overloaded{[&](const Semilinear& m) {
                                 double s = 0.0;
                                 for (double r : rho.values) s += F_eval(m.nl, r);
                                 return 0.5 * s * g.dx();
                               },
                               [&](const WithPotential& m) {
                                 double s = 0.0, v = 0.0;
                                 for (std::size_t j = 0; j < rho.size(); ++j) {
                                   s += F_eval(m.nl, rho[j]);
                                   v += m.potential.V[j] * rho[j];
                                 }
                                 return 0.5 * m.potential.mu * v * g.dx() + 0.5 * s * g.dx();
                               },
                               [&](const Hartree& m) {
                                 const RealField w = hartree_potential(u, m.spec);
                                 double s = 0.0;
                                 for (std::size_t j = 0; j < rho.size(); ++j) s += w[j] * rho[j];
                                 return 0.25 * m.spec.sigma * s * g.dx();
                               }},
                    model);
}

double energy(const ComplexField& u, const ModelSpec& model) {
  const ComplexField ux = spectral_derivative(u);
  return 0.5 * mass(ux) + potential_energy(u, model);
}

RealField nonlinear_multiplier(const ComplexField& u, const ModelSpec& model) {
  const RealField rho = modulus_squared(u);
  return std::visit(overloaded{[&](const Semilinear& m) {
                                 RealField q(u.grid);
                                 for (std::size_t j = 0; j < q.size(); ++j) q[j] = f_eval(m.nl, rho[j]);
                                 return q;
                               },
                               [&](const WithPotential& m) {
                                 RealField q(u.grid);
                                 for (std::size_t j = 0; j < q.size(); ++j)
                                   q[j] = m.potential.mu * m.potential.V[j] + f_eval(m.nl, rho[j]);
                                 return q;
                               },
                               [&](const Hartree& m) {
                                 RealField q = hartree_potential(u, m.spec);
                                 for (double& v : q.values) v *= m.spec.sigma;
                                 return q;
                               }},
                    model);
}

ComplexField apply_g(const ComplexField& u, const ModelSpec& model) {
  const RealField q = nonlinear_multiplier(u, model);
  ComplexField out(u.grid);
  out.t = u.t;
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = q[j] * u[j];
  return out;
}

}  // namespace virial_lab
