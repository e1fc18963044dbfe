#include "virial_lab/virial.hpp"

#include <cmath>
#include <stdexcept>

#include "virial_lab/evolve.hpp"

namespace virial_lab {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

// dx sum a_j b_j
double weighted_sum(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s * g.dx();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

VirialWeights make_virial_weights(const Grid& g, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  VirialWeights W{lambda, RealField(g), RealField(g), RealField(g), RealField(g), RealField(g), RealField(g)};
  const double l2 = lambda * lambda;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = g.x(j) / lambda;
    const double s = sech(y), t = std::tanh(y);
    W.phi[j] = lambda * t;
    W.phi_x[j] = s * s;
    W.phi_xxx[j] = -2.0 / l2 * s * s * (s * s - 2.0 * t * t);
    W.alpha[j] = s;
    W.alpha_x[j] = -s * t / lambda;
    W.alpha_xx[j] = (s * t * t - s * s * s) / l2;
  }
  return W;
}

DiagWeight make_diag_weight(const Grid& g) {
  return DiagWeight{sample_real(g, [](double x) { return sech(x); })};
}

double virial_I(const ComplexField& u, const RealField& phi) {
  const ComplexField ux = spectral_derivative(u);
  cplx s{};
  for (std::size_t j = 0; j < u.size(); ++j) s += phi[j] * u[j] * std::conj(ux[j]);
  return (s * u.grid.dx()).imag();
}

VirialTerms virial_terms(const ComplexField& u, const VirialWeights& W, const ModelSpec& model) {
  const Grid& g = u.grid;
  const ComplexField ux = spectral_derivative(u);
  const RealField rho = modulus_squared(u);
  const RealField grad = modulus_squared(ux);

  VirialTerms t;
  t.kinetic = 2.0 * weighted_sum(g, W.phi_x.values, grad.values);
  t.curvature = -0.5 * weighted_sum(g, W.phi_xxx.values, rho.values);

  auto semilinear_part = [&](const NonlinearitySpec& nl) {
    double s = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const double r = rho[j];
      s += W.phi_x[j] * (F_eval(nl, r) - f_eval(nl, r) * r);
    }
    return -s * g.dx();
  };

  std::visit(overloaded{[&](const Semilinear& m) { t.nonlinear = semilinear_part(m.nl); },
                        [&](const WithPotential& m) {
                          double s = 0.0;
                          for (std::size_t j = 0; j < rho.size(); ++j) s += W.phi[j] * m.potential.V_x[j] * rho[j];
                          t.potential = -m.potential.mu * s * g.dx();
                          t.nonlinear = semilinear_part(m.nl);
                        },
                        [&](const Hartree& m) {
                          t.nonlinear = m.spec.sigma * m.spec.a *
                                        hartree_sym_term(rho, W.phi, W.phi_x, m.spec.a, m.spec.rule);
                        }},
             model);
  return t;
}

double virial_rhs(const ComplexField& u, const VirialWeights& W, const ModelSpec& model) {
  return virial_terms(u, W, model).total();
}

VirialIdentityCheck check_virial_identity(const ComplexField& u0, const ModelSpec& model, const VirialWeights& W,
                                          double dt) {
  SplitStepper forward(u0.grid, model, dt);
  SplitStepper backward(u0.grid, model, -dt);
  ComplexField up = u0, um = u0;
  forward.step(up);
  backward.step(um);
  VirialIdentityCheck c;
  c.lhs = -(virial_I(up, W.phi) - virial_I(um, W.phi)) / (2.0 * dt);
  c.rhs = virial_rhs(u0, W, model);
  c.defect = std::abs(c.lhs - c.rhs);
  return c;
}

RealField simon_v0_field(const RealField& V_x, double lambda) {
  RealField v0(V_x.grid);
  for (std::size_t j = 0; j < V_x.size(); ++j) {
    const double y = V_x.grid.x(j) / lambda;
    if (V_x[j] == 0.0 || std::abs(y) > 350.0) continue;
    const double c = std::cosh(y);
    v0[j] = -V_x[j] * lambda * std::tanh(y) * c * c;
  }
  return v0;
}

BilinearReport transformed_form(const RealField& v, const VirialWeights& W, const PotentialSpec* potential) {
  const Grid& g = v.grid;
  const RealField vx = spectral_derivative(v);
  RealField v0(g);
  if (potential) v0 = simon_v0_field(potential->V_x, W.lambda);
  double grad_sq = 0.0, well = 0.0, v0_term = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    grad_sq += vx[j] * vx[j];
    // sech^2(x/lambda) = alpha^2
    well += W.alpha[j] * W.alpha[j] * v[j] * v[j];
    v0_term += v0[j] * v[j] * v[j];
  }
  const double dx = g.dx();
  const double mu = potential ? potential->mu : 0.0;
  BilinearReport r;
  r.grad_sq = grad_sq * dx;
  r.L_form = (grad_sq - well / (W.lambda * W.lambda)) * dx;
  r.K_form = (grad_sq + mu * v0_term) * dx;
  r.B_transformed = r.L_form + r.K_form;
  r.ratio = r.grad_sq > 0.0 ? r.B_transformed / r.grad_sq : 0.0;
  return r;
}

BilinearReport bilinear_B(const RealField& w, const VirialWeights& W, const PotentialSpec* potential) {
  const Grid& g = w.grid;
  const RealField wx = spectral_derivative(w);
  RealField v(g);
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = W.alpha[j] * w[j];

  double b_grad = 0.0, b_curv = 0.0, b_pot = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    b_grad += W.phi_x[j] * wx[j] * wx[j];
    b_curv += W.phi_xxx[j] * w[j] * w[j];
    if (potential) b_pot += W.phi[j] * potential->V_x[j] * w[j] * w[j];
  }
  const double mu = potential ? potential->mu : 0.0;
  BilinearReport r = transformed_form(v, W, potential);
  r.B = (2.0 * b_grad - 0.5 * b_curv - mu * b_pot) * g.dx();
  return r;
}

double hartree_sym_term(const RealField& rho, const RealField& phi, const RealField& phi_x, double a,
                        KernelRule rule, HsymMethod method) {
  const Grid& g = rho.grid;
  switch (method) {
    case HsymMethod::Fft: return hartree_sym_fft(g, phi.values, phi_x.values, rho.values, a, rule);
    case HsymMethod::SerialDirect: return serial::hartree_sym(g, phi.values, phi_x.values, rho.values, a, rule);
    case HsymMethod::ParallelDirect:
      return parallel::hartree_sym(g, phi.values, phi_x.values, rho.values, a, rule);
  }
  return 0.0;
}

double hartree_sym_term(const ComplexField& u, const RealField& phi, const RealField& phi_x, double a,
                        KernelRule rule, HsymMethod method) {
  return hartree_sym_term(modulus_squared(u), phi, phi_x, a, rule, method);
}

double hartree_asym_term(const RealField& rho, const RealField& phi, const RealField& phi_x, double a,
                         KernelRule rule) {
  return parallel::hartree_asym(rho.grid, phi.values, phi_x.values, rho.values, a, rule);
}

double weighted_h1_norm_sq(const ComplexField& u, const DiagWeight& w) {
  const ComplexField ux = spectral_derivative(u);
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += w.w[j] * (std::norm(ux[j]) + std::norm(u[j]));
  return s * u.grid.dx();
}

double weighted_l2_norm_sq(const ComplexField& u, const DiagWeight& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += w.w[j] * std::norm(u[j]);
  return s * u.grid.dx();
}

CoercivityBound coercivity_weighted_bound(const ComplexField& u, const VirialWeights& W,
                                          const PotentialSpec* potential) {
  CoercivityBound c;
  c.lhs = weighted_h1_norm_sq(u, make_diag_weight(u.grid));
  c.rhs = bilinear_B(real_part(u), W, potential).B + bilinear_B(imag_part(u), W, potential).B;
  if (c.rhs > 0.0) c.ratio = c.lhs / c.rhs;
  c.violation = c.rhs <= 0.0 && c.lhs > 0.0;
  return c;
}

LowerBoundCheck virial_lower_bound_check(const ComplexField& u, const VirialWeights& W, const ModelSpec& model,
                                         double c_test) {
  LowerBoundCheck c;
  c.minus_dIdt = virial_rhs(u, W, model);
  c.norm_sq = weighted_h1_norm_sq(u, make_diag_weight(u.grid));
  c.margin = c.minus_dIdt - c_test * c.norm_sq;
  return c;
}

}  // namespace virial_lab
