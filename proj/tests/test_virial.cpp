#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "virial_lab/special_solutions.hpp"
#include "virial_lab/virial.hpp"

using namespace virial_lab;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

const PotentialShape kWell{PotentialShape::Kind::Sech4, -1.0, 1.0};

}  // namespace

TEST_CASE("weights") {
  const Grid g(40.0, 1024);
  for (double lambda : {1.0, 2.0, 100.0}) {
    const VirialWeights W = make_virial_weights(g, lambda);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(std::abs(W.alpha[j] * W.alpha[j] - W.phi_x[j]) <= 1e-15);
      const double rhs = 2.0 * (W.alpha[j] * W.alpha_xx[j] + W.alpha_x[j] * W.alpha_x[j]);
      CHECK(std::abs(W.phi_xxx[j] - rhs) <= 1e-8);
    }
    // Closed forms against spectral derivatives where the box resolves them.
    if (lambda <= 2.0) {
      const RealField d = spectral_derivative(W.alpha);
      for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(d[j] - W.alpha_x[j]) <= 1e-8);
    }
  }
  const DiagWeight w = make_diag_weight(g);
  CHECK(w.w[g.size() / 2] == 1.0);
  CHECK(evenness_defect(w.w) == 0.0);
  CHECK_THROWS_AS(make_virial_weights(g, 0.0), std::invalid_argument);
}

TEST_CASE("virial I") {
  const Grid g(40.0, 2048);
  const VirialWeights W = make_virial_weights(g, 2.0);
  const ComplexField real = to_complex(sample_real(g, [](double x) { return std::exp(-(x - 1) * (x - 1)); }));
  CHECK(std::abs(virial_I(real, W.phi)) <= 1e-15);
  const ComplexField moving = sample_complex(g, [](double x) { return std::exp(cplx(0.0, 0.8 * x)) * sech(x); });
  CHECK(std::abs(virial_I(moving, W.phi)) <= 1e-10);

  // u = sech(x - 1) e^{ix}: Im(u conj(u_x)) = -sech^2(x - 1).
  const ComplexField shifted = sample_complex(g, [](double x) { return std::exp(cplx(0.0, x)) * sech(x - 1.0); });
  const double ref = oracle::integrate(
      [](double x) { return -2.0 * std::tanh(x / 2.0) * std::pow(sech(x - 1.0), 2); }, -40.0, 40.0);
  CHECK(std::abs(virial_I(shifted, W.phi) - ref) <= 1e-8);
}

TEST_CASE("virial terms") {
  const Grid g(20.0, 1024);
  const VirialWeights W = make_virial_weights(g, 2.0);
  const ModelSpec linear = Semilinear{NonlinearitySpec{{{0.0, 3.0}}}};
  CHECK(virial_rhs(ComplexField(g), W, Semilinear{NonlinearitySpec::focusing(3)}) == 0.0);

  // u = x e^{-x^2}: u_x = (1 - 2x^2) e^{-x^2}.
  const ComplexField u = to_complex(sample_real(g, [](double x) { return x * std::exp(-x * x); }));
  const double lambda = 2.0;
  auto phi_x = [&](double x) { return std::pow(sech(x / lambda), 2); };
  auto phi_xxx = [&](double x) {
    const double s = sech(x / lambda), t = std::tanh(x / lambda);
    return -2.0 / (lambda * lambda) * s * s * (s * s - 2.0 * t * t);
  };
  const double kinetic = oracle::integrate(
      [&](double x) { return 2.0 * phi_x(x) * std::pow((1.0 - 2.0 * x * x) * std::exp(-x * x), 2); }, -20.0, 20.0);
  const double curvature = oracle::integrate(
      [&](double x) { return -0.5 * phi_xxx(x) * x * x * std::exp(-2.0 * x * x); }, -20.0, 20.0);
  const VirialTerms t = virial_terms(u, W, linear);
  CHECK(std::abs(t.kinetic - kinetic) <= 1e-8);
  CHECK(std::abs(t.curvature - curvature) <= 1e-8);
  CHECK(t.nonlinear == 0.0);
  CHECK(t.potential == 0.0);

  // Potential term: -mu int phi V_x |u|^2.
  const WithPotential wp{NonlinearitySpec{{{0.0, 3.0}}}, PotentialSpec::from_shape(g, 0.05, kWell)};
  const double pot = oracle::integrate(
      [&](double x) { return -0.05 * lambda * std::tanh(x / lambda) * kWell.derivative(x) * x * x * std::exp(-2 * x * x); },
      -20.0, 20.0);
  CHECK(std::abs(virial_terms(u, W, wp).potential - pot) <= 1e-10);
}

TEST_CASE("virial identity converges at second order") {
  const Grid g(20.0, 1024);
  const VirialWeights W = make_virial_weights(g, 2.0);
  const ComplexField zero(g);
  CHECK(check_virial_identity(zero, Semilinear{NonlinearitySpec::focusing(3)}, W, 1e-3).defect == 0.0);

  const ComplexField u0 = odd_gaussian(0.1, g);
  const std::vector<ModelSpec> models{Semilinear{NonlinearitySpec::focusing(3)}, Hartree{HartreeSpec{}},
                                      WithPotential{NonlinearitySpec::focusing(2),
                                                    PotentialSpec::from_shape(g, 0.05, kWell)}};
  for (const auto& m : models) {
    const double d1 = check_virial_identity(u0, m, W, 2e-3).defect;
    const double d2 = check_virial_identity(u0, m, W, 1e-3).defect;
    CHECK(d1 / d2 >= 3.5);
    CHECK(d1 / d2 <= 4.5);
  }
}

TEST_CASE("bilinear forms") {
  const Grid g(40.0, 2048);
  const VirialWeights W = make_virial_weights(g, 2.0);
  const BilinearReport z = bilinear_B(RealField(g), W);
  CHECK(z.B == 0.0);
  CHECK(z.B_transformed == 0.0);
  CHECK(z.grad_sq == 0.0);
  CHECK(z.ratio == 0.0);

  // Odd v = x e^{-x^2}: int v_x^2 = 3/4 sqrt(pi/2).
  const RealField v = sample_real(g, [](double x) { return x * std::exp(-x * x); });
  const BilinearReport r = transformed_form(v, W);
  CHECK(r.grad_sq == doctest::Approx(0.75 * std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-12));
  CHECK(r.B_transformed == doctest::Approx(r.L_form + r.K_form));
}

TEST_CASE("property: transform identity") {
  const Grid g(40.0, 2048);
  const PotentialSpec pot = PotentialSpec::from_shape(g, 0.05, kWell);
  std::mt19937_64 rng(41);
  for (double lambda : {2.0, 10.0, 100.0}) {
    const VirialWeights W = make_virial_weights(g, lambda);
    for (int trial = 0; trial < 20; ++trial) {
      const RealField w = random_smooth_field(g, rng);
      const BilinearReport b = bilinear_B(w, W);
      CHECK(std::abs(b.B - b.B_transformed) <= 1e-8 * (1.0 + std::abs(b.B)));
      const BilinearReport bp = bilinear_B(w, W, &pot);
      CHECK(std::abs(bp.B - bp.B_transformed) <= 1e-8 * (1.0 + std::abs(bp.B)));
    }
  }
}

TEST_CASE("property: odd-sector coercivity") {
  std::mt19937_64 rng(42);
  for (double lambda : {1.0, 2.0, 10.0}) {
    const Grid g(std::min(40.0 * lambda, 400.0), 4096);
    const VirialWeights W = make_virial_weights(g, lambda);
    for (int trial = 0; trial < 20; ++trial) {
      const RealField v = random_smooth_field(g, rng, Parity::Odd);
      const BilinearReport b = transformed_form(v, W);
      CHECK(b.B_transformed >= 1.5 * b.grad_sq - 1e-8 * b.grad_sq);
    }
  }
  // Even functions can violate it: sech is the ground state of the well.
  const Grid g(40.0, 2048);
  const VirialWeights W = make_virial_weights(g, 1.0);
  const BilinearReport e = transformed_form(sample_real(g, [](double x) { return sech(x); }), W);
  // int sech^2 tanh^2 - int sech^4 = 2/3 - 4/3.
  CHECK(e.L_form == doctest::Approx(-2.0 / 3.0).epsilon(1e-10));
  CHECK(e.B_transformed < 1.5 * e.grad_sq);
}

TEST_CASE("hartree symmetrized term") {
  const Grid g(40.0, 4096);
  const RealField zero(g);
  const VirialWeights W = make_virial_weights(g, 1.0);
  CHECK(hartree_sym_term(zero, W.phi, W.phi_x, 0.5) == 0.0);

  std::mt19937_64 rng(43);
  const RealField rho = random_density(g, rng);
  const RealField flat = sample_real(g, [](double) { return 3.0; });
  for (auto m : {HsymMethod::SerialDirect, HsymMethod::ParallelDirect})
    CHECK(hartree_sym_term(rho, flat, RealField(g), 0.5, KernelRule::ZetaCorrected, m) == 0.0);
  // The fast path evaluates the asymmetric form, which cancels only up to rounding.
  const double m = quadrature(rho);
  CHECK(std::abs(hartree_sym_term(rho, flat, RealField(g), 0.5, KernelRule::ZetaCorrected, HsymMethod::Fft)) <=
        1e-12 * m * m);

  const RealField tanh_phi = sample_real(g, [](double x) { return std::tanh(x); });
  const RealField sech2 = sample_real(g, [](double x) { return sech(x) * sech(x); });
  // u = sech, so rho = sech^2; phi_x = sech^2 as well.
  const double ref = oracle::hsym([](double x) { return std::tanh(x); }, [](double x) { return std::pow(sech(x), 2); },
                                  0.5, 30.0, 60.0);
  const double h = hartree_sym_term(sech2, tanh_phi, sech2, 0.5);
  CHECK(h > 0.0);
  CHECK(std::abs(h - ref) <= 1e-4 * ref);
}

TEST_CASE("property: hartree positivity and symmetrization") {
  const Grid g(20.0, 512);
  std::mt19937_64 rng(44);
  const VirialWeights W = make_virial_weights(g, 2.0);
  for (double a : {0.25, 0.5, 0.75}) {
    for (int trial = 0; trial < 20; ++trial) {
      const RealField rho = random_density(g, rng);
      const double m = quadrature(rho);
      const double s = hartree_sym_term(rho, W.phi, W.phi_x, a, KernelRule::ZetaCorrected, HsymMethod::SerialDirect);
      const double as = hartree_asym_term(rho, W.phi, W.phi_x, a);
      CHECK(s >= -1e-12 * m * m);
      CHECK(std::abs(s - as) <= 1e-10 * std::abs(s));
    }
  }
}

TEST_CASE("property: defocusing sign") {
  const Grid g(30.0, 512);
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> amp(0.05, 3.0);
  const VirialWeights W = make_virial_weights(g, 2.0);
  for (double p : {1.5, 2.0, 3.0, 4.0, 4.9}) {
    const ModelSpec m = Semilinear{NonlinearitySpec::defocusing(p)};
    const ModelSpec f = Semilinear{NonlinearitySpec::focusing(p)};
    for (int trial = 0; trial < 20; ++trial) {
      ComplexField u = random_complex_field(g, rng);
      const double A = amp(rng);
      for (auto& z : u.values) z *= A;
      const double t = virial_terms(u, W, m).nonlinear;
      CHECK(t >= 0.0);
      CHECK(virial_terms(u, W, f).nonlinear == doctest::Approx(-t));
    }
  }
}

TEST_CASE("weighted norms") {
  const Grid g(40.0, 2048);
  const DiagWeight w = make_diag_weight(g);
  CHECK(weighted_h1_norm_sq(ComplexField(g), w) == 0.0);
  const ComplexField one = sample_complex(g, [](double) { return cplx(1.0, 0.0); });
  CHECK(std::abs(weighted_h1_norm_sq(one, w) - std::numbers::pi) <= 1e-6);
  CHECK(std::abs(weighted_l2_norm_sq(one, w) - std::numbers::pi) <= 1e-6);
  const ComplexField s = sample_complex(g, [](double x) { return cplx(sech(x), 0.0); });
  const double ref = oracle::integrate(
      [](double x) {
        const double c = sech(x), t = std::tanh(x);
        return c * (c * c * t * t + c * c);
      },
      -40.0, 40.0);
  CHECK(weighted_h1_norm_sq(s, w) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("coercivity and lower-bound checks") {
  const Grid g(40.0, 2048);
  const VirialWeights W = make_virial_weights(g, 100.0);
  const CoercivityBound z = coercivity_weighted_bound(ComplexField(g), W);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK_FALSE(z.ratio.has_value());
  CHECK_FALSE(z.violation);

  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const CoercivityBound c = coercivity_weighted_bound(random_complex_field(g, rng, Parity::Odd), W);
    CHECK_FALSE(c.violation);
    CHECK(c.ratio.has_value());
  }

  const ModelSpec m = Semilinear{NonlinearitySpec::focusing(2)};
  CHECK(virial_lower_bound_check(ComplexField(g), W, m, 0.1).margin == 0.0);
  const LowerBoundCheck lb = virial_lower_bound_check(odd_gaussian(0.05, g), W, m, 0.1);
  CHECK(lb.margin >= 0.0);
}

TEST_CASE("weak-coupling potential") {
  const Grid g(40.0, 2048);
  const RealField zero = simon_v0_field(RealField(g), 2.0);
  for (double v : zero.values) CHECK(v == 0.0);
  const RealField v0 = simon_v0_field(sample_real(g, [](double x) { return kWell.derivative(x); }), 2.0);
  CHECK(quadrature(v0) < 0.0);
  CHECK(evenness_defect(v0) <= 1e-14);
}
