#pragma once

#include <optional>

#include "virial_lab/grid.hpp"
#include "virial_lab/hartree_kernels.hpp"
#include "virial_lab/models.hpp"

namespace virial_lab {

/// phi = lambda tanh(x/lambda) and alpha = sqrt(phi_x) = sech(x/lambda), in closed form.
struct VirialWeights {
  double lambda;
  RealField phi;
  RealField phi_x;
  RealField phi_xxx;
  RealField alpha;
  RealField alpha_x;
  RealField alpha_xx;
};

VirialWeights make_virial_weights(const Grid& g, double lambda);

/// sech(x), the weight of the local H^1 norm.
struct DiagWeight {
  RealField w;
};

DiagWeight make_diag_weight(const Grid& g);

/// I(u) = Im int phi u conj(u_x).
double virial_I(const ComplexField& u, const RealField& phi);

/// Split of -dI/dt into its pieces.
struct VirialTerms {
  double kinetic = 0.0;     // 2 int phi_x |u_x|^2
  double curvature = 0.0;   // -1/2 int phi_xxx |u|^2
  double potential = 0.0;   // -mu int phi V_x |u|^2
  double nonlinear = 0.0;   // -int phi_x [F - f s]   or   sigma a H_sym
  double total() const { return kinetic + curvature + potential + nonlinear; }
};

VirialTerms virial_terms(const ComplexField& u, const VirialWeights& W, const ModelSpec& model);
double virial_rhs(const ComplexField& u, const VirialWeights& W, const ModelSpec& model);

struct VirialIdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;
};

/// Central difference of I over one Strang step forward and one backward,
/// compared with virial_rhs at the centre.
VirialIdentityCheck check_virial_identity(const ComplexField& u0, const ModelSpec& model, const VirialWeights& W,
                                          double dt);

struct BilinearReport {
  double B = 0.0;              // direct form in w
  double B_transformed = 0.0;  // same quantity written in v = alpha w
  double grad_sq = 0.0;        // int v_x^2
  double ratio = 0.0;          // B_transformed / grad_sq (0 when grad_sq = 0)
  // B_transformed = L_form + K_form.
  double L_form = 0.0;         // int v_x^2 - 1/lambda^2 int sech^2 v^2
  double K_form = 0.0;         // int v_x^2 + mu int V0 v^2
};

/// V0 = -V_x phi / phi_x written as -V_x lambda tanh(x/l) cosh^2(x/l); 0 where cosh^2 overflows.
RealField simon_v0_field(const RealField& V_x, double lambda);

BilinearReport bilinear_B(const RealField& w, const VirialWeights& W, const PotentialSpec* potential = nullptr);

/// The transformed form evaluated directly on v; B_transformed, grad_sq,
/// ratio, L_form and K_form are filled, B is left at 0.
BilinearReport transformed_form(const RealField& v, const VirialWeights& W, const PotentialSpec* potential = nullptr);

/// Symmetrized Hartree double integral, 1/2 int int (phi(x)-phi(y))(x-y)|x-y|^{-a-2} rho(x) rho(y).
enum class HsymMethod { Fft, SerialDirect, ParallelDirect };

double hartree_sym_term(const ComplexField& u, const RealField& phi, const RealField& phi_x, double a,
                        KernelRule rule = KernelRule::ZetaCorrected, HsymMethod method = HsymMethod::Fft);
double hartree_sym_term(const RealField& rho, const RealField& phi, const RealField& phi_x, double a,
                        KernelRule rule = KernelRule::ZetaCorrected, HsymMethod method = HsymMethod::Fft);
double hartree_asym_term(const RealField& rho, const RealField& phi, const RealField& phi_x, double a,
                         KernelRule rule = KernelRule::ZetaCorrected);

double weighted_h1_norm_sq(const ComplexField& u, const DiagWeight& w);
double weighted_l2_norm_sq(const ComplexField& u, const DiagWeight& w);

struct CoercivityBound {
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;  // empty when rhs == 0
  bool violation = false;       // rhs <= 0 while u != 0
};

CoercivityBound coercivity_weighted_bound(const ComplexField& u, const VirialWeights& W,
                                          const PotentialSpec* potential = nullptr);

struct LowerBoundCheck {
  double minus_dIdt = 0.0;
  double norm_sq = 0.0;
  double margin = 0.0;
};

LowerBoundCheck virial_lower_bound_check(const ComplexField& u, const VirialWeights& W, const ModelSpec& model,
                                         double c_test);

}  // namespace virial_lab
