#include "virial_lab/evolve.hpp"

#include <cmath>
#include <numbers>

#include "virial_lab/fft.hpp"

namespace virial_lab {

void EvolveConfig::validate(const Grid& g) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be non-negative");
  if (sample_every == 0) throw std::invalid_argument("sample_every must be positive");
  if (sponge) {
    if (sponge->width < 0.0 || sponge->strength < 0.0)
      throw std::invalid_argument("sponge width and strength must be non-negative");
    if (sponge->width >= 0.25 * g.half_length()) throw std::invalid_argument("sponge width must be below L/4");
  }
}

std::size_t EvolveConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

SplitStepper::SplitStepper(const Grid& g, const ModelSpec& model, double dt, bool dealias)
    : grid_(g), model_(model), dt_(dt), dealias_(dealias), linear_phase_(g.size()), hat_(g.size()) {
  validate(model_);
  if (const auto* wp = std::get_if<WithPotential>(&model_))
    if (!(wp->potential.V.grid == g)) throw std::invalid_argument("potential sampled on a different grid");
  const double kmax = std::numbers::pi / g.dx();
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double k = g.wavenumber(m);
    linear_phase_[m] = std::polar(1.0, -k * k * dt);
    if (dealias_ && std::abs(k) > 2.0 / 3.0 * kmax) linear_phase_[m] = 0.0;
  }
}

void SplitStepper::nonlinear_half(ComplexField& u) {
  const RealField q = nonlinear_multiplier(u, model_);
  const double h = 0.5 * dt_;
  for (std::size_t j = 0; j < u.size(); ++j) u[j] *= std::polar(1.0, -q[j] * h);
}

void SplitStepper::step(ComplexField& u) {
  nonlinear_half(u);
  auto& fft = fft_for(grid_.size());
  fft.forward(u.values, hat_);
  for (std::size_t m = 0; m < hat_.size(); ++m) hat_[m] *= linear_phase_[m];
  fft.inverse(hat_, u.values);
  nonlinear_half(u);
  for (const cplx& v : u.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw BlowUpError();
  u.t += dt_;
}

ComplexField strang_step(const ComplexField& u, double dt, const ModelSpec& model) {
  SplitStepper stepper(u.grid, model, dt);
  ComplexField out = u;
  stepper.step(out);
  return out;
}

RealField sponge_profile(const Grid& g, const Sponge& sponge) {
  RealField gamma(g);
  if (sponge.strength == 0.0 || sponge.width <= 0.0) return gamma;
  const double L = g.half_length();
  const double inner = L - sponge.width;
  const double plateau = L - 0.5 * sponge.width;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double ax = std::abs(g.x(j));
    if (ax >= plateau) {
      gamma[j] = sponge.strength;
    } else if (ax > inner) {
      const double xi = (ax - inner) / (plateau - inner);
      const double s = std::sin(0.5 * std::numbers::pi * xi);
      gamma[j] = sponge.strength * s * s;
    }
  }
  return gamma;
}

ComplexField apply_sponge(const ComplexField& u, const Sponge& sponge, double dt) {
  const RealField gamma = sponge_profile(u.grid, sponge);
  ComplexField out = u;
  for (std::size_t j = 0; j < u.size(); ++j) out[j] *= std::exp(-gamma[j] * dt);
  return out;
}

Trajectory evolve(const ComplexField& u0, const EvolveConfig& cfg, const ModelSpec& model,
                  std::span<const Monitor> monitors) {
  cfg.validate(u0.grid);
  Trajectory traj;
  ComplexField u = u0;
  u.t = 0.0;

  std::vector<double> damping;
  if (cfg.sponge && cfg.sponge->strength > 0.0) {
    const RealField gamma = sponge_profile(u.grid, *cfg.sponge);
    damping.resize(gamma.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) damping[j] = std::exp(-gamma[j] * cfg.dt);
  }

  auto record = [&](const ComplexField& v) {
    traj.times.push_back(v.t);
    if (cfg.keep_fields) traj.fields.push_back(v);
    for (const auto& m : monitors) m(v);
  };

  record(u);
  const std::size_t n_steps = cfg.steps();
  SplitStepper stepper(u.grid, model, cfg.dt, cfg.dealias);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    try {
      stepper.step(u);
    } catch (const BlowUpError& e) {
      traj.aborted = true;
      traj.abort_reason = e.what();
      traj.aborted_at = static_cast<double>(n) * cfg.dt;
      return traj;
    }
    if (!damping.empty())
      for (std::size_t j = 0; j < u.size(); ++j) u[j] *= damping[j];
    // Time from the step index so samples do not accumulate rounding.
    u.t = static_cast<double>(n) * cfg.dt;
    if (n % cfg.sample_every == 0 || n == n_steps) record(u);
  }
  return traj;
}

}  // namespace virial_lab
