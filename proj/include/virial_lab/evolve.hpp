#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "virial_lab/grid.hpp"
#include "virial_lab/models.hpp"

namespace virial_lab {

/// Boundary absorber u -> u exp(-gamma(x) dt). gamma is even, vanishes for
/// |x| <= L - width, ramps smoothly over the inner half of the layer and is
/// flat (= strength) over the outer half.
struct Sponge {
  double width = 0.0;
  double strength = 0.0;
};

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t sample_every = 1;
  std::optional<Sponge> sponge;
  bool dealias = false;
  bool keep_fields = false;

  void validate(const Grid& g) const;
  std::size_t steps() const;
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError() : std::runtime_error("blow-up or instability detected") {}
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexField> fields;  // only when keep_fields
  bool aborted = false;
  std::string abort_reason;
  double aborted_at = 0.0;
};

/// Monitor callback run at t = 0 and every `sample_every` steps.
using Monitor = std::function<void(const ComplexField&)>;

/// Reusable Strang splitting integrator for a fixed grid, model and dt.
class SplitStepper {
 public:
  SplitStepper(const Grid& g, const ModelSpec& model, double dt, bool dealias = false);

  /// One step: half nonlinear phase, full linear propagator, half nonlinear phase.
  void step(ComplexField& u);
  double dt() const { return dt_; }

 private:
  void nonlinear_half(ComplexField& u);

  Grid grid_;
  ModelSpec model_;
  double dt_;
  bool dealias_;
  std::vector<cplx> linear_phase_;
  std::vector<cplx> hat_;
};

ComplexField strang_step(const ComplexField& u, double dt, const ModelSpec& model);

RealField sponge_profile(const Grid& g, const Sponge& sponge);
ComplexField apply_sponge(const ComplexField& u, const Sponge& sponge, double dt);

Trajectory evolve(const ComplexField& u0, const EvolveConfig& cfg, const ModelSpec& model,
                  std::span<const Monitor> monitors = {});

}  // namespace virial_lab
