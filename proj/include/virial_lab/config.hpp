#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "virial_lab/evolve.hpp"
#include "virial_lab/grid.hpp"
#include "virial_lab/models.hpp"

namespace virial_lab {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  VirialCheck,
  Coercivity,
  Spectrum,
  Simon,
  Decay,
  Counterexample,
  SpacetimeBound,
  MomentumIdentity,
  HartreePositivity,
  Conservation,
};

ExperimentKind parse_kind(const std::string& name);
std::string kind_name(ExperimentKind kind);
std::vector<std::string> kind_names();

Json load_config(const std::filesystem::path& path);

/// Required member lookup with a readable error.
const Json& require(const Json& obj, const std::string& key, const std::string& where);

template <class T>
T get_or(const Json& obj, const std::string& key, T fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

/// "grid": {"L": 40, "N": 1024}
Grid parse_grid(const Json& grid);

/// "model": {"type": "semilinear" | "potential" | "hartree", ...}
///   semilinear: "nonlinearity": [{"c": -1, "p": 2}, ...]
///   potential:  "nonlinearity", "mu", "potential": {"shape", "amplitude", "width"}
///   hartree:    "a", "sigma", optional "kernel": "zeta" | "cell-average"
ModelSpec parse_model(const Json& model, const Grid& g);
NonlinearitySpec parse_nonlinearity(const Json& terms);
PotentialShape parse_shape(const Json& shape);
std::string model_label(const Json& model, std::size_t index);

/// "data": {"type": "odd_packet" | "odd_gaussian" | "soliton" | "breather" | "sech_packet" | "zero", ...}
ComplexField make_datum(const Json& data, const Grid& g);

/// "evolve": {"dt", "t_end", "sample_every", "sponge": {"width", "strength"}, "dealias"}
EvolveConfig parse_evolve(const Json& evolve);

struct Interval {
  double lo = -5.0;
  double hi = 5.0;
};
Interval parse_interval(const Json& cfg);

/// cfg["tolerances"][name], or the fallback.
double tolerance(const Json& cfg, const std::string& name, double fallback);

std::vector<double> number_list(const Json& obj, const std::string& key, std::vector<double> fallback);

}  // namespace virial_lab
