#include "virial_lab/config.hpp"

#include <array>
#include <fstream>
#include <utility>

#include "virial_lab/special_solutions.hpp"

namespace virial_lab {

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 10> kKinds{{
    {ExperimentKind::VirialCheck, "virial-check"},
    {ExperimentKind::Coercivity, "coercivity"},
    {ExperimentKind::Spectrum, "spectrum"},
    {ExperimentKind::Simon, "simon"},
    {ExperimentKind::Decay, "decay"},
    {ExperimentKind::Counterexample, "counterexample"},
    {ExperimentKind::SpacetimeBound, "spacetime-bound"},
    {ExperimentKind::MomentumIdentity, "momentum-identity"},
    {ExperimentKind::HartreePositivity, "hartree-positivity"},
    {ExperimentKind::Conservation, "conservation"},
}};

double number(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kKinds)
    if (name == n) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string kind_name(ExperimentKind kind) {
  for (const auto& [k, n] : kKinds)
    if (k == kind) return n;
  return "unknown";
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& kv : kKinds) out.emplace_back(kv.second);
  return out;
}

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError("missing config field " + where + "." + key);
  return obj.at(key);
}

Grid parse_grid(const Json& grid) {
  const double L = number(grid, "L", "grid");
  const Json& n = require(grid, "N", "grid");
  if (!n.is_number_integer() || n.get<long long>() <= 0) throw ConfigError("grid.N must be a positive integer");
  try {
    return make_grid(L, n.get<std::size_t>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

NonlinearitySpec parse_nonlinearity(const Json& terms) {
  if (!terms.is_array() || terms.empty()) throw ConfigError("model.nonlinearity must be a non-empty list");
  NonlinearitySpec nl;
  for (const auto& t : terms) nl.terms.push_back({number(t, "c", "nonlinearity"), number(t, "p", "nonlinearity")});
  try {
    nl.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return nl;
}

PotentialShape parse_shape(const Json& shape) {
  PotentialShape s;
  try {
    s.kind = PotentialShape::parse(get_or<std::string>(shape, "shape", "zero"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.amplitude = get_or(shape, "amplitude", 0.0);
  s.width = get_or(shape, "width", 1.0);
  if (!(s.width > 0.0)) throw ConfigError("potential width must be positive");
  return s;
}

ModelSpec parse_model(const Json& model, const Grid& g) {
  const std::string type = get_or<std::string>(model, "type", "");
  try {
    if (type == "semilinear") return Semilinear{parse_nonlinearity(require(model, "nonlinearity", "model"))};
    if (type == "potential") {
      const double mu = number(model, "mu", "model");
      const PotentialShape shape = parse_shape(require(model, "potential", "model"));
      return WithPotential{parse_nonlinearity(require(model, "nonlinearity", "model")),
                           PotentialSpec::from_shape(g, mu, shape)};
    }
    if (type == "hartree") {
      HartreeSpec h;
      h.a = get_or(model, "a", 0.5);
      h.sigma = get_or(model, "sigma", 1);
      const std::string kernel = get_or<std::string>(model, "kernel", "zeta");
      if (kernel == "zeta")
        h.rule = KernelRule::ZetaCorrected;
      else if (kernel == "cell-average")
        h.rule = KernelRule::CellAverage;
      else
        throw ConfigError("unknown Hartree kernel '" + kernel + "'");
      h.validate();
      return Hartree{h};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  throw ConfigError("model.type must be semilinear, potential or hartree");
}

std::string model_label(const Json& model, std::size_t index) {
  if (model.contains("label")) return model.at("label").get<std::string>();
  return get_or<std::string>(model, "type", "model") + "_" + std::to_string(index);
}

ComplexField make_datum(const Json& data, const Grid& g) {
  const std::string type = get_or<std::string>(data, "type", "");
  try {
    if (type == "zero") return ComplexField(g);
    if (type == "odd_packet")
      return odd_packet(number(data, "eps", "data"), get_or(data, "k", 0.0), get_or(data, "x0", 0.0), g);
    if (type == "odd_gaussian") return odd_gaussian(number(data, "eps", "data"), g);
    if (type == "soliton") {
      const RealField q = soliton_profile(SolitonSpec{number(data, "c", "data"), get_or(data, "p", 3.0)}, g);
      return to_complex(q);
    }
    if (type == "breather") return breather_seed(number(data, "c", "data"), g);
    if (type == "sech_packet")
      return sech_packet(get_or(data, "amplitude", 1.0), get_or(data, "k", 0.0), get_or(data, "x0", 0.0), g);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("data: ") + e.what());
  }
  throw ConfigError("unknown data type '" + type + "'");
}

EvolveConfig parse_evolve(const Json& evolve) {
  EvolveConfig c;
  c.dt = number(evolve, "dt", "evolve");
  c.t_end = number(evolve, "t_end", "evolve");
  c.sample_every = get_or<std::size_t>(evolve, "sample_every", 1);
  c.dealias = get_or(evolve, "dealias", false);
  if (evolve.contains("sponge")) {
    const Json& s = evolve.at("sponge");
    c.sponge = Sponge{number(s, "width", "evolve.sponge"), number(s, "strength", "evolve.sponge")};
  }
  if (!(c.dt > 0.0)) throw ConfigError("evolve.dt must be positive");
  if (c.t_end < 0.0) throw ConfigError("evolve.t_end must be non-negative");
  if (c.sample_every == 0) throw ConfigError("evolve.sample_every must be positive");
  return c;
}

Interval parse_interval(const Json& cfg) {
  Interval I;
  if (cfg.contains("interval")) {
    const Json& v = cfg.at("interval");
    if (!v.is_array() || v.size() != 2) throw ConfigError("interval must be [lo, hi]");
    I.lo = v[0].get<double>();
    I.hi = v[1].get<double>();
    if (!(I.lo < I.hi)) throw ConfigError("interval must satisfy lo < hi");
  }
  return I;
}

double tolerance(const Json& cfg, const std::string& name, double fallback) {
  if (!cfg.contains("tolerances")) return fallback;
  return get_or(cfg.at("tolerances"), name, fallback);
}

std::vector<double> number_list(const Json& obj, const std::string& key, std::vector<double> fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError("config field '" + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("config field '" + key + "' must be a list of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace virial_lab
