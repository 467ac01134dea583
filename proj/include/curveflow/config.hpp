#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "curveflow/integrator.hpp"
#include "curveflow/shapes.hpp"

namespace curveflow {

enum class ShapeKind { circle, flower, semicircle, file };

// One simulation configuration, read from a single JSON document.  Unknown
// keys are rejected.  Fully deterministic: there is no seed anywhere.
struct RunConfig {
  FlowKind problem = FlowKind::mcf;
  ShapeKind shape = ShapeKind::circle;
  std::size_t n = 40;
  double dt = 0.0;
  double t_end = 0.0;
  bool penalty = true;
  std::optional<double> delta;  // defaults to 1/n_nodes resp. 1/(n_nodes-2)
  WettingPhysics physics{};
  std::size_t record_stride = 1;
  double stationary_tol = 0.0;
  std::string out_dir = ".";
  std::string curve_file;  // shape == file only
};

namespace detail {

inline FlowKind parse_problem(const std::string& s) {
  if (s == "mcf") return FlowKind::mcf;
  if (s == "mcf_volume") return FlowKind::mcf_volume;
  if (s == "wetting") return FlowKind::wetting;
  throw ConfigError("problem must be one of mcf, mcf_volume, wetting (got '" + s + "')");
}

inline ShapeKind parse_shape(const std::string& s) {
  if (s == "circle") return ShapeKind::circle;
  if (s == "flower") return ShapeKind::flower;
  if (s == "semicircle") return ShapeKind::semicircle;
  if (s == "file") return ShapeKind::file;
  throw ConfigError("shape must be one of circle, flower, semicircle, file (got '" + s + "')");
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "problem", "shape",   "curve_file", "n",     "dt",           "t_end",
      "penalty", "delta",   "gamma",      "xi0",   "xi1",          "theta_y",
      "record_stride",      "stationary_tol",      "out_dir"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ConfigError(std::string("missing config key '") + key + "'");
    return j.at(key);
  };

  RunConfig cfg;
  try {
    cfg.problem = detail::parse_problem(require("problem").get<std::string>());
    cfg.shape = detail::parse_shape(require("shape").get<std::string>());
    cfg.n = require("n").get<std::size_t>();
    cfg.dt = require("dt").get<double>();
    cfg.t_end = require("t_end").get<double>();
    if (j.contains("penalty")) {
      const std::string p = j.at("penalty").get<std::string>();
      if (p != "on" && p != "off") throw ConfigError("penalty must be 'on' or 'off'");
      cfg.penalty = (p == "on");
    }
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("record_stride")) cfg.record_stride = j.at("record_stride").get<std::size_t>();
    if (j.contains("stationary_tol")) cfg.stationary_tol = j.at("stationary_tol").get<double>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("curve_file")) cfg.curve_file = j.at("curve_file").get<std::string>();

    const bool wetting = cfg.problem == FlowKind::wetting;
    for (const char* key : {"gamma", "xi0", "xi1", "theta_y"}) {
      if (j.contains(key) && !wetting) {
        throw ConfigError(std::string("'") + key + "' is only valid for the wetting problem");
      }
    }
    if (wetting) {
      if (j.contains("gamma")) cfg.physics.gamma = j.at("gamma").get<double>();
      if (j.contains("xi0")) cfg.physics.xi0 = j.at("xi0").get<double>();
      if (j.contains("xi1")) cfg.physics.xi1 = j.at("xi1").get<double>();
      if (j.contains("theta_y")) cfg.physics.theta_y = j.at("theta_y").get<double>();
      check(cfg.physics);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }

  if (cfg.n < 3) throw ConfigError("n must be at least 3");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.t_end > cfg.dt)) throw ConfigError("t_end must exceed dt");
  if (cfg.record_stride == 0) throw ConfigError("record_stride must be at least 1");
  if (cfg.delta && !(*cfg.delta >= 0.0)) throw ConfigError("delta must be nonnegative");

  const bool wetting = cfg.problem == FlowKind::wetting;
  if (cfg.shape == ShapeKind::semicircle && !wetting) {
    throw ConfigError("semicircle initial data is for the wetting problem");
  }
  if ((cfg.shape == ShapeKind::circle || cfg.shape == ShapeKind::flower) && wetting) {
    throw ConfigError("closed initial shapes cannot drive the wetting problem");
  }
  if (cfg.shape == ShapeKind::file && cfg.curve_file.empty()) {
    throw ConfigError("shape 'file' requires 'curve_file'");
  }

  if (const char* env = std::getenv("CURVEFLOW_OUT")) {
    cfg.out_dir = env;
  }
  return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

inline ClosedCurve load_closed_curve(const RunConfig& cfg) {
  switch (cfg.shape) {
    case ShapeKind::circle:
      return make_circle(cfg.n);
    case ShapeKind::flower:
      return make_flower(cfg.n);
    case ShapeKind::file: {
      std::ifstream in(cfg.curve_file);
      if (!in) throw ConfigError("cannot open curve file " + cfg.curve_file);
      ClosedCurve c{read_curve_csv(in)};
      validate(c);
      return c;
    }
    default:
      throw ConfigError("shape is not a closed curve");
  }
}

inline OpenChain load_chain(const RunConfig& cfg) {
  switch (cfg.shape) {
    case ShapeKind::semicircle:
      return make_semicircle(cfg.n);
    case ShapeKind::file: {
      std::ifstream in(cfg.curve_file);
      if (!in) throw ConfigError("cannot open curve file " + cfg.curve_file);
      OpenChain c{read_curve_csv(in)};
      validate(c);
      return c;
    }
    default:
      throw ConfigError("shape is not an open chain");
  }
}

// Penalty with the configured or default strength for the actual node count.
inline PenaltyConfig make_penalty(const RunConfig& cfg, std::size_t n_nodes) {
  if (!cfg.penalty) return PenaltyConfig::off();
  PenaltyConfig pc = (cfg.problem == FlowKind::wetting) ? PenaltyConfig::for_chain(n_nodes)
                                                        : PenaltyConfig::for_closed(n_nodes);
  if (cfg.delta) pc.delta = *cfg.delta;
  return pc;
}

inline FlowProblem make_problem(const RunConfig& cfg, std::size_t n_nodes) {
  FlowProblem p;
  p.kind = cfg.problem;
  p.physics = cfg.physics;
  p.penalty = make_penalty(cfg, n_nodes);
  return p;
}

inline StepControls make_controls(const RunConfig& cfg) {
  StepControls c;
  c.dt = cfg.dt;
  c.t_end = cfg.t_end;
  c.record_stride = cfg.record_stride;
  c.stationary_tol = cfg.stationary_tol;
  return c;
}

}  // namespace curveflow
