#pragma once

#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include "curveflow/config.hpp"
#include "curveflow/metrics.hpp"

namespace curveflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalAbort = 3;

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw CurveflowError("cannot write " + (dir / name).string());
  return os;
}

inline void write_nodes_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,i,x,y\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& nodes = traj.snapshots[k];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      os << fmt(traj.times[k]) << ',' << (i + 1) << ',' << fmt(nodes[i].x) << ','
         << fmt(nodes[i].y) << '\n';
    }
  }
}

inline void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,energy,penalized_energy,dissipation,area,mri,lambda,theta_right,theta_left\n";
  for (const DiagnosticsRecord& r : traj.records) {
    os << fmt(r.t) << ',' << fmt(r.energy) << ',' << fmt(r.penalized_energy) << ','
       << fmt(r.dissipation) << ',' << fmt(r.area) << ',' << fmt(r.mri) << ','
       << fmt(r.lambda) << ',' << fmt(r.theta_right) << ',' << fmt(r.theta_left) << '\n';
  }
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "n,err,order\n";
  for (const ConvergenceRow& r : rows) {
    os << r.n << ',' << fmt(r.err) << ',' << fmt(r.order) << '\n';
  }
}

inline void write_mri_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,psi\n";
  for (const DiagnosticsRecord& r : traj.records) {
    os << fmt(r.t) << ',' << fmt(r.mri) << '\n';
  }
}

inline nlohmann::json summary_json(const RunConfig& cfg, const Trajectory& traj) {
  const DiagnosticsRecord& last = traj.records.back();
  nlohmann::json s;
  s["problem"] = (cfg.problem == FlowKind::mcf)          ? "mcf"
                 : (cfg.problem == FlowKind::mcf_volume) ? "mcf_volume"
                                                         : "wetting";
  s["n"] = cfg.n;
  s["t_final"] = traj.t_final;
  s["steps"] = traj.steps;
  s["final_energy"] = last.energy;
  s["final_penalized_energy"] = last.penalized_energy;
  s["final_area"] = last.area;
  s["final_mri"] = last.mri;
  s["stationarity"] = traj.final_stationarity;
  s["halvings"] = traj.halvings;
  s["aborted"] = traj.aborted;
  if (traj.aborted) s["abort_reason"] = traj.abort_reason;
  if (cfg.problem != FlowKind::mcf) s["lambda"] = last.lambda;
  if (cfg.problem == FlowKind::wetting) {
    s["theta_right"] = last.theta_right;
    s["theta_left"] = last.theta_left;
  } else {
    double mean_radius = 0.0;
    for (const Point2& p : traj.snapshots.back()) mean_radius += norm(p);
    mean_radius /= static_cast<double>(traj.snapshots.back().size());
    s["mean_radius"] = mean_radius;
  }
  return s;
}

inline Trajectory run_config(const RunConfig& cfg) {
  if (cfg.problem == FlowKind::wetting) {
    OpenChain chain = load_chain(cfg);
    return run(make_problem(cfg, chain.nodes.size()), std::move(chain), make_controls(cfg));
  }
  ClosedCurve curve = load_closed_curve(cfg);
  return run(make_problem(cfg, curve.nodes.size()), std::move(curve), make_controls(cfg));
}

}  // namespace detail

// `run` command: one simulation, writing nodes.csv, diagnostics.csv and
// summary.json into out_dir.  Optionally dumps the initially assembled system.
inline int cmd_run(const RunConfig& cfg, const std::string& dump_system_path = "") {
  if (!dump_system_path.empty()) {
    std::ofstream os(dump_system_path);
    if (!os) throw CurveflowError("cannot write " + dump_system_path);
    if (cfg.problem == FlowKind::wetting) {
      OpenChain chain = load_chain(cfg);
      dump_system(assemble_wetting(chain, cfg.physics, make_penalty(cfg, chain.nodes.size())), os);
    } else {
      ClosedCurve curve = load_closed_curve(cfg);
      const PenaltyConfig pc = make_penalty(cfg, curve.nodes.size());
      dump_system(cfg.problem == FlowKind::mcf ? assemble_mcf(curve, pc)
                                               : assemble_volume(curve, pc),
                  os);
    }
  }

  const Trajectory traj = detail::run_config(cfg);
  const std::filesystem::path dir(cfg.out_dir);
  {
    auto os = detail::open_out(dir, "nodes.csv");
    detail::write_nodes_csv(os, traj);
  }
  {
    auto os = detail::open_out(dir, "diagnostics.csv");
    detail::write_diagnostics_csv(os, traj);
  }
  {
    auto os = detail::open_out(dir, "summary.json");
    os << detail::summary_json(cfg, traj).dump(2) << '\n';
  }
  return traj.aborted ? kExitNumericalAbort : kExitOk;
}

enum class ConvergenceMetric { err1, err2, err3 };

inline ConvergenceMetric parse_metric(const std::string& s) {
  if (s == "err1") return ConvergenceMetric::err1;
  if (s == "err2") return ConvergenceMetric::err2;
  if (s == "err3") return ConvergenceMetric::err3;
  throw ConfigError("metric must be one of err1, err2, err3 (got '" + s + "')");
}

namespace detail {

inline double sweep_member_error(const RunConfig& base, std::size_t n, ConvergenceMetric metric) {
  RunConfig cfg = base;
  cfg.n = n;
  const Trajectory traj = run_config(cfg);
  if (traj.aborted) {
    throw CurveflowError("sweep member n=" + std::to_string(n) +
                         " aborted: " + traj.abort_reason);
  }
  switch (metric) {
    case ConvergenceMetric::err1: {
      if (cfg.problem != FlowKind::mcf || cfg.shape != ShapeKind::circle) {
        throw ConfigError("err1 sweeps need the circle under plain mcf");
      }
      const double rho = exact_circle(1.0, traj.t_final);
      return err1(ClosedCurve{traj.snapshots.back()}, rho);
    }
    case ConvergenceMetric::err2: {
      if (cfg.problem != FlowKind::wetting) throw ConfigError("err2 needs the wetting problem");
      const CapReference cap = exact_cap(std::numbers::pi / 2, cfg.physics.theta_y);
      return err2(OpenChain{traj.snapshots.back()}, cfg.physics.theta_y, cap.energy);
    }
    case ConvergenceMetric::err3: {
      if (cfg.problem != FlowKind::wetting) throw ConfigError("err3 needs the wetting problem");
      const CapReference cap = exact_cap(std::numbers::pi / 2, cfg.physics.theta_y);
      return err3(OpenChain{traj.snapshots.back()}, cap);
    }
  }
  throw ConfigError("unreachable metric");
}

}  // namespace detail

// `converge` command: run the configured experiment for each n, evaluate the
// requested error against the exact reference and write convergence.csv.
// Sweep members run concurrently; rows are written in parameter order.
inline int cmd_converge(const RunConfig& cfg, const std::vector<std::size_t>& ns,
                        ConvergenceMetric metric) {
  if (ns.size() < 2) throw ConfigError("converge needs at least two node counts");
  std::vector<std::future<double>> tasks;
  tasks.reserve(ns.size());
  for (std::size_t n : ns) {
    tasks.push_back(std::async(std::launch::async,
                               [&cfg, n, metric] { return detail::sweep_member_error(cfg, n, metric); }));
  }
  std::vector<std::pair<std::size_t, double>> rows;
  rows.reserve(ns.size());
  for (std::size_t k = 0; k < ns.size(); ++k) {
    rows.emplace_back(ns[k], tasks[k].get());
  }
  const auto table = order(rows);
  auto os = detail::open_out(cfg.out_dir, "convergence.csv");
  detail::write_convergence_csv(os, table);
  return kExitOk;
}

// `mri` command: time series of the mesh ratio indicator for one penalty
// setting.  A mesh-degeneration abort is recorded in the series, not fatal.
inline int cmd_mri(const RunConfig& base, bool penalty_on) {
  if (base.problem == FlowKind::wetting) {
    throw ConfigError("mri study runs on closed-curve problems");
  }
  RunConfig cfg = base;
  cfg.penalty = penalty_on;
  const Trajectory traj = detail::run_config(cfg);
  auto os = detail::open_out(cfg.out_dir, "mri.csv");
  detail::write_mri_csv(os, traj);
  return kExitOk;
}

}  // namespace curveflow
