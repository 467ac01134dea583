#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "curveflow/metrics.hpp"

namespace curveflow {

enum class FlowKind { mcf, mcf_volume, wetting };

struct FlowProblem {
  FlowKind kind = FlowKind::mcf;
  WettingPhysics physics{};  // used by wetting only
  PenaltyConfig penalty{};
};

struct StepControls {
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t record_stride = 1;
  double stationary_tol = 0.0;  // 0 disables the stationarity stop
  int max_dt_halvings = 5;
};

// Time series of a run plus the invariants monitored at every velocity
// evaluation (not only at recorded strides).
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Point2>> snapshots;
  std::vector<DiagnosticsRecord> records;

  std::size_t steps = 0;
  double t_final = 0.0;
  double final_dt = 0.0;
  int halvings = 0;
  bool aborted = false;
  std::string abort_reason;
  double final_stationarity = 0.0;

  // max over evaluated states of |G.xdot - xdot^T A xdot| / (1 + |G.xdot|)
  double max_identity_residual = 0.0;
  // max over evaluated states of |sum b_i . xdot_i| (constrained kinds)
  double max_constraint_residual = 0.0;
  // min over evaluated states of the dissipation quadratic form
  double min_dissipation = std::numeric_limits<double>::infinity();
  // max over accepted steps of E(new) - E(old) for the governed energy
  double max_energy_step_increase = -std::numeric_limits<double>::infinity();
};

// Infinity norm over the nodal velocities; the multiplier is not a velocity.
inline double stationarity(const VelocityState& v) {
  double m = 0.0;
  for (const Point2& p : v.velocities) {
    m = std::max(m, std::max(std::abs(p.x), std::abs(p.y)));
  }
  return m;
}

namespace detail {

template <class CurveT>
struct FlowTraits;

template <>
struct FlowTraits<ClosedCurve> {
  static constexpr bool closed = true;
};

template <>
struct FlowTraits<OpenChain> {
  static constexpr bool closed = false;
};

inline void check_kind(const FlowProblem& p, const ClosedCurve&) {
  if (p.kind == FlowKind::wetting) {
    throw InvalidCurve("wetting flow needs an open chain");
  }
}
inline void check_kind(const FlowProblem& p, const OpenChain&) {
  if (p.kind != FlowKind::wetting) {
    throw InvalidCurve("closed-curve flow cannot run on an open chain");
  }
  check(p.physics);
}

// Assemble + solve engine with reusable storage and invariant monitors.
template <class CurveT>
class FlowEngine {
 public:
  explicit FlowEngine(const FlowProblem& problem) : problem_(problem) {}

  // Velocity at the given state; the returned reference stays valid until the
  // next evaluation.
  const VelocityState& eval(const CurveT& curve) {
    if constexpr (FlowTraits<CurveT>::closed) {
      if (problem_.kind == FlowKind::mcf) {
        assemble_mcf_into(curve, problem_.penalty, len_, sys_);
      } else {
        assemble_volume_into(curve, problem_.penalty, len_, sys_);
      }
    } else {
      assemble_wetting_into(curve, problem_.physics, problem_.penalty, len_, sys_);
    }
    solve_into(sys_, ws_, state_, report_);
    const double gdot = rhs_dot(sys_, state_.velocities);
    const double quad = quadratic_form(sys_, state_.velocities);
    identity_residual_ = std::abs(gdot - quad) / (1.0 + std::abs(gdot));
    max_identity_residual = std::max(max_identity_residual, identity_residual_);
    min_dissipation = std::min(min_dissipation, 0.5 * quad);
    if (sys_.bordered) {
      const double c = std::abs(border_dot(sys_, state_.velocities));
      max_constraint_residual = std::max(max_constraint_residual, c);
    }
    return state_;
  }

  double governed_energy(const CurveT& curve) const {
    if constexpr (FlowTraits<CurveT>::closed) {
      return energy_closed_penalized(curve, problem_.penalty);
    } else {
      return energy_wetting_penalized(curve, problem_.physics, problem_.penalty);
    }
  }

  DiagnosticsRecord record(const CurveT& curve, double t) const {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.penalized_energy = governed_energy(curve);
    rec.dissipation = 0.5 * quadratic_form(sys_, state_.velocities);
    rec.area = enclosed_area(curve);
    rec.mri = mesh_ratio(curve);
    if (state_.multiplier) rec.lambda = *state_.multiplier;
    if constexpr (FlowTraits<CurveT>::closed) {
      rec.energy = energy_closed(curve);
    } else {
      rec.energy = energy_wetting(curve, problem_.physics);
      const ContactAngles ca = contact_angles(curve);
      rec.theta_right = ca.right;
      rec.theta_left = ca.left;
    }
    return rec;
  }

  const SaddleSystem& system() const { return sys_; }
  const FlowProblem& problem() const { return problem_; }

  double max_identity_residual = 0.0;
  double max_constraint_residual = 0.0;
  double min_dissipation = std::numeric_limits<double>::infinity();

 private:
  FlowProblem problem_;
  SaddleSystem sys_;
  SolveWorkspace ws_;
  VelocityState state_;
  SolveReport report_;
  std::vector<double> len_;
  double identity_residual_ = 0.0;
};

inline void pin_endpoints(const ClosedCurve&, std::vector<Point2>&) {}
inline void pin_endpoints(const OpenChain&, std::vector<Point2>& nodes) {
  nodes.front().y = 0.0;
  nodes.back().y = 0.0;
}

}  // namespace detail

// Instantaneous velocity of the flow at the given state.
template <class CurveT>
inline VelocityState velocity(const FlowProblem& problem, const CurveT& curve) {
  detail::check_kind(problem, curve);
  detail::FlowEngine<CurveT> engine(problem);
  return engine.eval(curve);
}

// One improved-Euler step: average of the velocities at the current and the
// predicted state moves the nodes; the multiplier is an instantaneous
// constraint reaction and is never averaged.
template <class CurveT>
inline CurveT step(const FlowProblem& problem, const CurveT& curve, double dt) {
  detail::check_kind(problem, curve);
  detail::FlowEngine<CurveT> engine(problem);
  const VelocityState v0 = engine.eval(curve);
  CurveT predictor = curve;
  for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
    predictor.nodes[i] += dt * v0.velocities[i];
  }
  detail::pin_endpoints(curve, predictor.nodes);
  const VelocityState& v1 = engine.eval(predictor);
  CurveT next = curve;
  for (std::size_t i = 0; i < curve.nodes.size(); ++i) {
    next.nodes[i] += (0.5 * dt) * (v0.velocities[i] + v1.velocities[i]);
  }
  detail::pin_endpoints(curve, next.nodes);
  return next;
}

// Run until t_end or until the velocity falls below stationary_tol.  A step
// that raises the governed energy is retried with half the time step; after
// max_dt_halvings the run aborts.  A degenerate segment also aborts, keeping
// the last valid state in the trajectory.
template <class CurveT>
inline Trajectory run(const FlowProblem& problem, CurveT curve, const StepControls& controls) {
  detail::check_kind(problem, curve);
  validate(curve);
  if (!(controls.dt > 0.0) || !(controls.t_end > controls.dt)) {
    throw InvalidCurve("step controls need 0 < dt < t_end");
  }
  if (controls.record_stride == 0) {
    throw InvalidCurve("record_stride must be at least 1");
  }

  detail::FlowEngine<CurveT> engine(problem);
  Trajectory traj;
  traj.max_energy_step_increase = 0.0;

  std::vector<Point2> v0(curve.nodes.size());
  CurveT work = curve;

  double t = 0.0;
  double dt = controls.dt;
  double energy_prev = engine.governed_energy(curve);

  // Records the current state; assumes the engine was just evaluated there.
  auto record_state = [&]() {
    if (!traj.times.empty() && traj.times.back() == t) return;
    traj.times.push_back(t);
    traj.snapshots.push_back(curve.nodes);
    traj.records.push_back(engine.record(curve, t));
  };
  bool stationary_stop = false;

  const double t_eps = 1e-12 * controls.t_end;
  try {
    while (t < controls.t_end - t_eps) {
      const double dt_step = std::min(dt, controls.t_end - t);
      const VelocityState& vs = engine.eval(curve);
      v0.assign(vs.velocities.begin(), vs.velocities.end());
      traj.final_stationarity = stationarity(vs);
      if (traj.steps % controls.record_stride == 0) record_state();
      if (controls.stationary_tol > 0.0 &&
          traj.final_stationarity <= controls.stationary_tol) {
        stationary_stop = true;
        break;
      }

      work.nodes = curve.nodes;
      for (std::size_t i = 0; i < work.nodes.size(); ++i) {
        work.nodes[i] += dt_step * v0[i];
      }
      detail::pin_endpoints(curve, work.nodes);
      const VelocityState& v1 = engine.eval(work);
      for (std::size_t i = 0; i < work.nodes.size(); ++i) {
        work.nodes[i] = curve.nodes[i] + (0.5 * dt_step) * (v0[i] + v1.velocities[i]);
      }
      detail::pin_endpoints(curve, work.nodes);
      const double energy_next = engine.governed_energy(work);
      const double slack = 1e-12 * (1.0 + std::abs(energy_prev));
      if (energy_next > energy_prev + slack) {
        if (traj.halvings >= controls.max_dt_halvings) {
          traj.aborted = true;
          traj.abort_reason = "energy increase persisted after dt halvings";
          break;
        }
        ++traj.halvings;
        dt *= 0.5;
        continue;
      }
      traj.max_energy_step_increase =
          std::max(traj.max_energy_step_increase, energy_next - energy_prev);
      curve.nodes.swap(work.nodes);
      energy_prev = energy_next;
      t += dt_step;
      ++traj.steps;
    }
    if (!traj.aborted && !stationary_stop) {
      const VelocityState& vs = engine.eval(curve);
      traj.final_stationarity = stationarity(vs);
    }
    record_state();
  } catch (const DegenerateSegment& e) {
    // Keep the last valid state; its diagnostics come from the most recent
    // successful evaluation.
    traj.aborted = true;
    traj.abort_reason = e.what();
    if (traj.times.empty() || traj.times.back() != t) {
      traj.times.push_back(t);
      traj.snapshots.push_back(curve.nodes);
      traj.records.push_back(traj.records.empty() ? DiagnosticsRecord{}
                                                  : traj.records.back());
      traj.records.back().t = t;
    }
  }

  traj.t_final = t;
  traj.final_dt = dt;
  traj.max_identity_residual = engine.max_identity_residual;
  traj.max_constraint_residual = engine.max_constraint_residual;
  traj.min_dissipation = engine.min_dissipation;
  return traj;
}

}  // namespace curveflow
