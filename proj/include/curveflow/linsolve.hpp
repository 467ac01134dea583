#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "curveflow/assembly.hpp"
#include "curveflow/errors.hpp"

namespace curveflow {

struct SolveReport {
  double residual_inf = 0.0;  // ||A xdot + b lambda - G||_inf including the constraint row
  double pivot_min = 0.0;
};

struct VelocityState {
  std::vector<Point2> velocities;
  std::optional<double> multiplier;
};

namespace detail {

// Factorization of a symmetric tridiagonal matrix, optionally cyclic.  The
// cyclic corner is folded in as a rank-one correction of a modified core
// (Sherman-Morrison), so every solve stays O(n) with reusable storage.
class TridiagFactor {
 public:
  void factor(std::span<const double> diag, std::span<const double> off, bool cyclic,
              double scale) {
    if (!(scale > 0.0)) throw SingularSystem("zero matrix scale");
    n_ = diag.size();
    cyclic_ = cyclic && n_ >= 3;
    pivot_min_ = std::numeric_limits<double>::infinity();
    dp_.resize(n_);
    cp_.assign(n_, 0.0);
    off_.assign(off.begin(), off.end());
    const double pivot_floor = 1e-14 * scale;

    double d0 = diag[0];
    double dn = diag[n_ - 1];
    if (cyclic_) {
      corner_ = off[n_ - 1];
      gamma_ = -diag[0];
      d0 -= gamma_;
      dn -= corner_ * corner_ / gamma_;
    }
    dp_[0] = d0;
    for (std::size_t i = 1; i < n_; ++i) {
      const double prev = dp_[i - 1];
      if (std::abs(prev) < pivot_floor) throw SingularSystem("pivot underflow");
      cp_[i - 1] = off_[i - 1] / prev;
      const double base = (i + 1 == n_) ? dn : diag[i];
      dp_[i] = base - off_[i - 1] * cp_[i - 1];
    }
    for (std::size_t i = 0; i < n_; ++i) {
      pivot_min_ = std::min(pivot_min_, std::abs(dp_[i]));
    }
    if (pivot_min_ < pivot_floor) throw SingularSystem("pivot underflow");

    if (cyclic_) {
      u_.assign(n_, 0.0);
      u_[0] = gamma_;
      u_[n_ - 1] = corner_;
      q_.resize(n_);
      core_solve(u_, q_);
      denom_ = 1.0 + q_[0] + (corner_ / gamma_) * q_[n_ - 1];
      if (std::abs(denom_) < 1e-14) throw SingularSystem("cyclic correction singular");
    }
  }

  void solve(std::span<const double> rhs, std::vector<double>& x) const {
    x.resize(n_);
    core_solve(rhs, x);
    if (cyclic_) {
      const double vy = x[0] + (corner_ / gamma_) * x[n_ - 1];
      const double s = vy / denom_;
      for (std::size_t i = 0; i < n_; ++i) x[i] -= s * q_[i];
    }
  }

  double pivot_min() const { return pivot_min_; }

 private:
  void core_solve(std::span<const double> rhs, std::vector<double>& x) const {
    x[0] = rhs[0] / dp_[0];
    for (std::size_t i = 1; i < n_; ++i) {
      x[i] = (rhs[i] - off_[i - 1] * x[i - 1]) / dp_[i];
    }
    for (std::size_t i = n_ - 1; i-- > 0;) {
      x[i] -= cp_[i] * x[i + 1];
    }
  }

  std::size_t n_ = 0;
  bool cyclic_ = false;
  double corner_ = 0.0;
  double gamma_ = 1.0;
  double denom_ = 1.0;
  double pivot_min_ = 0.0;
  std::vector<double> dp_, cp_, off_, u_, q_;
};

}  // namespace detail

struct SolveWorkspace {
  detail::TridiagFactor fx, fy;
  std::vector<double> rx, ry, zx, zy, wx, wy;
};

namespace detail {

inline double system_scale(const SaddleSystem& sys) {
  double scale = 0.0;
  for (double d : sys.diag_x) scale = std::max(scale, std::abs(d));
  for (double d : sys.diag_y) scale = std::max(scale, std::abs(d));
  return scale;
}

inline void residual(const SaddleSystem& sys, const VelocityState& v, SolveReport& rep) {
  const std::size_t n = sys.size();
  const double lambda = v.multiplier.value_or(0.0);
  double rinf = 0.0;
  auto coupled = [&](std::size_t j, double cx, double cy) {
    return Point2{cx * v.velocities[j].x, cy * v.velocities[j].y};
  };
  for (std::size_t i = 0; i < n; ++i) {
    Point2 r{sys.diag_x[i] * v.velocities[i].x, sys.diag_y[i] * v.velocities[i].y};
    if (i > 0) r += coupled(i - 1, sys.off_x[i - 1], sys.off_y[i - 1]);
    if (i + 1 < n) r += coupled(i + 1, sys.off_x[i], sys.off_y[i]);
    if (sys.cyclic) {
      if (i == 0) r += coupled(n - 1, sys.off_x[n - 1], sys.off_y[n - 1]);
      if (i + 1 == n) r += coupled(0, sys.off_x[n - 1], sys.off_y[n - 1]);
    }
    if (sys.bordered) r += lambda * sys.border[i];
    r -= sys.rhs[i];
    rinf = std::max(rinf, std::max(std::abs(r.x), std::abs(r.y)));
  }
  if (sys.bordered) {
    rinf = std::max(rinf, std::abs(border_dot(sys, v.velocities) - sys.rhs_constraint));
  }
  rep.residual_inf = rinf;
}

}  // namespace detail

// Direct solve of the (possibly cyclic, possibly bordered) system.  The block
// part decouples per coordinate into scalar tridiagonal systems; the border is
// eliminated through its Schur complement lambda = (b . A^{-1} G) / (b . A^{-1} b).
inline void solve_into(const SaddleSystem& sys, SolveWorkspace& ws, VelocityState& out,
                       SolveReport& rep) {
  const std::size_t n = sys.size();
  const double scale = detail::system_scale(sys);
  ws.fx.factor(sys.diag_x, sys.off_x, sys.cyclic, scale);
  ws.fy.factor(sys.diag_y, sys.off_y, sys.cyclic, scale);

  ws.rx.resize(n);
  ws.ry.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ws.rx[i] = sys.rhs[i].x;
    ws.ry[i] = sys.rhs[i].y;
  }
  ws.fx.solve(ws.rx, ws.zx);
  ws.fy.solve(ws.ry, ws.zy);

  out.velocities.resize(n);
  if (sys.bordered) {
    for (std::size_t i = 0; i < n; ++i) {
      ws.rx[i] = sys.border[i].x;
      ws.ry[i] = sys.border[i].y;
    }
    ws.fx.solve(ws.rx, ws.wx);
    ws.fy.solve(ws.ry, ws.wy);
    double bw = 0.0;
    double bz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bw += sys.border[i].x * ws.wx[i] + sys.border[i].y * ws.wy[i];
      bz += sys.border[i].x * ws.zx[i] + sys.border[i].y * ws.zy[i];
    }
    if (!(std::abs(bw) > 1e-14 * scale)) {
      throw SingularSystem("constraint column annihilated by the mobility matrix");
    }
    const double lambda = (bz - sys.rhs_constraint) / bw;
    for (std::size_t i = 0; i < n; ++i) {
      out.velocities[i] = {ws.zx[i] - lambda * ws.wx[i], ws.zy[i] - lambda * ws.wy[i]};
    }
    out.multiplier = lambda;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out.velocities[i] = {ws.zx[i], ws.zy[i]};
    }
    out.multiplier.reset();
  }
  rep.pivot_min = std::min(ws.fx.pivot_min(), ws.fy.pivot_min());
  detail::residual(sys, out, rep);
}

inline VelocityState solve(const SaddleSystem& sys, SolveReport* report = nullptr) {
  SolveWorkspace ws;
  VelocityState out;
  SolveReport rep;
  solve_into(sys, ws, out, rep);
  if (report) *report = rep;
  return out;
}

}  // namespace curveflow
