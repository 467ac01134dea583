#pragma once

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <span>
#include <vector>

#include "curveflow/energy.hpp"

namespace curveflow {

// Block-tridiagonal mobility system, optionally cyclic and optionally bordered
// by one constraint row/column.  All 2x2 blocks are diagonal, so the system is
// stored per coordinate: diag/off scalars for x and y, plus the border column.
// Row i of the block part reads
//   diag_*[i] * v_i + off_*[i-1] * v_{i-1} + off_*[i] * v_{i+1} (+ border_i * lambda) = rhs_i,
// with cyclic wrap-around when `cyclic` is set (off[n-1] couples node n-1 and 0).
struct SaddleSystem {
  bool cyclic = false;
  bool bordered = false;
  std::vector<double> diag_x, diag_y;
  std::vector<double> off_x, off_y;
  std::vector<Point2> border;  // empty unless bordered
  std::vector<Point2> rhs;
  double rhs_constraint = 0.0;

  std::size_t size() const { return diag_x.size(); }
};

namespace detail {

// Consistent P1 mass coefficients on the polygon: diagonal (l_{i-1}+l_i)/3,
// coupling l_i/6 between nodes i and i+1.
inline void mass_closed(std::span<const double> len, SaddleSystem& sys) {
  const std::size_t n = len.size();
  sys.cyclic = true;
  sys.diag_x.resize(n);
  sys.diag_y.resize(n);
  sys.off_x.resize(n);
  sys.off_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (len[(i + n - 1) % n] + len[i]) / 3.0;
    sys.diag_x[i] = d;
    sys.diag_y[i] = d;
    const double c = len[i] / 6.0;
    sys.off_x[i] = c;
    sys.off_y[i] = c;
  }
}

}  // namespace detail

// Plain mean curvature flow: A xdot = G (no border).
inline void assemble_mcf_into(const ClosedCurve& curve, const PenaltyConfig& pc,
                              std::vector<double>& len_scratch, SaddleSystem& sys) {
  grad_closed_into(curve, pc, len_scratch, sys.rhs);
  detail::mass_closed(len_scratch, sys);
  sys.bordered = false;
  sys.border.clear();
  sys.rhs_constraint = 0.0;
}

inline SaddleSystem assemble_mcf(const ClosedCurve& curve, const PenaltyConfig& pc) {
  SaddleSystem sys;
  std::vector<double> len;
  assemble_mcf_into(curve, pc, len, sys);
  return sys;
}

// Volume preserving flow: same block part, bordered by the area-rate column
// b_i = P (x_{i+1} - x_{i-1}) / 2 and a zero constraint right-hand side.
inline void assemble_volume_into(const ClosedCurve& curve, const PenaltyConfig& pc,
                                 std::vector<double>& len_scratch, SaddleSystem& sys) {
  assemble_mcf_into(curve, pc, len_scratch, sys);
  const auto& nodes = curve.nodes;
  const std::size_t n = nodes.size();
  sys.bordered = true;
  sys.border.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 d = nodes[(i + 1) % n] - nodes[(i + n - 1) % n];
    sys.border[i] = 0.5 * rot_cw(d);
  }
  sys.rhs_constraint = 0.0;
}

inline SaddleSystem assemble_volume(const ClosedCurve& curve, const PenaltyConfig& pc) {
  SaddleSystem sys;
  std::vector<double> len;
  assemble_volume_into(curve, pc, len, sys);
  return sys;
}

// Wetting flow on the substrate.  Endpoint rows are the only anisotropic
// blocks: (1,1) entries carry the contact-line friction, (2,2) entries are 1
// with zero couplings so the solved vertical endpoint velocities vanish.
inline void assemble_wetting_into(const OpenChain& chain, const WettingPhysics& wp,
                                  const PenaltyConfig& pc,
                                  std::vector<double>& len_scratch, SaddleSystem& sys) {
  grad_wetting_into(chain, wp, pc, len_scratch, sys.rhs);
  const auto& nodes = chain.nodes;
  const std::size_t n = nodes.size();
  const auto& len = len_scratch;
  sys.cyclic = false;
  sys.bordered = true;
  sys.diag_x.resize(n);
  sys.diag_y.resize(n);
  sys.off_x.resize(n - 1);
  sys.off_y.resize(n - 1);
  sys.border.resize(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = wp.xi0 * (len[i - 1] + len[i]) / 3.0;
    sys.diag_x[i] = d;
    sys.diag_y[i] = d;
  }
  sys.diag_x[0] = wp.xi0 * len[0] / 3.0 + wp.xi1;
  sys.diag_y[0] = 1.0;
  sys.diag_x[n - 1] = wp.xi0 * len[n - 2] / 3.0 + wp.xi1;
  sys.diag_y[n - 1] = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double c = wp.xi0 * len[i] / 6.0;
    sys.off_x[i] = c;
    sys.off_y[i] = c;
  }
  sys.off_y[0] = 0.0;
  sys.off_y[n - 2] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sys.border[i] = 0.5 * rot_cw(nodes[i + 1] - nodes[i - 1]);
  }
  sys.border[0] = {0.5 * nodes[1].y, 0.0};
  sys.border[n - 1] = {-0.5 * nodes[n - 2].y, 0.0};
  sys.rhs_constraint = 0.0;
}

inline SaddleSystem assemble_wetting(const OpenChain& chain, const WettingPhysics& wp,
                                     const PenaltyConfig& pc) {
  SaddleSystem sys;
  std::vector<double> len;
  assemble_wetting_into(chain, wp, pc, len, sys);
  return sys;
}

// v^T A0 v over the block part (border excluded); equals twice the discrete
// dissipation for the matching velocity field.
inline double quadratic_form(const SaddleSystem& sys, std::span<const Point2> v) {
  const std::size_t n = sys.size();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q += sys.diag_x[i] * v[i].x * v[i].x + sys.diag_y[i] * v[i].y * v[i].y;
  }
  const std::size_t couplings = sys.off_x.size();
  for (std::size_t i = 0; i < couplings; ++i) {
    const std::size_t j = (i + 1 == n) ? 0 : i + 1;
    q += 2.0 * (sys.off_x[i] * v[i].x * v[j].x + sys.off_y[i] * v[i].y * v[j].y);
  }
  return q;
}

inline double border_dot(const SaddleSystem& sys, std::span<const Point2> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys.border.size(); ++i) s += dot(sys.border[i], v[i]);
  return s;
}

inline double rhs_dot(const SaddleSystem& sys, std::span<const Point2> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys.rhs.size(); ++i) s += dot(sys.rhs[i], v[i]);
  return s;
}

// Debug dump, one row per node: i,d,c,bx,by,gx,gy.  d and c are the
// x-component scalars; c is the coupling to the next node (0 on the last row
// of an open chain).
inline void dump_system(const SaddleSystem& sys, std::ostream& os) {
  os << "i,d,c,bx,by,gx,gy\n";
  char buf[200];
  const std::size_t n = sys.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = (i < sys.off_x.size()) ? sys.off_x[i] : 0.0;
    const Point2 b = sys.bordered ? sys.border[i] : Point2{};
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i + 1,
                  sys.diag_x[i], c, b.x, b.y, sys.rhs[i].x, sys.rhs[i].y);
    os << buf;
  }
}

}  // namespace curveflow
