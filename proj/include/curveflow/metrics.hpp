#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "curveflow/assembly.hpp"
#include "curveflow/linsolve.hpp"

namespace curveflow {

// One diagnostics row along a trajectory.  Fields not applicable to the
// problem kind (lambda for plain MCF, contact angles for closed curves) are NaN.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double penalized_energy = 0.0;
  double dissipation = 0.0;
  double area = 0.0;
  double mri = 1.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double theta_right = std::numeric_limits<double>::quiet_NaN();
  double theta_left = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceRow {
  std::size_t n = 0;
  double err = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();
};

// Radius of the shrinking circle sqrt(R0^2 - 2t).
inline double exact_circle(double r0, double t) {
  const double arg = r0 * r0 - 2.0 * t;
  if (!(arg > 0.0)) throw ExtinctionReached("circle collapsed before requested time");
  return std::sqrt(arg);
}

// Maximum node distance to the origin-centered circle of radius rho.  This is
// the sampling that reproduces the published convergence tables.
inline double err1(const ClosedCurve& curve, double rho) {
  double worst = 0.0;
  for (const Point2& p : curve.nodes) {
    worst = std::max(worst, std::abs(norm(p) - rho));
  }
  return worst;
}

// Conservative variant measured over the whole polyline: nodes, uniform
// samples per segment and each segment's closest point to the origin.  For a
// polygon inscribed in the circle it returns exactly the sagitta.
inline double err1_polyline(const ClosedCurve& curve, double rho,
                            std::size_t samples_per_segment = 64) {
  const auto& nodes = curve.nodes;
  const std::size_t n = nodes.size();
  double worst = 0.0;
  auto visit = [&](Point2 p) { worst = std::max(worst, std::abs(norm(p) - rho)); };
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = nodes[i];
    const Point2 b = nodes[(i + 1) % n];
    const Point2 d = b - a;
    for (std::size_t k = 0; k <= samples_per_segment; ++k) {
      const double mu = static_cast<double>(k) / static_cast<double>(samples_per_segment);
      visit(a + mu * d);
    }
    const double tmin = std::clamp(-dot(a, d) / norm2(d), 0.0, 1.0);
    visit(a + tmin * d);
  }
  return worst;
}

// Convergence orders between consecutive rows of (n, err) pairs.
inline std::vector<ConvergenceRow> order(std::span<const std::pair<std::size_t, double>> rows) {
  std::vector<ConvergenceRow> out;
  out.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    ConvergenceRow row{rows[k].first, rows[k].second,
                       std::numeric_limits<double>::quiet_NaN()};
    if (k > 0) {
      row.order = std::log(rows[k - 1].second / rows[k].second) /
                  std::log(static_cast<double>(rows[k].first) /
                           static_cast<double>(rows[k - 1].first));
    }
    out.push_back(row);
  }
  return out;
}

// Stationary circular cap: radius, energy (gamma = 1, C = 0) and a fine
// inscribed polygon with `m` nodes, base centered at base_mid_x.
struct CapReference {
  double radius = 0.0;
  double energy = 0.0;
  double theta_y = 0.0;
  OpenChain polygon;
};

inline CapReference exact_cap(double area, double theta_y, double base_mid_x = 0.0,
                              std::size_t m = 16384) {
  if (!(area > 0.0)) throw InvalidCurve("cap area must be positive");
  if (!(theta_y > 0.0) || !(theta_y < std::numbers::pi)) {
    throw InvalidCurve("Young's angle must lie strictly inside (0, pi)");
  }
  CapReference cap;
  cap.theta_y = theta_y;
  const double shape = theta_y - std::sin(theta_y) * std::cos(theta_y);
  cap.radius = std::sqrt(area / shape);
  cap.energy = 2.0 * area / cap.radius;
  const double cy = -cap.radius * std::cos(theta_y);
  const double phi_r = std::numbers::pi / 2 - theta_y;
  const double phi_l = std::numbers::pi / 2 + theta_y;
  cap.polygon.nodes.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double phi =
        phi_r + (phi_l - phi_r) * static_cast<double>(j) / static_cast<double>(m - 1);
    cap.polygon.nodes[j] = {base_mid_x + cap.radius * std::cos(phi),
                            cy + cap.radius * std::sin(phi)};
  }
  cap.polygon.nodes.front().y = 0.0;
  cap.polygon.nodes.back().y = 0.0;
  return cap;
}

// Energy gap between a discrete droplet and the stationary cap (gamma = 1).
inline double err2(const OpenChain& chain, double theta_y, double cap_energy) {
  WettingPhysics wp;
  wp.theta_y = theta_y;
  return std::abs(energy_wetting(chain, wp) - cap_energy);
}

namespace detail {

inline bool is_convex_ccw(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    const Point2 c = poly[(i + 2) % n];
    if (cross(b - a, c - b) < -1e-15) return false;
  }
  return true;
}

inline bool segments_properly_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

inline bool is_simple(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j + 1 == n) continue;  // first and last share a node
      const Point2 c = poly[j];
      const Point2 d = poly[(j + 1) % n];
      if (segments_properly_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

// Area of subject ∩ clip via successive half-plane clipping against the edges
// of the convex clip polygon.
inline double convex_clip_intersection_area(std::span<const Point2> subject,
                                            std::span<const Point2> clip) {
  std::vector<Point2> poly(subject.begin(), subject.end());
  std::vector<Point2> next;
  next.reserve(poly.size() + 8);
  const std::size_t m = clip.size();
  for (std::size_t e = 0; e < m && poly.size() >= 3; ++e) {
    const Point2 a = clip[e];
    const Point2 edge = clip[(e + 1) % m] - a;
    bool all_inside = true;
    for (const Point2& p : poly) {
      if (cross(edge, p - a) < 0.0) {
        all_inside = false;
        break;
      }
    }
    if (all_inside) continue;
    next.clear();
    const std::size_t k = poly.size();
    double side_prev = cross(edge, poly[k - 1] - a);
    Point2 prev = poly[k - 1];
    for (std::size_t i = 0; i < k; ++i) {
      const Point2 cur = poly[i];
      const double side_cur = cross(edge, cur - a);
      const bool in_prev = side_prev >= 0.0;
      const bool in_cur = side_cur >= 0.0;
      if (in_prev != in_cur) {
        const double t = side_prev / (side_prev - side_cur);
        next.push_back(prev + t * (cur - prev));
      }
      if (in_cur) next.push_back(cur);
      prev = cur;
      side_prev = side_cur;
    }
    poly.swap(next);
  }
  if (poly.size() < 3) return 0.0;
  return shoelace(poly);
}

}  // namespace detail

// Symmetric-difference area |A| + |B| - 2|A ∩ B| between two simple CCW
// polygons; the second must be convex (it provides the clipping half-planes).
inline double symmetric_difference_area(std::span<const Point2> region,
                                        std::span<const Point2> convex_region) {
  if (!detail::is_convex_ccw(convex_region)) {
    throw ClippingFailure("reference region must be convex and CCW");
  }
  if (!detail::is_simple(region)) {
    throw ClippingFailure("region polygon is not simple");
  }
  const double a = detail::shoelace(region);
  const double b = detail::shoelace(convex_region);
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ClippingFailure("regions must be positively oriented");
  }
  const double inter = detail::convex_clip_intersection_area(region, convex_region);
  return a + b - 2.0 * inter;
}

// Manifold distance between the droplet region (chain closed along the
// substrate) and the exact cap, with the cap base midpoint moved onto the
// droplet base midpoint to quotient out the horizontal translation mode.
inline double err3(const OpenChain& chain, const CapReference& cap) {
  const double chain_mid = 0.5 * (chain.nodes.front().x + chain.nodes.back().x);
  const double cap_mid =
      0.5 * (cap.polygon.nodes.front().x + cap.polygon.nodes.back().x);
  const double shift = chain_mid - cap_mid;
  std::vector<Point2> cap_nodes = cap.polygon.nodes;
  for (Point2& p : cap_nodes) p.x += shift;
  return symmetric_difference_area(chain.nodes, cap_nodes);
}

// Discrete dissipation 0.5 * v^T A0 v; for wetting systems the contact-line
// friction terms are already inside the endpoint blocks.
inline double dissipation(const SaddleSystem& sys, const VelocityState& v) {
  return 0.5 * quadratic_form(sys, v.velocities);
}

}  // namespace curveflow
