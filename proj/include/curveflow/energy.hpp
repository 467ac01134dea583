#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

// Penalty on unequal adjacent segment lengths: delta * sum (l_i/l_{i+1} - 1)^2.
struct PenaltyConfig {
  bool enabled = false;
  double delta = 0.0;

  static PenaltyConfig off() { return {}; }
  // Closed-curve default delta = 1/n for n nodes.
  static PenaltyConfig for_closed(std::size_t n_nodes) {
    return {true, 1.0 / static_cast<double>(n_nodes)};
  }
  // Chain default delta = 1/(m-2) for m nodes (m-1 segments, m-2 ratio terms).
  static PenaltyConfig for_chain(std::size_t m_nodes) {
    return {true, 1.0 / static_cast<double>(m_nodes - 2)};
  }
};

struct WettingPhysics {
  double gamma = 1.0;    // surface energy density
  double theta_y = std::numbers::pi / 2;  // Young's angle, in (0, pi)
  double xi0 = 1.0;      // curve friction
  double xi1 = 1.0;      // contact line friction
};

inline void check(const WettingPhysics& wp) {
  if (!(wp.gamma > 0.0) || !(wp.xi0 > 0.0) || !(wp.xi1 > 0.0)) {
    throw InvalidCurve("wetting coefficients must be positive");
  }
  if (!(wp.theta_y > 0.0) || !(wp.theta_y < std::numbers::pi)) {
    throw InvalidCurve("Young's angle must lie strictly inside (0, pi)");
  }
}

namespace detail {

inline void segment_lengths(std::span<const Point2> nodes, bool cyclic,
                            std::vector<double>& out) {
  const std::size_t n = nodes.size();
  const std::size_t segs = cyclic ? n : n - 1;
  out.resize(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const double len = norm(nodes[(i + 1 == n) ? 0 : i + 1] - nodes[i]);
    if (!(len > kGeomEps)) {
      throw DegenerateSegment("segment collapsed during evaluation");
    }
    out[i] = len;
  }
}

// Ratio terms: closed curves have n cyclic terms, chains have segs-1 terms.
inline double penalty_sum(std::span<const double> len, bool cyclic, double delta) {
  const std::size_t segs = len.size();
  const std::size_t terms = cyclic ? segs : segs - 1;
  double sum = 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    const double r = len[j] / len[(j + 1 == segs) ? 0 : j + 1] - 1.0;
    sum += r * r;
  }
  return delta * sum;
}

// Exact gradient of the penalty, accumulated as -d(penalty)/dx into grad.
// Term j couples nodes j, j+1, j+2 through the two lengths in the ratio.
inline void add_penalty_gradient(std::span<const Point2> nodes,
                                 std::span<const double> len, bool cyclic,
                                 double delta, std::span<Point2> grad) {
  const std::size_t n = nodes.size();
  const std::size_t segs = len.size();
  const std::size_t terms = cyclic ? segs : segs - 1;
  auto node = [&](std::size_t i) { return nodes[i % n]; };
  for (std::size_t j = 0; j < terms; ++j) {
    const std::size_t jp = (j + 1 == segs) ? 0 : j + 1;
    const double lj = len[j];
    const double ljp = len[jp];
    const double f = 2.0 * delta * (lj / ljp - 1.0);
    if (f == 0.0) continue;
    const Point2 tj = (1.0 / lj) * (node(j + 1) - node(j));
    const Point2 tjp = (1.0 / ljp) * (node(j + 2) - node(j + 1));
    const Point2 a = (f / ljp) * tj;
    const Point2 b = (f * lj / (ljp * ljp)) * tjp;
    grad[j % n] += a;
    grad[(j + 1) % n] -= a;
    grad[(j + 1) % n] -= b;
    grad[(j + 2) % n] += b;
  }
}

}  // namespace detail

// E_h = total length of the closed polygon.
inline double energy_closed(const ClosedCurve& curve) { return total_length(curve); }

inline double energy_closed_penalized(const ClosedCurve& curve, const PenaltyConfig& pc) {
  const double base = total_length(curve);
  if (!pc.enabled || pc.delta == 0.0) return base;
  std::vector<double> len;
  detail::segment_lengths(curve.nodes, true, len);
  return base + detail::penalty_sum(len, true, pc.delta);
}

// g_i = -dE/dx_i; without penalty this is the unit-tangent difference.
inline void grad_closed_into(const ClosedCurve& curve, const PenaltyConfig& pc,
                             std::vector<double>& len_scratch,
                             std::vector<Point2>& grad) {
  const auto& nodes = curve.nodes;
  const std::size_t n = nodes.size();
  detail::segment_lengths(nodes, true, len_scratch);
  grad.assign(n, Point2{});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const Point2 t_out = (1.0 / len_scratch[i]) * (nodes[(i + 1) % n] - nodes[i]);
    const Point2 t_in = (1.0 / len_scratch[prev]) * (nodes[i] - nodes[prev]);
    grad[i] = t_out - t_in;
  }
  if (pc.enabled && pc.delta != 0.0) {
    detail::add_penalty_gradient(nodes, len_scratch, true, pc.delta, grad);
  }
}

inline std::vector<Point2> grad_closed(const ClosedCurve& curve, const PenaltyConfig& pc) {
  std::vector<double> len;
  std::vector<Point2> grad;
  grad_closed_into(curve, pc, len, grad);
  return grad;
}

// Wetting energy gamma * (chain length - base width * cos theta_Y), with the
// additive substrate constant fixed to zero.
inline double energy_wetting(const OpenChain& chain, const WettingPhysics& wp) {
  const double base = chain.nodes.front().x - chain.nodes.back().x;
  return wp.gamma * (total_length(chain) - base * std::cos(wp.theta_y));
}

inline double energy_wetting_penalized(const OpenChain& chain, const WettingPhysics& wp,
                                       const PenaltyConfig& pc) {
  const double base = energy_wetting(chain, wp);
  if (!pc.enabled || pc.delta == 0.0) return base;
  std::vector<double> len;
  detail::segment_lengths(chain.nodes, false, len);
  return base + detail::penalty_sum(len, false, pc.delta);
}

// Nodal gradient of the (penalized) wetting energy.  Endpoint rows carry only
// the horizontal component; their second entries stay exactly zero.
inline void grad_wetting_into(const OpenChain& chain, const WettingPhysics& wp,
                              const PenaltyConfig& pc,
                              std::vector<double>& len_scratch,
                              std::vector<Point2>& grad) {
  const auto& nodes = chain.nodes;
  const std::size_t n = nodes.size();
  detail::segment_lengths(nodes, false, len_scratch);
  grad.assign(n, Point2{});
  const double cos_y = std::cos(wp.theta_y);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point2 t_out = (1.0 / len_scratch[i]) * (nodes[i + 1] - nodes[i]);
    const Point2 t_in = (1.0 / len_scratch[i - 1]) * (nodes[i] - nodes[i - 1]);
    grad[i] = wp.gamma * (t_out - t_in);
  }
  grad[0] = {wp.gamma * ((nodes[1].x - nodes[0].x) / len_scratch[0] + cos_y), 0.0};
  grad[n - 1] = {
      -wp.gamma * ((nodes[n - 1].x - nodes[n - 2].x) / len_scratch[n - 2] + cos_y), 0.0};
  if (pc.enabled && pc.delta != 0.0) {
    detail::add_penalty_gradient(nodes, len_scratch, false, pc.delta, grad);
    grad[0].y = 0.0;  // endpoint rows are projected onto the first component
    grad[n - 1].y = 0.0;
  }
}

inline std::vector<Point2> grad_wetting(const OpenChain& chain, const WettingPhysics& wp,
                                        const PenaltyConfig& pc) {
  std::vector<double> len;
  std::vector<Point2> grad;
  grad_wetting_into(chain, wp, pc, len, grad);
  return grad;
}

}  // namespace curveflow
