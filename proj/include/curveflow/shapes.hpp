#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "curveflow/curve.hpp"

namespace curveflow {

// Unit circle discretized uniformly, x_i = (cos 2*pi*i/n, sin 2*pi*i/n), i = 1..n.
inline ClosedCurve make_circle(std::size_t n) {
  ClosedCurve c;
  c.nodes.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    c.nodes[i - 1] = {std::cos(a), std::sin(a)};
  }
  return c;
}

// Flower-shaped curve r(a) = 2 - 2^sin(5a), sampled uniformly in the angle.
// For n a multiple of 20 some nodes land exactly at the origin; the polygon is
// pinched there but all adjacent nodes stay distinct.
inline ClosedCurve make_flower(std::size_t n) {
  ClosedCurve c;
  c.nodes.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double r = 2.0 - std::exp2(std::sin(5.0 * a));
    c.nodes[i - 1] = {r * std::cos(a), r * std::sin(a)};
  }
  return c;
}

// Unit semicircle chain with n segments (n+1 nodes), ordered from the right
// endpoint (1,0) counterclockwise to the left endpoint (-1,0).  Endpoint
// heights are exactly zero.
inline OpenChain make_semicircle(std::size_t n) {
  OpenChain c;
  c.nodes.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    c.nodes[i] = {std::cos(a), std::sin(a)};
  }
  c.nodes.front() = {1.0, 0.0};
  c.nodes.back() = {-1.0, 0.0};
  return c;
}

}  // namespace curveflow
