#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/point.hpp"

namespace curveflow {

// Adjacent nodes closer than this are treated as a collapsed segment.
inline constexpr double kGeomEps = 1e-12;

// Closed polygonal curve; nodes ordered counterclockwise, no repeated end node.
struct ClosedCurve {
  std::vector<Point2> nodes;
};

// Open polygonal chain over the substrate line y=0.  Node 1 is the right
// contact point, node n the left one; both have y exactly 0.
struct OpenChain {
  std::vector<Point2> nodes;
};

struct SegmentFrame {
  double length = 0.0;
  Point2 tangent;
  Point2 normal;  // outward, equal to rot_cw(tangent)
};

namespace detail {

inline double shoelace(std::span<const Point2> nodes) {
  double twice = 0.0;
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = nodes[i];
    const Point2 b = nodes[(i + 1 == n) ? 0 : i + 1];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

inline void check_segments(std::span<const Point2> nodes, bool cyclic) {
  const std::size_t n = nodes.size();
  const std::size_t segs = cyclic ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Point2 d = nodes[(i + 1 == n) ? 0 : i + 1] - nodes[i];
    if (!(norm(d) > kGeomEps)) {
      throw DegenerateSegment("segment " + std::to_string(i + 1) +
                              " shorter than geometric tolerance");
    }
  }
}

}  // namespace detail

inline const ClosedCurve& validate(const ClosedCurve& curve) {
  const auto& nodes = curve.nodes;
  if (nodes.size() < 3) throw InvalidCurve("closed curve needs at least 3 nodes");
  for (const Point2& p : nodes) {
    if (!finite(p)) throw InvalidCurve("non-finite node coordinate");
  }
  detail::check_segments(nodes, /*cyclic=*/true);
  if (!(detail::shoelace(nodes) > 0.0)) {
    throw WrongOrientation("closed curve must be counterclockwise (area > 0)");
  }
  return curve;
}

inline const OpenChain& validate(const OpenChain& chain) {
  const auto& nodes = chain.nodes;
  if (nodes.size() < 3) throw InvalidCurve("chain needs at least 3 nodes");
  for (const Point2& p : nodes) {
    if (!finite(p)) throw InvalidCurve("non-finite node coordinate");
  }
  if (nodes.front().y != 0.0 || nodes.back().y != 0.0) {
    throw EndpointOffSubstrate("chain endpoints must sit exactly on y=0");
  }
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i].y > 0.0)) {
      throw InvalidCurve("interior chain node at or below the substrate");
    }
  }
  if (!(nodes.front().x > nodes.back().x)) {
    throw InvalidCurve("right endpoint must lie to the right of the left one");
  }
  detail::check_segments(nodes, /*cyclic=*/false);
  return chain;
}

namespace detail {

inline std::vector<SegmentFrame> frames(std::span<const Point2> nodes, bool cyclic) {
  const std::size_t n = nodes.size();
  const std::size_t segs = cyclic ? n : n - 1;
  std::vector<SegmentFrame> out(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const Point2 d = nodes[(i + 1 == n) ? 0 : i + 1] - nodes[i];
    const double len = norm(d);
    const Point2 t = (1.0 / len) * d;
    out[i] = SegmentFrame{len, t, rot_cw(t)};
  }
  return out;
}

inline double length_sum(std::span<const Point2> nodes, bool cyclic) {
  const std::size_t n = nodes.size();
  const std::size_t segs = cyclic ? n : n - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < segs; ++i) {
    total += norm(nodes[(i + 1 == n) ? 0 : i + 1] - nodes[i]);
  }
  return total;
}

inline double length_ratio(std::span<const Point2> nodes, bool cyclic) {
  const std::size_t n = nodes.size();
  const std::size_t segs = cyclic ? n : n - 1;
  double lmin = std::numeric_limits<double>::infinity();
  double lmax = 0.0;
  for (std::size_t i = 0; i < segs; ++i) {
    const double len = norm(nodes[(i + 1 == n) ? 0 : i + 1] - nodes[i]);
    lmin = std::min(lmin, len);
    lmax = std::max(lmax, len);
  }
  return lmax / lmin;
}

}  // namespace detail

inline std::vector<SegmentFrame> segment_frames(const ClosedCurve& c) {
  return detail::frames(c.nodes, true);
}
inline std::vector<SegmentFrame> segment_frames(const OpenChain& c) {
  return detail::frames(c.nodes, false);
}

inline double total_length(const ClosedCurve& c) { return detail::length_sum(c.nodes, true); }
inline double total_length(const OpenChain& c) { return detail::length_sum(c.nodes, false); }

// Shoelace area.  For a chain the region is closed by the substrate segment,
// which contributes nothing since both endpoints have y=0.
inline double enclosed_area(const ClosedCurve& c) { return detail::shoelace(c.nodes); }
inline double enclosed_area(const OpenChain& c) { return detail::shoelace(c.nodes); }

// Sum of signed exterior angles at the nodes; 2*pi for a simple CCW polygon.
inline double turning_angle_sum(const ClosedCurve& curve) {
  const auto& nodes = curve.nodes;
  const std::size_t n = nodes.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 prev = nodes[(i + n - 1) % n];
    const Point2 cur = nodes[i];
    const Point2 next = nodes[(i + 1) % n];
    const Point2 tin = cur - prev;
    const Point2 tout = next - cur;
    sum += std::atan2(cross(tin, tout), dot(tin, tout));
  }
  return sum;
}

// Mesh ratio indicator: longest over shortest segment, >= 1.
inline double mesh_ratio(const ClosedCurve& c) { return detail::length_ratio(c.nodes, true); }
inline double mesh_ratio(const OpenChain& c) { return detail::length_ratio(c.nodes, false); }

struct ContactAngles {
  double right = 0.0;
  double left = 0.0;
};

// Contact angles against the substrate, recovered from both the sine and the
// cosine of the first/last chord so obtuse angles come out right.
inline ContactAngles contact_angles(const OpenChain& chain) {
  const auto& nodes = chain.nodes;
  const std::size_t n = nodes.size();
  const Point2 first = nodes[1] - nodes[0];
  const double l1 = norm(first);
  const double sin_r = nodes[1].y / l1;
  const double cos_r = -first.x / l1;
  const Point2 last = nodes[n - 2] - nodes[n - 1];
  const double ln = norm(last);
  const double sin_l = nodes[n - 2].y / ln;
  const double cos_l = last.x / ln;
  return {std::atan2(sin_r, cos_r), std::atan2(sin_l, cos_l)};
}

// --- curve file format: CSV with header i,x,y, nodes in order --------------

inline void write_curve_csv(std::ostream& os, std::span<const Point2> nodes) {
  os << "i,x,y\n";
  char buf[80];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i + 1, nodes[i].x, nodes[i].y);
    os << buf;
  }
}

inline std::vector<Point2> read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "i,x,y") {
    throw InvalidCurve("curve CSV must start with header 'i,x,y'");
  }
  std::vector<Point2> nodes;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // index, ignored
    Point2 p;
    if (!std::getline(row, field, ',')) throw InvalidCurve("curve CSV row missing x");
    p.x = std::stod(field);
    if (!std::getline(row, field, ',')) throw InvalidCurve("curve CSV row missing y");
    p.y = std::stod(field);
    nodes.push_back(p);
  }
  return nodes;
}

}  // namespace curveflow
