#pragma once

#include <cmath>

namespace curveflow {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline Point2 operator-(Point2 p) { return {-p.x, -p.y}; }

inline Point2& operator+=(Point2& a, Point2 b) {
  a.x += b.x;
  a.y += b.y;
  return a;
}
inline Point2& operator-=(Point2& a, Point2 b) {
  a.x -= b.x;
  a.y -= b.y;
  return a;
}

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm2(p)); }

// Clockwise quarter turn; maps a CCW unit tangent to the outward unit normal.
inline Point2 rot_cw(Point2 v) { return {v.y, -v.x}; }

inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace curveflow
