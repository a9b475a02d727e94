#pragma once

#include <cmath>

namespace fowalk {

// Planar vector, x forward, y up.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  Vec2 operator-() const { return {-x, -y}; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }

  bool operator==(const Vec2& o) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Counterclockwise rotation by a quarter turn: (x, y) -> (-y, x).
inline Vec2 perp_ccw(const Vec2& v) { return {-v.y, v.x}; }

}  // namespace fowalk
