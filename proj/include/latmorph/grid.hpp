#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

namespace latmorph {

using Index = Eigen::Index;

/// Grid coordinate or offset. One-dimensional grids only use component 0;
/// component 1 is then always 0.
using Point = std::array<Index, 2>;

inline Point operator+(Point a, Point b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point operator-(Point a, Point b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point operator-(Point a) { return {-a[0], -a[1]}; }
inline Point scaled(Point a, Index r) { return {a[0] * r, a[1] * r}; }

/// Shape of a finite 1-D or 2-D grid. Samples are stored row-major;
/// a 1-D grid of length L is stored as L rows of one column.
struct Extents {
  int dims = 1;
  Point n{1, 1};

  static Extents line(Index length) { return checked(1, {length, 1}); }
  static Extents image(Index rows, Index cols) { return checked(2, {rows, cols}); }

  static Extents checked(int dims, Point n) {
    if (dims != 1 && dims != 2)
      throw std::invalid_argument("grid: dims must be 1 or 2");
    if (n[0] < 1 || n[1] < 1 || (dims == 1 && n[1] != 1))
      throw std::invalid_argument("grid: extents must be positive");
    return Extents{dims, n};
  }

  Index size() const { return n[0] * n[1]; }
  bool contains(Point p) const { return p[0] >= 0 && p[0] < n[0] && p[1] >= 0 && p[1] < n[1]; }
  Index linear(Point p) const { return p[0] * n[1] + p[1]; }
  Point point(Index i) const { return {i / n[1], i % n[1]}; }

  friend bool operator==(const Extents&, const Extents&) = default;
};

/// Invokes fn(Point) for every grid point in row-major order.
template <typename Fn>
void for_each_point(const Extents& ext, Fn&& fn) {
  for (Index r = 0; r < ext.n[0]; ++r)
    for (Index c = 0; c < ext.n[1]; ++c) fn(Point{r, c});
}

// Extended reals. For floating scalars BOTTOM/TOP are the IEEE infinities,
// which already absorb finite addends.

template <typename Scalar>
constexpr Scalar top() {
  static_assert(std::numeric_limits<Scalar>::has_infinity, "scalar type has no TOP element");
  return std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar>
constexpr Scalar bottom() {
  return -top<Scalar>();
}

template <typename Scalar>
bool is_finite(const Scalar& v) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return std::isfinite(v);
  else
    return true;
}

/// Equality on extended reals. Infinities compare exactly; finite values
/// within relative tolerance `rel` (absolute near zero). Non-floating
/// scalars compare exactly.
template <typename Scalar>
bool nearly_equal(const Scalar& a, const Scalar& b, double rel = 1e-9) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    const double scale = std::max({1.0, std::abs(double(a)), std::abs(double(b))});
    return std::abs(double(a) - double(b)) <= rel * scale;
  } else {
    (void)rel;
    return a == b;
  }
}

}  // namespace latmorph
