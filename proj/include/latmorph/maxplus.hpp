#pragma once

#include <cmath>

#include "latmorph/signal.hpp"
#include "latmorph/structuring.hpp"

namespace latmorph {

enum class OpKind { erosion, dilation, opening, closing };

/// Output signal tagged with the operator that produced it.
template <typename Scalar>
struct MorphOpResult {
  Signal<Scalar> output;
  OpKind op_kind;
};

/// out(x) = min_y f(x+y) - b(y) over in-domain x+y; TOP on an empty window.
template <typename Scalar>
Signal<Scalar> erode(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b) {
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar acc = top<Scalar>();
    for (const auto& [y, v] : b.entries()) {
      const Point p = x + y;
      if (f.contains(p)) acc = std::min(acc, Scalar(f(p) - v));
    }
    return acc;
  });
}

/// out(x) = max_y f(x-y) + b(y) over in-domain x-y; BOTTOM on an empty window.
template <typename Scalar>
Signal<Scalar> dilate(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b) {
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar acc = bottom<Scalar>();
    for (const auto& [y, v] : b.entries()) {
      const Point p = x - y;
      if (f.contains(p)) acc = std::max(acc, Scalar(f(p) + v));
    }
    return acc;
  });
}

template <typename Scalar>
Signal<Scalar> open(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b) {
  return dilate(erode(f, b), b);
}

template <typename Scalar>
Signal<Scalar> close(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b) {
  return erode(dilate(f, b), b);
}

template <typename Scalar>
MorphOpResult<Scalar> morph(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b, OpKind kind) {
  switch (kind) {
    case OpKind::erosion: return {erode(f, b), kind};
    case OpKind::dilation: return {dilate(f, b), kind};
    case OpKind::opening: return {open(f, b), kind};
    case OpKind::closing: return {close(f, b), kind};
  }
  throw std::invalid_argument("morph: unknown op kind");
}

/// out(x) = min_y -f(x+y) + c(y) over in-domain x+y; TOP on an empty window.
template <typename Scalar>
Signal<Scalar> anti_dilate(const Signal<Scalar>& f, const StructuringFunction<Scalar>& c) {
  return erode(negate(f), c.map_values([](Scalar v) { return -v; }));
}

/// Evaluates both sides of the Galois law for (dilate_b, erode_b).
template <typename Scalar>
bool adjunction_holds(const StructuringFunction<Scalar>& b, const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "adjunction_holds");
  return pointwise_leq(dilate(g, b), f) == pointwise_leq(g, erode(f, b));
}

enum class Direction { erosion, dilation };

/// Multiplicative morphology on strictly positive signals.
template <typename Scalar>
Signal<Scalar> maxtimes_morph(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b, Direction dir) {
  for (Index i = 0; i < f.size(); ++i)
    if (!(f[i] > Scalar(0))) throw std::invalid_argument("maxtimes_morph: samples must be strictly positive");
  for (const auto& [y, v] : b.entries())
    if (!(v > Scalar(0))) throw std::invalid_argument("maxtimes_morph: structuring values must be strictly positive");

  if (dir == Direction::erosion) {
    return Signal<Scalar>::generate(f.extents(), [&](Point x) {
      Scalar acc = top<Scalar>();
      for (const auto& [y, v] : b.entries())
        if (f.contains(x + y)) acc = std::min(acc, Scalar(f(x + y) / v));
      return acc;
    });
  }
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar acc = Scalar(0);
    for (const auto& [y, v] : b.entries())
      if (f.contains(x - y)) acc = std::max(acc, Scalar(f(x - y) * v));
    return acc;
  });
}

}  // namespace latmorph
