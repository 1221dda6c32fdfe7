#pragma once

#include "latmorph/pyramid.hpp"

namespace latmorph {

/// median(s, t, 0).
template <typename Scalar>
Scalar med_inf(Scalar s, Scalar t) {
  if (s >= Scalar(0) && t >= Scalar(0)) return std::min(s, t);
  if (s <= Scalar(0) && t <= Scalar(0)) return std::max(s, t);
  return Scalar(0);
}

/// Join of two median-comparable values; defined only for same-sign pairs.
template <typename Scalar>
Scalar med_sup(Scalar s, Scalar t) {
  if (s >= Scalar(0) && t >= Scalar(0)) return std::max(s, t);
  if (s <= Scalar(0) && t <= Scalar(0)) return std::min(s, t);
  throw std::invalid_argument("med_sup: opposite signs have no join");
}

inline void require_finite_input(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what) + ": samples must be finite");
}

/// Iterated med_inf over {f(x+y) : y in W, x+y in domain}.
template <typename Scalar>
Signal<Scalar> med_erode(const Signal<Scalar>& f, const Window& w) {
  require_finite_input(all_finite(f), "med_erode");
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    bool first = true;
    Scalar acc(0);
    for (const auto& y : w.offsets()) {
      if (!f.contains(x + y)) continue;
      acc = first ? f(x + y) : med_inf(acc, f(x + y));
      first = false;
    }
    return acc;
  });
}

/// Largest-amplitude value of {f(x-y) : y in W, x-y in domain} when the window
/// is single-signed, 0 when it mixes signs.
template <typename Scalar>
Signal<Scalar> med_dilate(const Signal<Scalar>& f, const Window& w) {
  require_finite_input(all_finite(f), "med_dilate");
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar hi(0), lo(0);
    for (const auto& y : w.offsets()) {
      if (!f.contains(x - y)) continue;
      hi = std::max(hi, f(x - y));
      lo = std::min(lo, f(x - y));
    }
    if (hi > Scalar(0) && lo < Scalar(0)) return Scalar(0);
    return hi > Scalar(0) ? hi : lo;
  });
}

template <typename Scalar>
Signal<Scalar> med_open(const Signal<Scalar>& f, const Window& w) {
  return med_dilate(med_erode(f, w), w);
}

/// maxpool(f+) - maxpool(f-).
template <typename Scalar>
Signal<Scalar> sym_maxpool(const Signal<Scalar>& f, Index r) {
  require_finite_input(all_finite(f), "sym_maxpool");
  const auto pos = f.map([](Scalar v) { return std::max(v, Scalar(0)); });
  const auto neg = f.map([](Scalar v) { return std::max(-v, Scalar(0)); });
  return maxpool(pos, r) - maxpool(neg, r);
}

/// Median dilation over the pooling window followed by decimation.
template <typename Scalar>
Signal<Scalar> decimated_med_dilate(const Signal<Scalar>& f, Index r) {
  return resample_down(med_dilate(f, Window::box(r, f.dims())), r);
}

/// Pooling window of coarse sample n contains samples of one sign only.
template <typename Scalar>
bool single_sign_window(const Signal<Scalar>& f, Index r, Point n) {
  bool pos = false, neg = false;
  for_each_window_offset(f.dims(), r, [&](Point y) {
    const Point p = scaled(n, r) - y;
    if (!f.contains(p)) return;
    pos = pos || f(p) > Scalar(0);
    neg = neg || f(p) < Scalar(0);
  });
  return !(pos && neg);
}

}  // namespace latmorph
