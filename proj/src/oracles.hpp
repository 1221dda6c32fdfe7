#pragma once

// Brute-force reference implementations. Each one is written from the
// defining formula by a different route than the library operator it checks.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "latmorph/mmbb.hpp"
#include "latmorph/pyramid.hpp"

namespace latmorph::oracle {

/// Scans every domain point z and keeps those with z - x on the support.
inline SignalD erode(const SignalD& f, const SF& b) {
  const Extents& e = f.extents();
  return SignalD::generate(e, [&](Point x) {
    double m = top<double>();
    for (Index i = 0; i < e.size(); ++i) {
      const Point z = e.point(i);
      const double bv = b.at(z - x);
      if (bv != bottom<double>()) m = std::min(m, f(z) - bv);
    }
    return m;
  });
}

inline SignalD dilate(const SignalD& f, const SF& b) {
  const Extents& e = f.extents();
  return SignalD::generate(e, [&](Point x) {
    double m = bottom<double>();
    for (Index i = 0; i < e.size(); ++i) {
      const Point z = e.point(i);
      const double bv = b.at(x - z);
      if (bv != bottom<double>()) m = std::max(m, f(z) + bv);
    }
    return m;
  });
}

/// Window fitting: best window minimum over placements x with z in x + B.
inline SignalD flat_open(const SignalD& f, const Window& w) {
  const Extents& e = f.extents();
  std::vector<double> fit(std::size_t(e.size()));
  for (Index i = 0; i < e.size(); ++i) {
    double m = top<double>();
    for (const auto& y : w.offsets())
      if (e.contains(e.point(i) + y)) m = std::min(m, f(e.point(i) + y));
    fit[std::size_t(i)] = m;
  }
  return SignalD::generate(e, [&](Point z) {
    double best = bottom<double>();
    for (Index i = 0; i < e.size(); ++i)
      if (w.contains(z - e.point(i))) best = std::max(best, fit[std::size_t(i)]);
    return best;
  });
}

/// Zero-padded convolution as an explicit matrix product.
template <typename Scalar>
Signal<Scalar> conv_matrix(const Signal<Scalar>& f, const Kernel<Scalar>& k, bool circular = false) {
  const Extents& e = f.extents();
  const Index n = e.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t(n, n);
  t.setConstant(Scalar(0));
  for (Index row = 0; row < n; ++row)
    for (Index col = 0; col < n; ++col) {
      Point d = e.point(row) - e.point(col);
      if (circular) d = {wrap(d[0], e.n[0]), wrap(d[1], e.n[1])};
      for (const auto& [p, w] : k.entries()) {
        const Point q = circular ? Point{wrap(p[0], e.n[0]), wrap(p[1], e.n[1])} : p;
        if (q == d) t(row, col) += w;
      }
    }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(n);
  for (Index i = 0; i < n; ++i) v[i] = f[i];
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = t * v;
  typename Signal<Scalar>::Array a(n);
  for (Index i = 0; i < n; ++i) a[i] = out[i];
  return Signal<Scalar>(e, std::move(a));
}

/// Max over fine points z with 0 <= Rn - z < R in every dimension.
inline SignalD maxpool(const SignalD& f, Index r) {
  const Extents& e = f.extents();
  return SignalD::generate(coarse_extents(e, r), [&](Point n) {
    double m = bottom<double>();
    for (Index i = 0; i < e.size(); ++i) {
      const Point d = scaled(n, r) - e.point(i);
      if (d[0] >= 0 && d[0] < r && d[1] >= 0 && d[1] < (e.dims == 1 ? 1 : r)) m = std::max(m, f[i]);
    }
    return m;
  });
}

/// median(s, t, 0) by sorting.
inline double median3(double s, double t) {
  double v[3] = {s, t, 0.0};
  std::sort(v, v + 3);
  return v[1];
}

/// All signals of a given length with samples drawn from `values`.
inline void for_each_signal(Index length, const std::vector<double>& values, const std::function<void(const SignalD&)>& fn) {
  std::vector<std::size_t> digit(std::size_t(length), 0);
  Eigen::ArrayXd a(length);
  while (true) {
    for (Index i = 0; i < length; ++i) a[i] = values[digit[std::size_t(i)]];
    fn(SignalD(Extents::line(length), a));
    std::size_t j = 0;
    while (j < digit.size() && ++digit[j] == values.size()) digit[j++] = 0;
    if (j == digit.size()) return;
  }
}

/// Distinct vectors v - <k, v> 1 over the pattern cube, computed entrywise.
inline std::size_t basis_cardinality(const std::vector<Rational>& k, const std::vector<Rational>& alphabet) {
  std::set<std::vector<Rational>> seen;
  std::vector<std::size_t> digit(k.size(), 0);
  while (true) {
    Rational mean(0);
    for (std::size_t j = 0; j < k.size(); ++j) mean += k[j] * alphabet[digit[j]];
    std::vector<Rational> g;
    for (std::size_t j = 0; j < k.size(); ++j) g.push_back(alphabet[digit[j]] - mean);
    seen.insert(g);
    std::size_t j = 0;
    while (j < digit.size() && ++digit[j] == alphabet.size()) digit[j++] = 0;
    if (j == digit.size()) break;
  }
  return seen.size();
}

}  // namespace latmorph::oracle
