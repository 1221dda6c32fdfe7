#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "latmorph/grid.hpp"

namespace latmorph {

/// Finite 1-D or 2-D grid of extended-real samples.
///
/// Out-of-domain reads are not defined here: every operator decides its own
/// boundary rule by testing `contains()` before reading.
template <typename Scalar_ = double>
class Signal {
 public:
  using Scalar = Scalar_;
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Signal() : ext_(Extents::line(1)), data_(Array::Zero(1)) {}

  Signal(const Extents& ext, Array data) : ext_(ext), data_(std::move(data)) {
    if (data_.size() != ext_.size())
      throw std::invalid_argument("signal: sample count does not match extents");
  }

  static Signal constant(const Extents& ext, Scalar v) { return Signal(ext, Array::Constant(ext.size(), v)); }

  /// Builds a signal by evaluating fn(Point) at every grid point.
  template <typename Fn>
  static Signal generate(const Extents& ext, Fn&& fn) {
    Array out(ext.size());
    for_each_point(ext, [&](Point p) { out[ext.linear(p)] = fn(p); });
    return Signal(ext, std::move(out));
  }

  static Signal line(std::initializer_list<Scalar> values) {
    Array a(static_cast<Index>(values.size()));
    Index i = 0;
    for (const auto& v : values) a[i++] = v;
    const Extents ext = Extents::line(a.size());
    return Signal(ext, std::move(a));
  }

  const Extents& extents() const { return ext_; }
  int dims() const { return ext_.dims; }
  Index size() const { return data_.size(); }
  bool contains(Point p) const { return ext_.contains(p); }

  Scalar operator[](Index i) const { return data_[i]; }
  Scalar operator()(Point p) const { return data_[ext_.linear(p)]; }

  const Array& array() const { return data_; }

  bool same_shape(const Signal& o) const { return ext_ == o.ext_; }

  /// Applies fn to every sample.
  template <typename Fn>
  Signal map(Fn&& fn) const {
    Array out(size());
    for (Index i = 0; i < size(); ++i) out[i] = fn(data_[i]);
    return Signal(ext_, std::move(out));
  }

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.ext_ == b.ext_ && (a.data_ == b.data_).all();
  }

 private:
  Extents ext_;
  Array data_;
};

using SignalD = Signal<double>;

template <typename Scalar>
void require_same_shape(const Signal<Scalar>& f, const Signal<Scalar>& g, const char* what) {
  if (!f.same_shape(g)) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

/// Validating constructor from raw dims/extents/row-major samples.
template <typename Scalar>
Signal<Scalar> make_signal(int dims, std::span<const Index> extents, std::span<const Scalar> samples) {
  if (extents.size() != static_cast<std::size_t>(dims))
    throw std::invalid_argument("make_signal: expected one extent per dimension");
  const Extents ext = Extents::checked(dims, dims == 1 ? Point{extents[0], 1} : Point{extents[0], extents[1]});
  if (static_cast<Index>(samples.size()) != ext.size())
    throw std::invalid_argument("make_signal: sample count does not match extents");
  typename Signal<Scalar>::Array a(ext.size());
  std::copy(samples.begin(), samples.end(), a.begin());
  return Signal<Scalar>(ext, std::move(a));
}

template <typename Scalar>
Signal<Scalar> operator+(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "add");
  return Signal<Scalar>(f.extents(), f.array() + g.array());
}

template <typename Scalar>
Signal<Scalar> operator-(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "subtract");
  return Signal<Scalar>(f.extents(), f.array() - g.array());
}

template <typename Scalar>
Signal<Scalar> operator+(const Signal<Scalar>& f, Scalar c) {
  return Signal<Scalar>(f.extents(), f.array() + c);
}

template <typename Scalar>
Signal<Scalar> operator*(Scalar c, const Signal<Scalar>& f) {
  return Signal<Scalar>(f.extents(), f.array() * c);
}

/// Pointwise negation; swaps BOTTOM and TOP.
template <typename Scalar>
Signal<Scalar> negate(const Signal<Scalar>& f) {
  return Signal<Scalar>(f.extents(), -f.array());
}

template <typename Scalar>
Signal<Scalar> operator-(const Signal<Scalar>& f) {
  return negate(f);
}

template <typename Scalar>
Signal<Scalar> pointwise_min(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "pointwise_min");
  return Signal<Scalar>(f.extents(), f.array().min(g.array()));
}

template <typename Scalar>
Signal<Scalar> pointwise_max(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "pointwise_max");
  return Signal<Scalar>(f.extents(), f.array().max(g.array()));
}

/// f <= g in the pointwise extended-real order.
template <typename Scalar>
bool pointwise_leq(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "pointwise_leq");
  return (f.array() <= g.array()).all();
}

/// Median order on one value: same sign and no larger amplitude.
template <typename Scalar>
bool median_leq(Scalar s, Scalar t) {
  return (Scalar(0) <= s && s <= t) || (t <= s && s <= Scalar(0));
}

/// f precedes g in the median order at every sample. Requires finite samples.
template <typename Scalar>
bool median_leq(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "median_leq");
  for (Index i = 0; i < f.size(); ++i) {
    if (!is_finite(f[i]) || !is_finite(g[i]))
      throw std::invalid_argument("median_leq: samples must be finite");
  }
  for (Index i = 0; i < f.size(); ++i)
    if (!median_leq(f[i], g[i])) return false;
  return true;
}

/// Largest |f - g| over the grid; 0 for identical signals, including
/// matching infinities.
template <typename Scalar>
double sup_distance(const Signal<Scalar>& f, const Signal<Scalar>& g) {
  require_same_shape(f, g, "sup_distance");
  double d = 0.0;
  for (Index i = 0; i < f.size(); ++i) {
    if (f[i] == g[i]) continue;
    d = std::max(d, std::abs(double(f[i] - g[i])));
  }
  return d;
}

template <typename Scalar>
bool nearly_equal(const Signal<Scalar>& f, const Signal<Scalar>& g, double rel = 1e-9) {
  if (!f.same_shape(g)) return false;
  for (Index i = 0; i < f.size(); ++i)
    if (!nearly_equal(f[i], g[i], rel)) return false;
  return true;
}

template <typename Scalar>
bool all_finite(const Signal<Scalar>& f) {
  for (Index i = 0; i < f.size(); ++i)
    if (!is_finite(f[i])) return false;
  return true;
}

}  // namespace latmorph
