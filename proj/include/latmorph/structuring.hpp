#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "latmorph/grid.hpp"

namespace latmorph {

/// Finite set of integer offsets (the support of a flat structuring function).
class Window {
 public:
  explicit Window(std::vector<Point> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) throw std::invalid_argument("window: must be non-empty");
    std::sort(offsets_.begin(), offsets_.end());
    if (std::adjacent_find(offsets_.begin(), offsets_.end()) != offsets_.end())
      throw std::invalid_argument("window: duplicate offset");
  }

  /// 1-D window {first, ..., last}.
  static Window range(Index first, Index last) {
    std::vector<Point> o;
    for (Index i = first; i <= last; ++i) o.push_back({i, 0});
    return Window(std::move(o));
  }

  /// Pooling window {0, ..., r-1}^dims.
  static Window box(Index r, int dims) {
    std::vector<Point> o;
    for (Index i = 0; i < r; ++i) {
      if (dims == 1) {
        o.push_back({i, 0});
      } else {
        for (Index j = 0; j < r; ++j) o.push_back({i, j});
      }
    }
    return Window(std::move(o));
  }

  const std::vector<Point>& offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }
  bool contains(Point p) const { return std::binary_search(offsets_.begin(), offsets_.end(), p); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::vector<Point> offsets_;
};

/// Structuring function with finite support and finite values; implicitly
/// BOTTOM off its support.
template <typename Scalar_ = double>
class StructuringFunction {
 public:
  using Scalar = Scalar_;
  using Entry = std::pair<Point, Scalar>;

  explicit StructuringFunction(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("structuring function: empty support");
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!is_finite(entries_[i].second))
        throw std::invalid_argument("structuring function: values must be finite");
      if (i > 0 && entries_[i - 1].first == entries_[i].first)
        throw std::invalid_argument("structuring function: duplicate offset");
    }
  }

  static StructuringFunction flat(const Window& w) {
    std::vector<Entry> e;
    for (const auto& p : w.offsets()) e.emplace_back(p, Scalar(0));
    return StructuringFunction(std::move(e));
  }

  /// Single offset at the origin carrying `value`.
  static StructuringFunction point(Scalar value = Scalar(0), Point at = {0, 0}) {
    return StructuringFunction({{at, value}});
  }

  /// 1-D structuring function with values on offsets first, first+1, ...
  static StructuringFunction line(Index first, std::initializer_list<Scalar> values) {
    std::vector<Entry> e;
    Index i = first;
    for (const auto& v : values) e.emplace_back(Point{i++, 0}, v);
    return StructuringFunction(std::move(e));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  Window support() const {
    std::vector<Point> o;
    for (const auto& [p, v] : entries_) o.push_back(p);
    return Window(std::move(o));
  }

  bool is_flat() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second == Scalar(0); });
  }

  /// b*(x) = b(-x).
  StructuringFunction reflected() const {
    std::vector<Entry> e;
    for (const auto& [p, v] : entries_) e.emplace_back(-p, v);
    return StructuringFunction(std::move(e));
  }

  template <typename Fn>
  StructuringFunction map_values(Fn&& fn) const {
    std::vector<Entry> e;
    for (const auto& [p, v] : entries_) e.emplace_back(p, fn(v));
    return StructuringFunction(std::move(e));
  }

  /// Value at an offset, or BOTTOM off the support.
  Scalar at(Point p) const {
    for (const auto& [q, v] : entries_)
      if (q == p) return v;
    return bottom<Scalar>();
  }

  friend bool operator==(const StructuringFunction&, const StructuringFunction&) = default;

 private:
  std::vector<Entry> entries_;
};

using StructuringFunctionD = StructuringFunction<double>;

/// Quantisation alphabet: strictly increasing levels, at least two.
template <typename Scalar_ = double>
class Alphabet {
 public:
  using Scalar = Scalar_;

  explicit Alphabet(std::vector<Scalar> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) throw std::invalid_argument("alphabet: needs at least two levels");
    for (std::size_t i = 1; i < levels_.size(); ++i)
      if (!(levels_[i - 1] < levels_[i]))
        throw std::invalid_argument("alphabet: levels must be strictly increasing");
  }

  const std::vector<Scalar>& levels() const { return levels_; }
  std::size_t count() const { return levels_.size(); }
  bool contains(const Scalar& v) const { return std::binary_search(levels_.begin(), levels_.end(), v); }

 private:
  std::vector<Scalar> levels_;
};

}  // namespace latmorph
