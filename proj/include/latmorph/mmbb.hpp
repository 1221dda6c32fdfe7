#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "latmorph/maxplus.hpp"
#include "latmorph/rational.hpp"

namespace latmorph {

/// Finite-support linear convolution kernel. Zero weights are dropped.
template <typename Scalar_ = double>
class Kernel {
 public:
  using Scalar = Scalar_;
  using Entry = std::pair<Point, Scalar>;

  explicit Kernel(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i - 1].first == entries[i].first)
        throw std::invalid_argument("kernel: duplicate offset");
      if (!is_finite(entries[i].second)) throw std::invalid_argument("kernel: weights must be finite");
      if (entries[i].second != Scalar(0)) entries_.push_back(entries[i]);
    }
    if (entries_.empty()) throw std::invalid_argument("kernel: no non-zero weight");
  }

  /// 1-D kernel with weights on offsets first, first+1, ...
  static Kernel line(std::vector<Scalar> weights, Index first = 0) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < weights.size(); ++i) e.emplace_back(Point{first + Index(i), 0}, weights[i]);
    return Kernel(std::move(e));
  }

  static Kernel identity() { return Kernel({{Point{0, 0}, Scalar(1)}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::vector<Point> support() const {
    std::vector<Point> s;
    for (const auto& [p, w] : entries_) s.push_back(p);
    return s;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(Index(entries_.size()));
    for (std::size_t i = 0; i < entries_.size(); ++i) w[Index(i)] = entries_[i].second;
    return w;
  }

  Scalar sum() const {
    Scalar s(0);
    for (const auto& [p, w] : entries_) s += w;
    return s;
  }

  bool has_positive() const { return gain_plus() > Scalar(0); }
  bool has_negative() const { return gain_minus() > Scalar(0); }

  Scalar gain_plus() const {
    Scalar s(0);
    for (const auto& [p, w] : entries_)
      if (w > Scalar(0)) s += w;
    return s;
  }

  Scalar gain_minus() const {
    Scalar s(0);
    for (const auto& [p, w] : entries_)
      if (w < Scalar(0)) s -= w;
    return s;
  }

  /// k+/G+ as a non-negative normalised kernel.
  Kernel normalised_plus() const { return part(+1); }
  /// k-/G- (magnitudes) as a non-negative normalised kernel.
  Kernel normalised_minus() const { return part(-1); }

  bool is_normalised_nonnegative(const Scalar& tol = Scalar(0)) const {
    for (const auto& [p, w] : entries_)
      if (w < Scalar(0)) return false;
    const Scalar d = sum() - Scalar(1);
    return -tol <= d && d <= tol;
  }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  Kernel part(int sign) const {
    const Scalar g = sign > 0 ? gain_plus() : gain_minus();
    if (!(g > Scalar(0))) throw std::invalid_argument("kernel: empty sign part");
    std::vector<Entry> e;
    for (const auto& [p, w] : entries_)
      if ((sign > 0 && w > Scalar(0)) || (sign < 0 && w < Scalar(0))) e.emplace_back(p, (sign > 0 ? w : -w) / g);
    return Kernel(std::move(e));
  }

  std::vector<Entry> entries_;
};

template <typename To, typename From>
Kernel<To> kernel_cast(const Kernel<From>& k) {
  std::vector<typename Kernel<To>::Entry> e;
  for (const auto& [p, w] : k.entries()) e.emplace_back(p, scalar_cast<To>(w));
  return Kernel<To>(std::move(e));
}

/// out(x) = sum_i k(x_i) f(x - x_i), zero padding outside the domain.
template <typename Scalar>
Signal<Scalar> conv_direct(const Signal<Scalar>& f, const Kernel<Scalar>& k) {
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar acc(0);
    for (const auto& [y, w] : k.entries())
      if (f.contains(x - y)) acc += w * f(x - y);
    return acc;
  });
}

inline Index wrap(Index i, Index n) {
  const Index r = i % n;
  return r < 0 ? r + n : r;
}

/// Periodic convolution on the signal's own grid.
template <typename Scalar>
Signal<Scalar> conv_circular(const Signal<Scalar>& f, const Kernel<Scalar>& k) {
  const Point n = f.extents().n;
  return Signal<Scalar>::generate(f.extents(), [&](Point x) {
    Scalar acc(0);
    for (const auto& [y, w] : k.entries()) {
      const Point p = x - y;
      acc += w * f(Point{wrap(p[0], n[0]), wrap(p[1], n[1])});
    }
    return acc;
  });
}

/// True when every offset x - x_i of the kernel window lies in the domain.
template <typename Scalar, typename KScalar>
bool full_window(const Signal<Scalar>& f, const Kernel<KScalar>& k, Point x) {
  for (const auto& [y, w] : k.entries())
    if (!f.contains(x - y)) return false;
  return true;
}

/// A(l,i) = delta(l,i) - k_i for a non-negative normalised kernel.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> char_matrix(const Kernel<Scalar>& k) {
  Scalar tol(0);
  if constexpr (std::is_floating_point_v<Scalar>) tol = Scalar(1e-12);
  if (!k.is_normalised_nonnegative(tol))
    throw std::invalid_argument("char_matrix: kernel must be non-negative with unit sum");
  const Index n = Index(k.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
  const auto w = k.weights();
  for (Index l = 0; l < n; ++l)
    for (Index i = 0; i < n; ++i) a(l, i) = (l == i ? Scalar(1) : Scalar(0)) - w[i];
  return a;
}

/// Image of the quantised pattern cube under the characteristic matrix.
/// Coordinate j pairs with support point x_j of the source kernel.
template <typename Scalar_ = double>
struct VirtualBasis {
  using Scalar = Scalar_;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::vector<Point> support;
  std::vector<Vector> elements;

  std::size_t size() const { return elements.size(); }

  /// Structuring function of element i: value g_j at offset -x_j, so that
  /// erode(f, .)(x) = min_j f(x - x_j) - g_j.
  StructuringFunction<Scalar> structuring(std::size_t i) const {
    std::vector<typename StructuringFunction<Scalar>::Entry> e;
    for (std::size_t j = 0; j < support.size(); ++j) e.emplace_back(-support[j], elements[i][Index(j)]);
    return StructuringFunction<Scalar>(std::move(e));
  }
};

template <typename To, typename From>
VirtualBasis<To> basis_cast(const VirtualBasis<From>& v) {
  VirtualBasis<To> out{v.support, {}};
  for (const auto& g : v.elements) {
    typename VirtualBasis<To>::Vector h(g.size());
    for (Index j = 0; j < g.size(); ++j) h[j] = scalar_cast<To>(g[j]);
    out.elements.push_back(std::move(h));
  }
  return out;
}

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

/// Enumerates alphabet^N, maps through A_k and deduplicates (exactly for
/// non-floating scalars, componentwise 1e-12 otherwise).
template <typename Scalar>
VirtualBasis<Scalar> virtual_basis(const Kernel<Scalar>& k, const Alphabet<Scalar>& a,
                                   std::size_t cap = default_enumeration_cap) {
  using Vector = typename VirtualBasis<Scalar>::Vector;
  const auto A = char_matrix(k);
  const std::size_t n = k.size();
  const std::size_t q = a.count();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / q) throw std::invalid_argument("virtual_basis: enumeration cap exceeded");
    total *= q;
  }

  std::vector<Vector> out;
  out.reserve(total);
  std::vector<std::size_t> digit(n, 0);
  Vector v = Vector::Zero(Index(n));
  for (std::size_t count = 0; count < total; ++count) {
    for (std::size_t j = 0; j < n; ++j) v[Index(j)] = a.levels()[digit[j]];
    out.push_back(A * v);
    for (std::size_t j = 0; j < n && ++digit[j] == q; ++j) digit[j] = 0;
  }

  auto lex = [](const Vector& x, const Vector& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::sort(out.begin(), out.end(), lex);
  auto same = [](const Vector& x, const Vector& y) {
    if constexpr (std::is_floating_point_v<Scalar>)
      return ((x - y).cwiseAbs().array() <= Scalar(1e-12)).all();
    else
      return x == y;
  };
  out.erase(std::unique(out.begin(), out.end(), same), out.end());
  return VirtualBasis<Scalar>{k.support(), std::move(out)};
}

template <typename Scalar>
void require_in_alphabet(const Signal<Scalar>& f, const Alphabet<Scalar>& a, const char* what) {
  for (Index i = 0; i < f.size(); ++i)
    if (!a.contains(f[i])) throw std::invalid_argument(std::string(what) + ": sample outside the alphabet");
}

/// Sup over the basis of the erosions by its elements.
template <typename Scalar>
Signal<Scalar> sup_of_erosions(const Signal<Scalar>& f, const VirtualBasis<Scalar>& v) {
  Signal<Scalar> out = Signal<Scalar>::constant(f.extents(), bottom<Scalar>());
  for (std::size_t i = 0; i < v.size(); ++i) out = pointwise_max(out, erode(f, v.structuring(i)));
  return out;
}

template <typename Scalar>
Signal<Scalar> conv_via_virtual_basis(const Signal<Scalar>& f, const Kernel<Scalar>& k, const Alphabet<Scalar>& a) {
  require_in_alphabet(f, a, "conv_via_virtual_basis");
  return sup_of_erosions(f, virtual_basis(k, a));
}

/// G+ * (max-min branch over V(k+/G+)) - G- * (branch over V(k-/G-)).
template <typename Scalar>
Signal<Scalar> conv_signed_mmbb(const Signal<Scalar>& f, const Kernel<Scalar>& k, const Alphabet<Scalar>& a) {
  require_in_alphabet(f, a, "conv_signed_mmbb");
  if (!k.has_positive()) throw std::invalid_argument("conv_signed_mmbb: positive part is empty");
  Signal<Scalar> out = k.gain_plus() * sup_of_erosions(f, virtual_basis(k.normalised_plus(), a));
  if (k.has_negative())
    out = out - k.gain_minus() * sup_of_erosions(f, virtual_basis(k.normalised_minus(), a));
  return out;
}

template <typename Scalar_ = double>
struct SupGenPair {
  using Scalar = Scalar_;
  StructuringFunction<Scalar> g_minus;
  StructuringFunction<Scalar> g_plus;
};

template <typename Scalar>
Signal<Scalar> supgen_apply(const Signal<Scalar>& f, const SupGenPair<Scalar>& pair) {
  return pointwise_min(erode(f, pair.g_minus), anti_dilate(f, pair.g_plus));
}

/// Literal signed psi for one pair: min(erode(f,g-), (G-/G+) anti_dilate(f,g+)),
/// with both structuring functions laid out as basis elements.
template <typename Scalar>
Signal<Scalar> bb_psi_signed(const Signal<Scalar>& f, const Kernel<Scalar>& k,
                             const StructuringFunction<Scalar>& g_minus, const StructuringFunction<Scalar>& g_plus) {
  const Scalar ratio = k.gain_minus() / k.gain_plus();
  return pointwise_min(erode(f, g_minus), ratio * anti_dilate(f, g_plus));
}

/// Decides conv(f,k)(x) >= 0 from the basis alone: the pair family is the
/// level-shifted product V(k+/G+) x V(k-/G-), shifts drawn from <k+/G+, v>.
template <typename Scalar>
bool bb_sign_test(const Signal<Scalar>& f, const Kernel<Scalar>& k, const Alphabet<Scalar>& a, Point x) {
  if (!k.has_positive() || !k.has_negative())
    throw std::invalid_argument("bb_sign_test: kernel needs both sign parts");
  require_in_alphabet(f, a, "bb_sign_test");
  const auto kp = k.normalised_plus();
  const auto vp = virtual_basis(kp, a);
  const auto vm = virtual_basis(k.normalised_minus(), a);
  const Scalar ratio = k.gain_minus() / k.gain_plus();

  // Reading at a single point: erosion and anti-dilation values per element.
  std::vector<Scalar> eros, anti;
  for (std::size_t i = 0; i < vp.size(); ++i) eros.push_back(erode(f, vp.structuring(i))(x));
  for (std::size_t i = 0; i < vm.size(); ++i) anti.push_back(anti_dilate(f, vm.structuring(i))(x));

  std::vector<Scalar> levels;
  {
    const std::size_t n = kp.size(), q = a.count();
    std::vector<std::size_t> digit(n, 0);
    const auto w = kp.weights();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    for (std::size_t c = 0; c < total; ++c) {
      Scalar s(0);
      for (std::size_t j = 0; j < n; ++j) s += w[Index(j)] * a.levels()[digit[j]];
      levels.push_back(s);
      for (std::size_t j = 0; j < n && ++digit[j] == q; ++j) digit[j] = 0;
    }
  }

  Scalar tol(0);
  if constexpr (std::is_floating_point_v<Scalar>) tol = Scalar(1e-12);
  for (const Scalar& s : levels)
    for (const Scalar& e : eros)
      for (const Scalar& d : anti)
        if (std::min(Scalar(e - s), Scalar(ratio * d + s)) >= -tol) return true;
  return false;
}

/// Sum_j w_j * max_i erode(f, g_ij).
template <typename Scalar>
Signal<Scalar> mmbb_layer_apply(const Signal<Scalar>& f,
                                const std::vector<std::pair<Scalar, std::vector<StructuringFunction<Scalar>>>>& bases) {
  Signal<Scalar> out = Signal<Scalar>::constant(f.extents(), Scalar(0));
  for (const auto& [w, group] : bases) {
    if (group.empty()) throw std::invalid_argument("mmbb_layer_apply: empty basis group");
    if (w == Scalar(0)) continue;
    Signal<Scalar> branch = erode(f, group.front());
    for (std::size_t i = 1; i < group.size(); ++i) branch = pointwise_max(branch, erode(f, group[i]));
    out = out + w * branch;
  }
  return out;
}

/// Coarse extents ceil(n/R) per dimension.
inline Extents coarse_extents(const Extents& fine, Index r) {
  if (r < 1) throw std::invalid_argument("stride must be >= 1");
  const Index a = (fine.n[0] + r - 1) / r;
  const Index b = fine.dims == 1 ? 1 : (fine.n[1] + r - 1) / r;
  return Extents::checked(fine.dims, {a, b});
}

/// out(n) = min_j (max_y f(Rn - y) + b_j(y)) + alpha_j on the coarse grid.
template <typename Scalar>
Signal<Scalar> apmo_apply(const Signal<Scalar>& f,
                          const std::vector<std::pair<StructuringFunction<Scalar>, Scalar>>& items, Index r) {
  if (items.empty()) throw std::invalid_argument("apmo_apply: no items");
  const Index rc = f.dims() == 1 ? 1 : r;
  return Signal<Scalar>::generate(coarse_extents(f.extents(), r), [&](Point n) {
    const Point base{n[0] * r, n[1] * rc};
    Scalar acc = top<Scalar>();
    for (const auto& [b, alpha] : items) {
      Scalar d = bottom<Scalar>();
      for (const auto& [y, v] : b.entries())
        if (f.contains(base - y)) d = std::max(d, Scalar(f(base - y) + v));
      acc = std::min(acc, Scalar(d + alpha));
    }
    return acc;
  });
}

}  // namespace latmorph
