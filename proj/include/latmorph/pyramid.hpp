#pragma once

#include <optional>
#include <vector>

#include "latmorph/mmbb.hpp"

namespace latmorph {

enum class ResampleMode { down, up };

/// out(n) = f(Rn) on the ceil(n/R) coarse grid.
template <typename Scalar>
Signal<Scalar> resample_down(const Signal<Scalar>& f, Index r) {
  return Signal<Scalar>::generate(coarse_extents(f.extents(), r), [&](Point n) { return f(scaled(n, r)); });
}

inline void require_coarse_of(const Extents& coarse, const Extents& fine, Index r, const char* what) {
  if (!(coarse_extents(fine, r) == coarse))
    throw std::invalid_argument(std::string(what) + ": coarse and fine extents are inconsistent");
}

/// out(m) = g(m/R) when R divides m, else fill.
template <typename Scalar>
Signal<Scalar> resample_up(const Signal<Scalar>& g, Index r, const Extents& fine, Scalar fill) {
  require_coarse_of(g.extents(), fine, r, "resample_up");
  return Signal<Scalar>::generate(fine, [&](Point m) {
    if (m[0] % r != 0 || m[1] % r != 0) return fill;
    return g(Point{m[0] / r, m[1] / r});
  });
}

template <typename Scalar>
Signal<Scalar> resample_up(const Signal<Scalar>& g, Index r, Scalar fill) {
  const Extents& c = g.extents();
  return resample_up(g, r, Extents::checked(c.dims, {c.n[0] * r, c.dims == 1 ? 1 : c.n[1] * r}), fill);
}

template <typename Scalar>
Signal<Scalar> resample(const Signal<Scalar>& f, Index r, ResampleMode mode, Scalar fill = bottom<Scalar>(),
                        std::optional<Extents> fine = std::nullopt) {
  if (mode == ResampleMode::down) return resample_down(f, r);
  return fine ? resample_up(f, r, *fine, fill) : resample_up(f, r, fill);
}

/// Erosion pyramid analysis: down(erode(f, b)).
template <typename Scalar>
Signal<Scalar> gh_analysis(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b, Index r) {
  return resample_down(erode(f, b), r);
}

/// Erosion pyramid synthesis: dilate(up(g, BOTTOM), b).
template <typename Scalar>
Signal<Scalar> gh_synthesis(const Signal<Scalar>& g, const StructuringFunction<Scalar>& b, Index r, const Extents& fine) {
  return dilate(resample_up(g, r, fine, bottom<Scalar>()), b);
}

/// Dilation pyramid analysis: down(dilate(f, b)).
template <typename Scalar>
Signal<Scalar> heijmans_analysis(const Signal<Scalar>& f, const StructuringFunction<Scalar>& b, Index r) {
  return resample_down(dilate(f, b), r);
}

/// Dilation pyramid synthesis: erode(up(g, TOP), b).
template <typename Scalar>
Signal<Scalar> heijmans_synthesis(const Signal<Scalar>& g, const StructuringFunction<Scalar>& b, Index r,
                                  const Extents& fine) {
  return erode(resample_up(g, r, fine, top<Scalar>()), b);
}

template <typename Fn>
void for_each_window_offset(int dims, Index r, Fn&& fn) {
  for (Index i = 0; i < r; ++i) {
    if (dims == 1) {
      fn(Point{i, 0});
    } else {
      for (Index j = 0; j < r; ++j) fn(Point{i, j});
    }
  }
}

/// out(n) = max over y in {0..R-1}^d, Rn - y in domain, of f(Rn - y).
template <typename Scalar>
Signal<Scalar> maxpool(const Signal<Scalar>& f, Index r) {
  return Signal<Scalar>::generate(coarse_extents(f.extents(), r), [&](Point n) {
    Scalar acc = bottom<Scalar>();
    for_each_window_offset(f.dims(), r, [&](Point y) {
      const Point p = scaled(n, r) - y;
      if (f.contains(p)) acc = std::max(acc, f(p));
    });
    return acc;
  });
}

inline Index ceil_div(Index a, Index r) { return a >= 0 ? (a + r - 1) / r : -((-a) / r); }

/// Replication upper adjoint of maxpool: out(z) = g(ceil(z/R)), TOP where
/// ceil(z/R) leaves the coarse grid (no pooling window reads z).
template <typename Scalar>
Signal<Scalar> maxpool_adjoint(const Signal<Scalar>& g, Index r, const Extents& fine) {
  require_coarse_of(g.extents(), fine, r, "maxpool_adjoint");
  return Signal<Scalar>::generate(fine, [&](Point z) {
    const Point n{ceil_div(z[0], r), ceil_div(z[1], r)};
    return g.contains(n) ? g(n) : top<Scalar>();
  });
}

template <typename Scalar>
Signal<Scalar> strided_conv(const Signal<Scalar>& f, const Kernel<Scalar>& k, Index r) {
  return resample_down(conv_direct(f, k), r);
}

/// Folds the kernel support modulo R: k~(n) = sum_l k(n + lR), n in {0..R-1}^d.
template <typename Scalar>
Kernel<Scalar> aliased_kernel(const Kernel<Scalar>& k, Index r) {
  if (r < 1) throw std::invalid_argument("aliased_kernel: stride must be >= 1");
  std::vector<typename Kernel<Scalar>::Entry> folded;
  for (const auto& [p, w] : k.entries()) {
    const Point q{wrap(p[0], r), wrap(p[1], r)};
    auto it = std::find_if(folded.begin(), folded.end(), [&](const auto& e) { return e.first == q; });
    if (it == folded.end())
      folded.emplace_back(q, w);
    else
      it->second += w;
  }
  return Kernel<Scalar>(std::move(folded));
}

/// h(n) placed at offsets Rn.
template <typename Scalar>
Kernel<Scalar> upsample_kernel(const Kernel<Scalar>& h, Index r) {
  std::vector<typename Kernel<Scalar>::Entry> e;
  for (const auto& [p, w] : h.entries()) e.emplace_back(scaled(p, r), w);
  return Kernel<Scalar>(std::move(e));
}

/// Polyphase evaluation of down(f (*) k) on a periodic grid whose extents R
/// divides: sum over phases r of down(f(. - r)) (*) k_r, k_r(m) = k(Rm + r).
template <typename Scalar>
Signal<Scalar> polyphase_subsampled_conv(const Signal<Scalar>& f, const Kernel<Scalar>& k, Index r) {
  const Extents& ext = f.extents();
  if (ext.n[0] % r != 0 || (ext.dims == 2 && ext.n[1] % r != 0))
    throw std::invalid_argument("polyphase_subsampled_conv: extents must be divisible by the stride");
  const Point n = ext.n;
  Signal<Scalar> out = Signal<Scalar>::constant(coarse_extents(ext, r), Scalar(0));
  for_each_window_offset(ext.dims, r, [&](Point phase) {
    std::vector<typename Kernel<Scalar>::Entry> comp;
    for (const auto& [p, w] : k.entries()) {
      const Point d = p - phase;
      if (wrap(d[0], r) == 0 && wrap(d[1], r) == 0) comp.emplace_back(Point{(d[0] - wrap(d[0], r)) / r, (d[1] - wrap(d[1], r)) / r}, w);
    }
    if (comp.empty()) return;
    const auto shifted = Signal<Scalar>::generate(ext, [&](Point z) {
      const Point s = z - phase;
      return f(Point{wrap(s[0], n[0]), wrap(s[1], n[1])});
    });
    out = out + conv_circular(resample_down(shifted, r), Kernel<Scalar>(std::move(comp)));
  });
  return out;
}

/// Approximation at the coarser level and detail on the finer grid.
template <typename Scalar_ = double>
struct PyramidLevel {
  using Scalar = Scalar_;
  Signal<Scalar> approximation;
  Signal<Scalar> detail;
};

/// Sample-and-hold upsampling: out(z) = g(floor(z/R)).
template <typename Scalar>
Signal<Scalar> hold_up(const Signal<Scalar>& g, Index r, const Extents& fine) {
  require_coarse_of(g.extents(), fine, r, "hold_up");
  return Signal<Scalar>::generate(fine, [&](Point z) { return g(Point{z[0] / r, z[1] / r}); });
}

/// Linear pyramid synthesis: hold-upsample then smooth.
template <typename Scalar>
Signal<Scalar> linear_synthesis(const Signal<Scalar>& g, const Kernel<Scalar>& k, Index r, const Extents& fine) {
  return conv_direct(hold_up(g, r, fine), k);
}

template <typename Scalar>
Kernel<Scalar> binomial_kernel() {
  return Kernel<Scalar>::line({Scalar(1) / Scalar(4), Scalar(1) / Scalar(2), Scalar(1) / Scalar(4)}, -1);
}

template <typename Scalar>
std::vector<PyramidLevel<Scalar>> laplacian_pyramid(const Signal<Scalar>& f, const Kernel<Scalar>& k, int levels,
                                                    Index r = 2) {
  if (levels < 1) throw std::invalid_argument("laplacian_pyramid: levels must be >= 1");
  Scalar tol(0);
  if constexpr (std::is_floating_point_v<Scalar>) tol = Scalar(1e-12);
  if (!k.is_normalised_nonnegative(tol))
    throw std::invalid_argument("laplacian_pyramid: smoothing kernel must be non-negative with unit sum");
  std::vector<PyramidLevel<Scalar>> out;
  Signal<Scalar> g = f;
  for (int i = 0; i < levels; ++i) {
    const Extents& e = g.extents();
    if (e.n[0] < r || (e.dims == 2 && e.n[1] < r))
      throw std::invalid_argument("laplacian_pyramid: too many levels for the signal extents");
    Signal<Scalar> next = resample_down(conv_direct(g, k), r);
    Signal<Scalar> detail = g - linear_synthesis(next, k, r, e);
    out.push_back({next, std::move(detail)});
    g = std::move(next);
  }
  return out;
}

template <typename Scalar>
Signal<Scalar> laplacian_reconstruct(const std::vector<PyramidLevel<Scalar>>& levels, const Kernel<Scalar>& k,
                                     Index r = 2) {
  if (levels.empty()) throw std::invalid_argument("laplacian_reconstruct: no levels");
  Signal<Scalar> g = levels.back().approximation;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    g = it->detail + linear_synthesis(g, k, r, it->detail.extents());
  return g;
}

/// Parts S_0..S_{n-1} with S_i = e_i - open(e_i), e_i the i-fold erosion,
/// followed by e_n itself.
template <typename Scalar>
std::vector<Signal<Scalar>> skeleton_decompose(const Signal<Scalar>& f, const Window& w, int n_max) {
  if (n_max < 0) throw std::invalid_argument("skeleton_decompose: n_max must be >= 0");
  if (!all_finite(f)) throw std::invalid_argument("skeleton_decompose: samples must be finite");
  const auto b = StructuringFunction<Scalar>::flat(w);
  std::vector<Signal<Scalar>> parts;
  Signal<Scalar> e = f;
  for (int i = 0; i < n_max; ++i) {
    Signal<Scalar> next = erode(e, b);
    parts.push_back(e - dilate(next, b));
    e = std::move(next);
  }
  parts.push_back(std::move(e));
  return parts;
}

/// Inverts skeleton_decompose: e_i = S_i + dilate(e_{i+1}).
template <typename Scalar>
Signal<Scalar> skeleton_reconstruct(const std::vector<Signal<Scalar>>& parts, const Window& w) {
  if (parts.empty()) throw std::invalid_argument("skeleton_reconstruct: no parts");
  const auto b = StructuringFunction<Scalar>::flat(w);
  Signal<Scalar> e = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) e = parts[i] + dilate(e, b);
  return e;
}

/// Union form max_i dilate^i(S_i); exact for binary signals only.
template <typename Scalar>
Signal<Scalar> skeleton_reconstruct_union(const std::vector<Signal<Scalar>>& parts, const Window& w) {
  if (parts.empty()) throw std::invalid_argument("skeleton_reconstruct_union: no parts");
  const auto b = StructuringFunction<Scalar>::flat(w);
  Signal<Scalar> out = Signal<Scalar>::constant(parts.front().extents(), bottom<Scalar>());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Signal<Scalar> d = parts[i];
    for (std::size_t j = 0; j < i; ++j) d = dilate(d, b);
    out = pointwise_max(out, d);
  }
  return out;
}

}  // namespace latmorph
