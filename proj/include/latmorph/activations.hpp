#pragma once

#include <vector>

#include "latmorph/pyramid.hpp"

namespace latmorph {

/// beta_plus * f where f > 0, beta_minus * f elsewhere.
template <typename Scalar>
Signal<Scalar> relu_param(const Signal<Scalar>& f, Scalar beta_plus, Scalar beta_minus) {
  if (!all_finite(f)) throw std::invalid_argument("relu_param: samples must be finite");
  return f.map([&](Scalar v) { return v > Scalar(0) ? beta_plus * v : beta_minus * v; });
}

template <typename Scalar>
Signal<Scalar> relu(const Signal<Scalar>& f) {
  return f.map([](Scalar v) { return std::max(v, Scalar(0)); });
}

/// Global upper adjoint of ReLU: g itself when g >= 0, else all BOTTOM.
template <typename Scalar>
Signal<Scalar> relu_upper_adjoint(const Signal<Scalar>& g) {
  if ((g.array() >= Scalar(0)).all()) return g;
  return Signal<Scalar>::constant(g.extents(), bottom<Scalar>());
}

/// out(n) = max over the pooling window of max(0, f(Rn - y) + alpha).
template <typename Scalar>
Signal<Scalar> apd(const Signal<Scalar>& f, Index r, Scalar alpha) {
  return Signal<Scalar>::generate(coarse_extents(f.extents(), r), [&](Point n) {
    Scalar acc = bottom<Scalar>();
    for_each_window_offset(f.dims(), r, [&](Point y) {
      const Point p = scaled(n, r) - y;
      if (f.contains(p)) acc = std::max(acc, std::max(Scalar(0), Scalar(f(p) + alpha)));
    });
    return acc;
  });
}

/// Upper adjoint of apd: g(ceil(z/R)) - alpha, TOP where no window reads z;
/// all BOTTOM when g has a negative sample.
template <typename Scalar>
Signal<Scalar> apd_adjoint(const Signal<Scalar>& g, Index r, Scalar alpha, const Extents& fine) {
  require_coarse_of(g.extents(), fine, r, "apd_adjoint");
  if (!(g.array() >= Scalar(0)).all()) return Signal<Scalar>::constant(fine, bottom<Scalar>());
  return maxpool_adjoint(g, r, fine) + Scalar(-alpha);
}

/// min(max_i erode(f, g_i), anti_dilate(f, cap)).
template <typename Scalar>
Signal<Scalar> morpho_activation(const Signal<Scalar>& f, const std::vector<StructuringFunction<Scalar>>& basis,
                                 const StructuringFunction<Scalar>& cap) {
  if (basis.empty()) throw std::invalid_argument("morpho_activation: empty basis");
  Signal<Scalar> sup = erode(f, basis.front());
  for (std::size_t i = 1; i < basis.size(); ++i) sup = pointwise_max(sup, erode(f, basis[i]));
  return pointwise_min(sup, anti_dilate(f, cap));
}

/// The same operator as a sup of sup-generating operators.
template <typename Scalar>
Signal<Scalar> morpho_activation_supgen(const Signal<Scalar>& f,
                                        const std::vector<StructuringFunction<Scalar>>& basis,
                                        const StructuringFunction<Scalar>& cap) {
  if (basis.empty()) throw std::invalid_argument("morpho_activation_supgen: empty basis");
  Signal<Scalar> out = supgen_apply(f, SupGenPair<Scalar>{basis.front(), cap});
  for (std::size_t i = 1; i < basis.size(); ++i)
    out = pointwise_max(out, supgen_apply(f, SupGenPair<Scalar>{basis[i], cap}));
  return out;
}

template <typename Scalar_ = double>
struct SigSpecConfig {
  using Scalar = Scalar_;
  std::vector<std::pair<Scalar, Kernel<Scalar>>> terms;
  Scalar alpha = Scalar(0);

  static SigSpecConfig identity() { return {{{Scalar(1), Kernel<Scalar>::identity()}}, Scalar(0)}; }
};

/// Sum_i w_i (f * k_i). The bias is applied by the composing layer.
template <typename Scalar>
Signal<Scalar> sigspec(const Signal<Scalar>& f, const SigSpecConfig<Scalar>& cfg) {
  if (cfg.terms.empty()) throw std::invalid_argument("sigspec: no terms");
  if (!all_finite(f)) throw std::invalid_argument("sigspec: samples must be finite");
  Signal<Scalar> out = Signal<Scalar>::constant(f.extents(), Scalar(0));
  for (const auto& [w, k] : cfg.terms) out = out + w * conv_direct(f, k);
  return out;
}

template <typename Scalar_ = double>
struct AffinePiece {
  using Scalar = Scalar_;
  std::vector<Scalar> slope;
  Scalar intercept = Scalar(0);
};

/// max over clauses of min over member pieces.
template <typename Scalar_ = double>
struct LatticePolynomial {
  using Scalar = Scalar_;
  std::vector<AffinePiece<Scalar>> pieces;
  std::vector<std::vector<std::size_t>> clauses;

  void validate() const {
    if (pieces.empty() || clauses.empty()) throw std::invalid_argument("lattice polynomial: empty");
    for (const auto& p : pieces)
      if (p.slope.size() != pieces.front().slope.size())
        throw std::invalid_argument("lattice polynomial: pieces disagree on input dimension");
    for (const auto& c : clauses) {
      if (c.empty()) throw std::invalid_argument("lattice polynomial: empty clause");
      for (auto j : c)
        if (j >= pieces.size()) throw std::invalid_argument("lattice polynomial: clause index out of range");
    }
  }

  std::size_t input_dim() const { return pieces.empty() ? 0 : pieces.front().slope.size(); }
};

template <typename Scalar>
Scalar lattice_poly_eval(const LatticePolynomial<Scalar>& p, const std::vector<Scalar>& x) {
  p.validate();
  if (x.size() != p.input_dim()) throw std::invalid_argument("lattice_poly_eval: dimension mismatch");
  Scalar best = bottom<Scalar>();
  for (const auto& clause : p.clauses) {
    Scalar m = top<Scalar>();
    for (auto j : clause) {
      const auto& piece = p.pieces[j];
      Scalar v = piece.intercept;
      for (std::size_t i = 0; i < x.size(); ++i) v += piece.slope[i] * x[i];
      m = std::min(m, v);
    }
    best = std::max(best, m);
  }
  return best;
}

/// ReLU as the join of the identity piece and the zero piece.
template <typename Scalar>
LatticePolynomial<Scalar> relu_lattice_poly() {
  return {{{{Scalar(1)}, Scalar(0)}, {{Scalar(0)}, Scalar(0)}}, {{0}, {1}}};
}

}  // namespace latmorph
