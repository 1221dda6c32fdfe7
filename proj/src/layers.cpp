#include "latmorph/layers.hpp"

#include <complex>

#include <unsupported/Eigen/FFT>

namespace latmorph {

namespace {

using Complex = std::complex<double>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void dft_lines(Eigen::ArrayXcd& a, Index rows, Index cols, bool forward) {
  Eigen::FFT<double> fft;
  std::vector<Complex> in, out;
  // Along columns (one transform per column, length `rows`).
  if (rows > 1) {
    in.resize(std::size_t(rows));
    for (Index c = 0; c < cols; ++c) {
      for (Index r = 0; r < rows; ++r) in[std::size_t(r)] = a[r * cols + c];
      forward ? fft.fwd(out, in) : fft.inv(out, in);
      for (Index r = 0; r < rows; ++r) a[r * cols + c] = out[std::size_t(r)];
    }
  }
  if (cols > 1) {
    in.resize(std::size_t(cols));
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) in[std::size_t(c)] = a[r * cols + c];
      forward ? fft.fwd(out, in) : fft.inv(out, in);
      for (Index c = 0; c < cols; ++c) a[r * cols + c] = out[std::size_t(c)];
    }
  }
}

/// Kernel weights folded onto the periodic grid.
SignalD kernel_image(const KernelD& k, const Extents& ext) {
  Eigen::ArrayXd a = Eigen::ArrayXd::Zero(ext.size());
  for (const auto& [p, w] : k.entries()) a[ext.linear({wrap(p[0], ext.n[0]), wrap(p[1], ext.n[1])})] += w;
  return SignalD(ext, std::move(a));
}

void require_stride(Index r) {
  if (r < 1) throw std::invalid_argument("layer: stride must be >= 1");
}

}  // namespace

Eigen::ArrayXcd dft(const SignalD& f) {
  if (!all_finite(f)) throw std::invalid_argument("dft: samples must be finite");
  Eigen::ArrayXcd a = f.array().cast<Complex>();
  dft_lines(a, f.extents().n[0], f.extents().n[1], true);
  return a;
}

Eigen::ArrayXd type2_multiplier(const KernelD& k, const Extents& ext, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0) throw std::invalid_argument("type2: epsilon must be finite and >= 0");
  const Eigen::ArrayXcd kf = dft(kernel_image(k, ext));
  double l1 = 0;
  for (const auto& [p, w] : k.entries()) l1 += std::abs(w);
  // Bins whose transfer value is round-off around an exact zero count as zero.
  const double zero_tol = 1e-12 * l1;
  Eigen::ArrayXd m(kf.size());
  for (Index i = 0; i < kf.size(); ++i) {
    const double mag = std::abs(kf[i]);
    if (mag <= zero_tol) {
      m[i] = 0.0;
      continue;
    }
    const double k2 = mag * mag;
    m[i] = epsilon == 0.0 ? 1.0 : k2 / (k2 + epsilon * epsilon);
  }
  return m;
}

SignalD type2_apply(const SignalD& f, const KernelD& k, double epsilon) {
  Eigen::ArrayXcd a = dft(f);
  a *= type2_multiplier(k, f.extents(), epsilon).cast<Complex>();
  dft_lines(a, f.extents().n[0], f.extents().n[1], false);
  return SignalD(f.extents(), a.real());
}

void validate(const LayerSpec& spec) {
  std::visit(overloaded{
                 [](const layer::Type1&) {},
                 [](const layer::Type2& s) {
                   if (!std::isfinite(s.epsilon) || s.epsilon < 0)
                     throw std::invalid_argument("type2: epsilon must be finite and >= 0");
                 },
                 [](const layer::Type3&) {},
                 [](const layer::Cnn& s) {
                   require_stride(s.stride);
                   if (s.cfg.terms.empty()) throw std::invalid_argument("cnn: sigspec has no terms");
                 },
                 [](const layer::Apd& s) { require_stride(s.stride); },
                 [](const layer::Apmo& s) {
                   require_stride(s.stride);
                   if (s.items.empty()) throw std::invalid_argument("apmo: no items");
                 },
             },
             spec);
}

Index layer_stride(const LayerSpec& spec) {
  return std::visit(overloaded{
                        [](const layer::Cnn& s) { return s.stride; },
                        [](const layer::Apd& s) { return s.stride; },
                        [](const layer::Apmo& s) { return s.stride; },
                        [](const auto&) { return Index(1); },
                    },
                    spec);
}

SignalD layer_apply(const LayerSpec& spec, const SignalD& f) {
  validate(spec);
  return std::visit(overloaded{
                        [&](const layer::Type1& s) { return open(f, s.b); },
                        [&](const layer::Type2& s) { return type2_apply(f, s.k, s.epsilon); },
                        [&](const layer::Type3& s) { return med_open(f, s.w); },
                        [&](const layer::Cnn& s) { return apd(sigspec(f, s.cfg), s.stride, s.alpha); },
                        [&](const layer::Apd& s) { return apd(f, s.stride, s.alpha); },
                        [&](const layer::Apmo& s) { return apmo_apply(f, s.items, s.stride); },
                    },
                    spec);
}

double idempotency_defect(const LayerSpec& spec, const SignalD& f) {
  const Index r = layer_stride(spec);
  const SignalD once = layer_apply(spec, f);
  const SignalD twice = layer_apply(spec, once);
  return sup_distance(twice, r > 1 ? maxpool(once, r) : once);
}

SignalD bias_layer_apply(const SF& b, double alpha, const SignalD& f) {
  if (!all_finite(f)) throw std::invalid_argument("bias_layer_apply: samples must be finite");
  return dilate(erode(f, b) + alpha, b);
}

IterationTrace iterate(const Operator& gamma, const SignalD& f, int n_max, IterMode mode) {
  if (n_max < 0) throw std::invalid_argument("iterate: n_max must be >= 0");
  if (mode == IterMode::naive_residual) {
    if (!(f.array() >= 0.0).all()) throw std::invalid_argument("iterate: naive residual mode needs f >= 0");
    if (!pointwise_leq(gamma(f), f)) throw std::invalid_argument("iterate: operator is not anti-extensive at f");
  }
  IterationTrace t;
  t.mode = mode;
  t.iterates.push_back(f);
  for (int n = 1; n <= n_max; ++n) {
    const SignalD& prev = t.iterates.back();
    SignalD next = gamma(prev);
    if (mode == IterMode::naive_residual) next = next + prev;
    if (!t.stabilised_at && next == prev) t.stabilised_at = std::size_t(n - 1);
    t.iterates.push_back(std::move(next));
  }
  return t;
}

IterationTrace iterate(const LayerSpec& spec, const SignalD& f, int n_max, IterMode mode) {
  if (layer_stride(spec) != 1) throw std::invalid_argument("iterate: layer must preserve the grid");
  return iterate([&](const SignalD& g) { return layer_apply(spec, g); }, f, n_max, mode);
}

ResnetOutput resnet_block(const SF& b, const SignalD& f) {
  if (!all_finite(f)) throw std::invalid_argument("resnet_block: samples must be finite");
  const SignalD o = open(f, b);
  const SignalD residual = o - f;
  return {residual + f, f - o};
}

// JSON

namespace {

nlohmann::json point_json(Point p, bool two_d) {
  return two_d ? nlohmann::json::array({p[0], p[1]}) : nlohmann::json(p[0]);
}

Point point_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return {j.get<Index>(), 0};
  if (j.is_array() && j.size() == 1) return {j[0].get<Index>(), 0};
  if (j.is_array() && j.size() == 2) return {j[0].get<Index>(), j[1].get<Index>()};
  throw std::invalid_argument("json: offset must be an integer or [row, col]");
}

template <typename Entries>
bool any_two_d(const Entries& e) {
  for (const auto& [p, v] : e)
    if (p[1] != 0) return true;
  return false;
}

std::vector<Point> offsets_from_json(const nlohmann::json& j) {
  if (!j.contains("offsets") || !j.at("offsets").is_array()) throw std::invalid_argument("json: missing offsets");
  std::vector<Point> o;
  for (const auto& e : j.at("offsets")) o.push_back(point_from_json(e));
  return o;
}

std::vector<double> numbers_from_json(const nlohmann::json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j.at(key).is_array()) throw std::invalid_argument(std::string("json: missing ") + key);
  auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != n) throw std::invalid_argument(std::string("json: ") + key + " length does not match offsets");
  return v;
}

}  // namespace

nlohmann::json to_json(const SF& b) {
  nlohmann::json j;
  const bool two_d = any_two_d(b.entries());
  for (const auto& [p, v] : b.entries()) {
    j["offsets"].push_back(point_json(p, two_d));
    j["values"].push_back(v);
  }
  return j;
}

nlohmann::json to_json(const KernelD& k) {
  nlohmann::json j;
  const bool two_d = any_two_d(k.entries());
  for (const auto& [p, w] : k.entries()) {
    j["offsets"].push_back(point_json(p, two_d));
    j["weights"].push_back(w);
  }
  return j;
}

nlohmann::json to_json(const Window& w) {
  nlohmann::json j;
  bool two_d = false;
  for (const auto& p : w.offsets()) two_d = two_d || p[1] != 0;
  for (const auto& p : w.offsets()) j["offsets"].push_back(point_json(p, two_d));
  return j;
}

nlohmann::json to_json(const LayerSpec& spec) {
  return std::visit(overloaded{
                        [](const layer::Type1& s) { return nlohmann::json{{"kind", "type1"}, {"b", to_json(s.b)}}; },
                        [](const layer::Type2& s) {
                          return nlohmann::json{{"kind", "type2"}, {"kernel", to_json(s.k)}, {"epsilon", s.epsilon}};
                        },
                        [](const layer::Type3& s) { return nlohmann::json{{"kind", "type3"}, {"window", to_json(s.w)}}; },
                        [](const layer::Cnn& s) {
                          nlohmann::json terms = nlohmann::json::array();
                          for (const auto& [w, k] : s.cfg.terms) terms.push_back({{"weight", w}, {"kernel", to_json(k)}});
                          return nlohmann::json{{"kind", "cnn"}, {"terms", terms}, {"stride", s.stride}, {"alpha", s.alpha}};
                        },
                        [](const layer::Apd& s) {
                          return nlohmann::json{{"kind", "apd"}, {"stride", s.stride}, {"alpha", s.alpha}};
                        },
                        [](const layer::Apmo& s) {
                          nlohmann::json items = nlohmann::json::array();
                          for (const auto& [b, a] : s.items) items.push_back({{"b", to_json(b)}, {"alpha", a}});
                          return nlohmann::json{{"kind", "apmo"}, {"items", items}, {"stride", s.stride}};
                        },
                    },
                    spec);
}

SF structuring_from_json(const nlohmann::json& j) {
  const auto o = offsets_from_json(j);
  const auto v = numbers_from_json(j, "values", o.size());
  std::vector<SF::Entry> e;
  for (std::size_t i = 0; i < o.size(); ++i) e.emplace_back(o[i], v[i]);
  return SF(std::move(e));
}

KernelD kernel_from_json(const nlohmann::json& j) {
  const auto o = offsets_from_json(j);
  const auto v = numbers_from_json(j, "weights", o.size());
  std::vector<KernelD::Entry> e;
  for (std::size_t i = 0; i < o.size(); ++i) e.emplace_back(o[i], v[i]);
  return KernelD(std::move(e));
}

Window window_from_json(const nlohmann::json& j) { return Window(offsets_from_json(j)); }

LayerSpec layer_spec_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    LayerSpec spec = [&]() -> LayerSpec {
      if (kind == "type1") return layer::Type1{structuring_from_json(j.at("b"))};
      if (kind == "type2") return layer::Type2{kernel_from_json(j.at("kernel")), j.value("epsilon", 0.0)};
      if (kind == "type3") return layer::Type3{window_from_json(j.at("window"))};
      if (kind == "cnn") {
        SigSpecConfig<double> cfg;
        for (const auto& t : j.at("terms")) cfg.terms.emplace_back(t.at("weight").get<double>(), kernel_from_json(t.at("kernel")));
        return layer::Cnn{cfg, j.value("stride", Index(2)), j.value("alpha", 0.0)};
      }
      if (kind == "apd") return layer::Apd{j.value("stride", Index(2)), j.value("alpha", 0.0)};
      if (kind == "apmo") {
        layer::Apmo s;
        for (const auto& it : j.at("items")) s.items.emplace_back(structuring_from_json(it.at("b")), it.value("alpha", 0.0));
        s.stride = j.value("stride", Index(1));
        return s;
      }
      throw std::invalid_argument("layer spec: unknown kind '" + kind + "'");
    }();
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("layer spec: ") + e.what());
  }
}

}  // namespace latmorph
