#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "latmorph/activations.hpp"
#include "latmorph/median.hpp"

namespace latmorph {

using SF = StructuringFunction<double>;
using KernelD = Kernel<double>;

namespace layer {
struct Type1 {
  SF b;
};
struct Type2 {
  KernelD k;
  double epsilon = 0.0;
};
struct Type3 {
  Window w;
};
struct Cnn {
  SigSpecConfig<double> cfg;
  Index stride = 2;
  double alpha = 0.0;
};
struct Apd {
  Index stride = 2;
  double alpha = 0.0;
};
struct Apmo {
  std::vector<std::pair<SF, double>> items;
  Index stride = 1;
};
}  // namespace layer

using LayerSpec = std::variant<layer::Type1, layer::Type2, layer::Type3, layer::Cnn, layer::Apd, layer::Apmo>;

/// Validates parameters; throws std::invalid_argument.
void validate(const LayerSpec& spec);

SignalD layer_apply(const LayerSpec& spec, const SignalD& f);

/// Stride of the layer's pooling stage (1 for shape-preserving layers).
Index layer_stride(const LayerSpec& spec);

/// Circular-DFT multiplier |K|^2 / (|K|^2 + eps^2) on the grid `ext`, with
/// 0/0 taken as 0. Row-major over DFT bins.
Eigen::ArrayXd type2_multiplier(const KernelD& k, const Extents& ext, double epsilon);

/// Inverse DFT of M * DFT(f).
SignalD type2_apply(const SignalD& f, const KernelD& k, double epsilon);

/// Forward circular DFT of a real signal (unnormalised), row-major bins.
Eigen::ArrayXcd dft(const SignalD& f);

/// Sup-norm distance between two applications and one. Shrinking layers
/// compare the second output with maxpool_R of the first.
double idempotency_defect(const LayerSpec& spec, const SignalD& f);

/// dilate(erode(f, b) + alpha, b).
SignalD bias_layer_apply(const SF& b, double alpha, const SignalD& f);

enum class IterMode { opening, naive_residual };

struct IterationTrace {
  std::vector<SignalD> iterates;
  /// Smallest n with iterates[n+1] == iterates[n].
  std::optional<std::size_t> stabilised_at;
  IterMode mode = IterMode::opening;
};

using Operator = std::function<SignalD(const SignalD&)>;

/// opening: f(n) = gamma(f(n-1)); naive_residual: f(n) = gamma(f(n-1)) + f(n-1).
IterationTrace iterate(const Operator& gamma, const SignalD& f, int n_max, IterMode mode);
IterationTrace iterate(const LayerSpec& spec, const SignalD& f, int n_max, IterMode mode);

struct ResnetOutput {
  SignalD block;
  SignalD tophat;
};

/// F(f) + f with F(f) = open(f,b) - f, plus the top-hat f - open(f,b).
ResnetOutput resnet_block(const SF& b, const SignalD& f);

// JSON forms used by the command line tool.
nlohmann::json to_json(const SF& b);
nlohmann::json to_json(const KernelD& k);
nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const LayerSpec& spec);
SF structuring_from_json(const nlohmann::json& j);
KernelD kernel_from_json(const nlohmann::json& j);
Window window_from_json(const nlohmann::json& j);
LayerSpec layer_spec_from_json(const nlohmann::json& j);

}  // namespace latmorph
