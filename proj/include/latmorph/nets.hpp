#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latmorph/layers.hpp"

namespace latmorph {

enum class SkipMode { none, tophat };
enum class LatticeKind { maxplus, median };

struct UNetConfig {
  int levels = 1;
  /// One structuring function per level; a single entry is reused at every level.
  std::vector<SF> b;
  Index stride = 2;
  SkipMode skip = SkipMode::none;
  LatticeKind lattice = LatticeKind::maxplus;
  /// Optional encoder pre-filter per level (identity when absent).
  std::vector<std::optional<SigSpecConfig<double>>> sigspec;
  /// Optional decoder filter per level, applied after upsampling.
  std::vector<std::optional<SigSpecConfig<double>>> sigspec_dual;
  /// Throw instead of stopping early when an extent is not divisible by R.
  bool strict = false;

  const SF& level_b(int level) const;
  void validate() const;
};

struct UNetTrace {
  /// encoder[0] = input, encoder[l] = coarse signal at level l.
  std::vector<SignalD> encoder;
  /// decoder[l] = reconstruction at level l; decoder[0] is the output.
  std::vector<SignalD> decoder;
  /// skips[l-1] belongs to level l (zero when skip mode is none).
  std::vector<SignalD> skips;
  SignalD output;
  int levels_used = 0;
};

UNetTrace unet_forward(const UNetConfig& cfg, const SignalD& f);

/// Applies the network twice and compares with once. Requires skip none.
bool skeleton_idempotency_check(const UNetConfig& cfg, const SignalD& f);

/// Random integer signals of length `length` in [-5,5]; returns the first
/// input whose network output is not a fixed point.
std::optional<SignalD> find_idempotency_counterexample(const UNetConfig& cfg, Index length, std::uint64_t seed,
                                                       int trials);

/// Writes encoder, skip and decoder signals as a manifest directory.
void export_trace(const UNetTrace& t, const std::filesystem::path& dir, const nlohmann::json& extra = {});

}  // namespace latmorph
