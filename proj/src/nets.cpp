#include "latmorph/nets.hpp"

#include <algorithm>
#include <random>

#include "latmorph/io.hpp"

namespace latmorph {

const SF& UNetConfig::level_b(int level) const {
  return b.size() == 1 ? b.front() : b.at(std::size_t(level - 1));
}

void UNetConfig::validate() const {
  if (levels < 0) throw std::invalid_argument("unet: levels must be >= 0");
  if (stride < 2) throw std::invalid_argument("unet: stride must be >= 2");
  if (levels > 0 && b.size() != 1 && b.size() != std::size_t(levels))
    throw std::invalid_argument("unet: need one structuring function or one per level");
  if (!sigspec.empty() && sigspec.size() != std::size_t(levels))
    throw std::invalid_argument("unet: sigspec list must have one entry per level");
  if (!sigspec_dual.empty() && sigspec_dual.size() != std::size_t(levels))
    throw std::invalid_argument("unet: sigspec_dual list must have one entry per level");
}

namespace {

SignalD apply_optional(const std::optional<SigSpecConfig<double>>& cfg, const SignalD& f) {
  return cfg ? sigspec(f, *cfg) : f;
}

const std::optional<SigSpecConfig<double>>& entry(const std::vector<std::optional<SigSpecConfig<double>>>& v, int l) {
  static const std::optional<SigSpecConfig<double>> none;
  return v.empty() ? none : v[std::size_t(l - 1)];
}

SignalD analysis(const UNetConfig& cfg, int l, const SignalD& f) {
  if (cfg.lattice == LatticeKind::median) return resample_down(med_erode(f, cfg.level_b(l).support()), cfg.stride);
  return gh_analysis(f, cfg.level_b(l), cfg.stride);
}

SignalD synthesis(const UNetConfig& cfg, int l, const SignalD& g, const Extents& fine) {
  if (cfg.lattice == LatticeKind::median)
    return med_dilate(resample_up(g, cfg.stride, fine, 0.0), cfg.level_b(l).support());
  return gh_synthesis(g, cfg.level_b(l), cfg.stride, fine);
}

bool divisible(const Extents& e, Index r) { return e.n[0] % r == 0 && (e.dims == 1 || e.n[1] % r == 0); }

void require_coverage(const UNetConfig& cfg, int l, int dims) {
  if (cfg.skip != SkipMode::tophat || cfg.lattice != LatticeKind::maxplus) return;
  const Window w = cfg.level_b(l).support();
  for_each_window_offset(dims, cfg.stride, [&](Point y) {
    if (!w.contains(y)) throw std::invalid_argument("unet: tophat skips need supp(b) to contain {0..R-1}^d");
  });
}

}  // namespace

UNetTrace unet_forward(const UNetConfig& cfg, const SignalD& f) {
  cfg.validate();
  // Extended values are fine for the plain max-plus skeleton; the residual
  // skip and linear pre-filters need finite samples.
  const bool linear_stage = std::any_of(cfg.sigspec.begin(), cfg.sigspec.end(), [](const auto& c) { return c.has_value(); }) ||
                            std::any_of(cfg.sigspec_dual.begin(), cfg.sigspec_dual.end(), [](const auto& c) { return c.has_value(); });
  if ((cfg.skip == SkipMode::tophat || linear_stage) && !all_finite(f))
    throw std::invalid_argument("unet: samples must be finite");
  UNetTrace t;
  t.encoder.push_back(f);
  std::vector<SignalD> inputs;  // encoder input at each level after the pre-filter
  for (int l = 1; l <= cfg.levels; ++l) {
    const SignalD& prev = t.encoder.back();
    if (!divisible(prev.extents(), cfg.stride)) {
      if (cfg.strict) throw std::invalid_argument("unet: extents not divisible by the stride");
      break;
    }
    require_coverage(cfg, l, f.dims());
    SignalD in = apply_optional(entry(cfg.sigspec, l), prev);
    SignalD coarse = analysis(cfg, l, in);
    if (cfg.skip == SkipMode::tophat)
      t.skips.push_back(in - synthesis(cfg, l, coarse, in.extents()));
    else
      t.skips.push_back(SignalD::constant(in.extents(), 0.0));
    inputs.push_back(std::move(in));
    t.encoder.push_back(std::move(coarse));
  }
  t.levels_used = int(inputs.size());

  t.decoder.assign(std::size_t(t.levels_used + 1), SignalD());
  t.decoder[std::size_t(t.levels_used)] = t.encoder.back();
  for (int l = t.levels_used; l >= 1; --l) {
    const SignalD g = apply_optional(entry(cfg.sigspec_dual, l), t.decoder[std::size_t(l)]);
    SignalD up = synthesis(cfg, l, g, inputs[std::size_t(l - 1)].extents());
    t.decoder[std::size_t(l - 1)] = cfg.skip == SkipMode::tophat ? up + t.skips[std::size_t(l - 1)] : up;
  }
  t.output = t.decoder.front();
  return t;
}

bool skeleton_idempotency_check(const UNetConfig& cfg, const SignalD& f) {
  if (cfg.skip != SkipMode::none) throw std::invalid_argument("skeleton_idempotency_check: skip mode must be none");
  const SignalD once = unet_forward(cfg, f).output;
  return unet_forward(cfg, once).output == once;
}

std::optional<SignalD> find_idempotency_counterexample(const UNetConfig& cfg, Index length, std::uint64_t seed,
                                                       int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int t = 0; t < trials; ++t) {
    const SignalD f = SignalD::generate(Extents::line(length), [&](Point) { return double(val(rng)); });
    const SignalD once = unet_forward(cfg, f).output;
    const SignalD twice = unet_forward(cfg, once).output;
    if (!nearly_equal(once, twice)) return f;
  }
  return std::nullopt;
}

void export_trace(const UNetTrace& t, const std::filesystem::path& dir, const nlohmann::json& extra) {
  std::vector<std::pair<std::string, SignalD>> s;
  for (std::size_t l = 0; l < t.encoder.size(); ++l) s.emplace_back("encoder_" + std::to_string(l), t.encoder[l]);
  for (std::size_t l = 0; l < t.skips.size(); ++l) s.emplace_back("skip_" + std::to_string(l + 1), t.skips[l]);
  for (std::size_t l = 0; l < t.decoder.size(); ++l) s.emplace_back("decoder_" + std::to_string(l), t.decoder[l]);
  s.emplace_back("output", t.output);
  nlohmann::json meta = extra.is_object() ? extra : nlohmann::json::object();
  meta["levels_used"] = t.levels_used;
  write_manifest(dir, s, meta);
}

}  // namespace latmorph
