#include "test_util.hpp"

#include <filesystem>
#include <fstream>

using namespace testutil;

namespace {

UNetConfig config(int levels, SF b, SkipMode skip, LatticeKind lattice = LatticeKind::maxplus) {
  UNetConfig c;
  c.levels = levels;
  c.b = {std::move(b)};
  c.skip = skip;
  c.lattice = lattice;
  return c;
}

}  // namespace

TEST_CASE("one level with top-hat skip reconstructs the input") {
  const SignalD f = L({3, -1, 4, 1, -5, 9});
  const auto t = unet_forward(config(1, SF::line(0, {1, 0}), SkipMode::tophat), f);
  CHECK(t.output == f);
  CHECK(t.levels_used == 1);
  CHECK(t.encoder[1].size() == 3);
}

TEST_CASE("skeleton without skips is the pyramid opening") {
  const SF b = SF::flat(Window::range(0, 1));
  const SignalD f = L({3, 1, 2, 4});
  const auto t = unet_forward(config(1, b, SkipMode::none), f);
  CHECK(t.output == gh_synthesis(gh_analysis(f, b, 2), b, 2, f.extents()));
  CHECK(pointwise_leq(t.output, f));
}

TEST_CASE("skeleton idempotency and anti-extensivity") {
  Gen gen(41);
  for (int t = 0; t < 100; ++t) {
    const int levels = gen.i(1, 3);
    const SignalD f = gen.line((Index(1) << levels) * gen.i(1, 2));
    const auto lattice = t % 2 ? LatticeKind::median : LatticeKind::maxplus;
    const auto cfg = config(levels, gen.sf(lattice == LatticeKind::median), SkipMode::none, lattice);
    CHECK(skeleton_idempotency_check(cfg, f));
    const SignalD out = unet_forward(cfg, f).output;
    if (lattice == LatticeKind::median) {
      CHECK(median_leq(out, f));
      CHECK(unet_forward(cfg, negate(f)).output == negate(out));
    } else {
      CHECK(pointwise_leq(out, f));
    }
  }
}

TEST_CASE("zero levels is the identity") {
  UNetConfig cfg;
  cfg.levels = 0;
  const SignalD f = L({1, 2, 3});
  CHECK(unet_forward(cfg, f).output == f);
  CHECK(skeleton_idempotency_check(cfg, f));
}

TEST_CASE("2-D top-hat reconstruction") {
  Gen gen(42);
  const SignalD img = gen.image(8, 8);
  const auto cfg = config(3, SF::flat(Window::box(2, 2)), SkipMode::tophat);
  const auto t = unet_forward(cfg, img);
  CHECK(t.output == img);
  CHECK(t.encoder.back().extents().n == Point{1, 1});
}

TEST_CASE("odd extents stop the descent unless strict") {
  auto cfg = config(3, SF::flat(Window::range(0, 1)), SkipMode::tophat);
  const SignalD f = L({1, 2, 3, 4, 5, 6});
  const auto t = unet_forward(cfg, f);
  CHECK(t.levels_used == 1);
  CHECK(t.output == f);
  cfg.strict = true;
  CHECK_THROWS_AS(unet_forward(cfg, f), std::invalid_argument);
}

TEST_CASE("top-hat skips need the structuring support to cover each pooling window") {
  const auto cfg = config(1, SF::point(0.0), SkipMode::tophat);
  CHECK_THROWS_AS(unet_forward(cfg, L({1, 2, 3, 4})), std::invalid_argument);
}

TEST_CASE("a linear pre-filter breaks idempotency") {
  auto cfg = config(1, SF::flat(Window::range(0, 1)), SkipMode::none);
  cfg.sigspec = {SigSpecConfig<double>{{{1.0, KernelD::line({0.5, 0.5})}}, 0.0}};
  CHECK(find_idempotency_counterexample(cfg, 8, 5, 200).has_value());
  cfg.sigspec = {SigSpecConfig<double>::identity()};
  CHECK_FALSE(find_idempotency_counterexample(cfg, 8, 5, 50).has_value());
}

TEST_CASE("configuration validation") {
  UNetConfig cfg;
  cfg.levels = 2;
  CHECK_THROWS_AS(unet_forward(cfg, L({1, 2, 3, 4})), std::invalid_argument);
  cfg.b = {SF::point(), SF::point(), SF::point()};
  CHECK_THROWS_AS(unet_forward(cfg, L({1, 2, 3, 4})), std::invalid_argument);
}

TEST_CASE("trace export writes a manifest") {
  const auto dir = std::filesystem::temp_directory_path() / "latmorph_nets_export";
  std::filesystem::remove_all(dir);
  const auto t = unet_forward(config(2, SF::flat(Window::range(0, 1)), SkipMode::tophat), L({4, 1, 3, 2}));
  export_trace(t, dir, {{"note", "unit"}});
  std::ifstream in(dir / "manifest.json");
  const auto m = nlohmann::json::parse(in);
  CHECK(m["levels_used"] == 2);
  CHECK(m["note"] == "unit");
  CHECK(std::filesystem::exists(dir / "output.txt"));
  CHECK(read_signal_file(dir / "output.txt") == L({4, 1, 3, 2}));
  std::filesystem::remove_all(dir);
}
