#include "test_util.hpp"

using namespace testutil;

TEST_CASE("resampling") {
  CHECK(resample_down(L({3, 1, 2, 4}), 2) == L({3, 2}));
  CHECK(resample_up(L({1, 2}), 2, -inf) == L({1, -inf, 2, -inf}));
  CHECK(resample(L({1, 2}), 2, ResampleMode::up, 0.0) == L({1, 0, 2, 0}));
  CHECK(resample_down(L({1, 2, 3}), 2) == L({1, 3}));
  CHECK_THROWS_AS(resample_down(L({1}), 0), std::invalid_argument);
}

TEST_CASE("opening pyramid example") {
  const SF b = SF::flat(Window::range(0, 1));
  const SignalD f = L({3, 1, 2, 4});
  const SignalD a = gh_analysis(f, b, 2);
  CHECK(a == L({1, 2}));
  const SignalD s = gh_synthesis(a, b, 2, f.extents());
  CHECK(s == L({1, 1, 2, 2}));
  CHECK(pointwise_leq(s, f));
}

TEST_CASE("closing pyramid is the negation dual with the reflected b") {
  Gen gen(8);
  for (int t = 0; t < 200; ++t) {
    const SignalD f = gen.line(gen.i(2, 8));
    const SF b = gen.sf();
    const SignalD cl = heijmans_synthesis(heijmans_analysis(f, b, 2), b, 2, f.extents());
    const SF br = b.reflected();
    CHECK(cl == negate(gh_synthesis(gh_analysis(negate(f), br, 2), br, 2, f.extents())));
    CHECK(pointwise_leq(f, cl));
  }
}

TEST_CASE("max pooling") {
  CHECK(maxpool(L({3, 1, 2, 4}), 2) == L({3, 2}));
  CHECK(maxpool(L({3, 1, 2, 4}), 1) == L({3, 1, 2, 4}));
  CHECK(maxpool(L({5, 5, 5, 5, 5}), 2) == L({5, 5, 5}));
  Gen gen(2);
  for (int t = 0; t < 200; ++t) {
    const SignalD f = t % 2 ? gen.image(gen.i(1, 5), gen.i(1, 5)) : gen.line(gen.i(1, 9));
    const Index r = gen.i(1, 3);
    CHECK(maxpool(f, r) == oracle::maxpool(f, r));
    CHECK(maxpool(f, r) == heijmans_analysis(f, SF::flat(Window::box(r, f.dims())), r));
  }
}

TEST_CASE("replication adjoint of max pooling") {
  const SignalD adj = maxpool_adjoint(L({3, 2}), 2, Extents::line(4));
  CHECK(adj == L({3, 2, 2, inf}));
  CHECK(maxpool_adjoint(L({3, 2}), 1, Extents::line(2)) == L({3, 2}));
  CHECK_THROWS_AS(maxpool_adjoint(L({3, 2}), 2, Extents::line(6)), std::invalid_argument);

  // Galois law on small 2-D grids.
  const Extents fine = Extents::image(3, 2);
  const std::vector<double> vals{0, 1};
  std::size_t checked = 0;
  oracle::for_each_signal(6, vals, [&](const SignalD& fl) {
    const SignalD f(fine, fl.array());
    oracle::for_each_signal(2, vals, [&](const SignalD& gl) {
      const SignalD g(coarse_extents(fine, 2), gl.array());
      CHECK(pointwise_leq(maxpool(f, 2), g) == pointwise_leq(f, maxpool_adjoint(g, 2, fine)));
      ++checked;
    });
  });
  CHECK(checked == 256);
}

TEST_CASE("strided convolution") {
  const KernelD avg = KernelD::line({0.5, 0.5});
  CHECK(strided_conv(L({1, 0, 1, 0}), avg, 2) == L({0.5, 0.5}));
  CHECK(strided_conv(L({4, 3, 2, 1}), KernelD::identity(), 2) == L({4, 2}));
  CHECK(strided_conv(L({4, 3, 2}), avg, 1) == conv_direct(L({4, 3, 2}), avg));
}

TEST_CASE("folded kernel") {
  const auto k = aliased_kernel(KernelD::line({1, 2, 3, 4}), 2);
  CHECK(k.entries() == std::vector<KernelD::Entry>{{{0, 0}, 4.0}, {{1, 0}, 6.0}});
  const KernelD two = KernelD::line({5, 7});
  CHECK(aliased_kernel(two, 3).entries() == two.entries());
}

TEST_CASE("subsampled convolution in polyphase form, exact over rationals") {
  Gen gen(17);
  for (int t = 0; t < 100; ++t) {
    const Index r = gen.i(2, 3), len = r * gen.i(1, 4);
    const auto f = Signal<Rational>::generate(Extents::line(len), [&](Point) { return Rational(gen.i(-5, 5), gen.i(1, 3)); });
    std::vector<Rational> w;
    for (int i = 0, n = gen.i(1, 5); i < n; ++i) w.emplace_back(gen.i(-4, 4), gen.i(1, 4));
    if (std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == Rational(0); })) w[0] = Rational(1);
    const auto k = Kernel<Rational>::line(w, gen.i(-2, 2));
    CHECK(resample_down(conv_circular(f, k), r) == polyphase_subsampled_conv(f, k, r));
    const auto h = Kernel<Rational>::line({Rational(gen.i(1, 3)), Rational(-1, 2)}, gen.i(-1, 1));
    CHECK(resample_down(conv_circular(f, upsample_kernel(h, r)), r) == conv_circular(resample_down(f, r), h));
  }
}

TEST_CASE("folding the kernel alone does not commute with subsampling") {
  const auto f = Signal<Rational>::line({1, 0, 0, 0});
  const auto k = Kernel<Rational>::line({Rational(1)}, 1);
  CHECK(resample_down(conv_circular(f, k), 2) == Signal<Rational>::line({0, 0}));
  CHECK(conv_circular(resample_down(f, 2), aliased_kernel(k, 2)) == Signal<Rational>::line({0, 1}));
}

TEST_CASE("Laplacian pyramid") {
  const SignalD flat = SignalD::constant(Extents::line(16), 3.0);
  const auto lv = laplacian_pyramid(flat, binomial_kernel<double>(), 3);
  REQUIRE(lv.size() == 3);
  CHECK(lv[0].detail.size() == 16);
  CHECK(lv[2].approximation.size() == 2);
  for (Index i = 3; i < 15; ++i) CHECK(std::abs(lv[0].detail[i]) < 1e-12);

  Gen gen(4);
  const SignalD f = gen.line(8);
  CHECK(sup_distance(laplacian_reconstruct(laplacian_pyramid(f, binomial_kernel<double>(), 2), binomial_kernel<double>()), f) < 1e-12);

  const auto fr = Signal<Rational>::line({3, -1, 4, 1, -5, 9, 2, 6});
  const auto kr = binomial_kernel<Rational>();
  CHECK(laplacian_reconstruct(laplacian_pyramid(fr, kr, 3), kr) == fr);

  CHECK_THROWS_AS(laplacian_pyramid(f, binomial_kernel<double>(), 4), std::invalid_argument);
  CHECK_THROWS_AS(laplacian_pyramid(f, KernelD::line({1, 1}), 1), std::invalid_argument);
}

TEST_CASE("morphological skeleton") {
  const Window w = Window::range(0, 1);
  const auto parts = skeleton_decompose(L({2, 2, 2}), w, 3);
  REQUIRE(parts.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK(parts[std::size_t(i)] == L({0, 0, 0}));
  CHECK(parts[3] == L({2, 2, 2}));
  CHECK(skeleton_reconstruct(parts, w) == L({2, 2, 2}));

  Gen gen(9);
  for (int t = 0; t < 200; ++t) {
    const SignalD f = gen.line(gen.i(1, 8), 0, 6);
    CHECK(skeleton_reconstruct(skeleton_decompose(f, w, gen.i(0, 8)), w) == f);
    const SignalD bin = gen.line(gen.i(1, 8), 0, 1);
    CHECK(skeleton_reconstruct_union(skeleton_decompose(bin, w, int(bin.size())), w) == bin);
  }

  const SignalD grey = L({3, 3, 3, 3, 3, 2});
  CHECK(skeleton_reconstruct_union(skeleton_decompose(grey, w, 6), w) == L({2, 2, 2, 2, 2, 2}));
}
