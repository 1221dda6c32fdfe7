#include "test_util.hpp"

using namespace testutil;

TEST_CASE("parametric ReLU") {
  CHECK(relu_param(L({-3, 2}), 1.0, 0.0) == L({0, 2}));
  CHECK(nearly_equal(relu_param(L({-3, 2}), 1.0, 0.01), L({-0.03, 2})));
  CHECK(relu_param(L({-3, 2}), 1.0, 1.0) == L({-3, 2}));
  CHECK(relu(L({-1, 0, 4})) == L({0, 0, 4}));
}

TEST_CASE("upper adjoint of ReLU") {
  CHECK(relu_upper_adjoint(L({1, 2})) == L({1, 2}));
  CHECK(relu_upper_adjoint(L({1, -1})) == L({-inf, -inf}));
  CHECK(relu_upper_adjoint(L({0, 0})) == L({0, 0}));
}

TEST_CASE("activation then max pooling") {
  CHECK(apd(L({-1, 3, 2, -4}), 2, 0.0) == L({0, 3}));
  CHECK(apd(L({1, 0, 6}), 1, 0.0) == L({1, 0, 6}));
  CHECK(apd(L({-1, 3, 2, -4}), 2, -2.5) == L({0, 0.5}));
}

TEST_CASE("adjoint of the pooled activation") {
  CHECK(apd_adjoint(L({2, 5}), 2, 1.0, Extents::line(4)) == L({1, 4, 4, inf}));
  CHECK(apd_adjoint(L({2, -1}), 2, 1.0, Extents::line(4)) == L({-inf, -inf, -inf, -inf}));
  CHECK(apd_adjoint(L({2, 5}), 1, 0.0, Extents::line(2)) == L({2, 5}));
}

TEST_CASE("pooled activation Galois law, exhaustive on length 3") {
  const Extents fine = Extents::line(3);
  for (double alpha : {-1.0, 0.0, 2.0})
    oracle::for_each_signal(3, {-2, -1, 0, 1, 2}, [&](const SignalD& f) {
      oracle::for_each_signal(2, {-1, 0, 1, 3}, [&](const SignalD& g) {
        CHECK(pointwise_leq(apd(f, 2, alpha), g) == pointwise_leq(f, apd_adjoint(g, 2, alpha, fine)));
      });
    });
}

TEST_CASE("morphological activation") {
  const SignalD f = L({3, -2, 0});
  CHECK(morpho_activation<double>(f, {SF::point(0.0)}, SF::point(1e9)) == f);
  CHECK(morpho_activation<double>(f, {SF::point(0.0)}, SF::point(0.0)) == L({-3, -2, 0}));
  Gen gen(6);
  for (int t = 0; t < 100; ++t) {
    const SignalD g = gen.line(gen.i(1, 6));
    const std::vector<SF> basis{gen.sf(), gen.sf()};
    const SF cap = gen.sf();
    CHECK(morpho_activation(g, basis, cap) == morpho_activation_supgen(g, basis, cap));
  }
  CHECK_THROWS_AS(morpho_activation<double>(f, {}, SF::point(0.0)), std::invalid_argument);
}

TEST_CASE("weighted sum of convolutions") {
  const SignalD f = L({1, 4, -2});
  CHECK(sigspec(f, SigSpecConfig<double>::identity()) == f);
  const KernelD k = KernelD::line({0.5, 0.5});
  CHECK(sigspec(f, SigSpecConfig<double>{{{0.0, k}}, 0.0}) == L({0, 0, 0}));
  CHECK(sigspec(f, SigSpecConfig<double>{{{1.0, k}, {-1.0, k}}, 0.0}) == L({0, 0, 0}));
  CHECK_THROWS_AS(sigspec(f, SigSpecConfig<double>{}), std::invalid_argument);
}

TEST_CASE("lattice polynomials") {
  const auto relu_p = relu_lattice_poly<double>();
  CHECK(lattice_poly_eval(relu_p, {-2.0}) == 0.0);
  CHECK(lattice_poly_eval(relu_p, {3.5}) == 3.5);

  const LatticePolynomial<double> affine{{{{2.0, -1.0}, 0.5}}, {{0}}};
  CHECK(lattice_poly_eval(affine, {1.0, 4.0}) == -1.5);

  const LatticePolynomial<double> min_p{{{{1.0}, 0.0}, {{-1.0}, 0.0}}, {{0, 1}}};
  CHECK(lattice_poly_eval(min_p, {3.0}) == -3.0);

  CHECK_THROWS_AS(lattice_poly_eval(relu_p, {1.0, 2.0}), std::invalid_argument);
  const LatticePolynomial<double> bad{{{{1.0}, 0.0}}, {{3}}};
  CHECK_THROWS_AS(lattice_poly_eval(bad, {1.0}), std::invalid_argument);
}
