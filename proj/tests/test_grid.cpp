#include "test_util.hpp"

using namespace testutil;

TEST_CASE("make_signal round-trips 1-D and row-major 2-D samples") {
  const std::vector<Index> e1{3};
  const std::vector<double> s1{3, 1, 2};
  CHECK(make_signal<double>(1, e1, s1) == L({3, 1, 2}));

  const std::vector<Index> e2{2, 2};
  const std::vector<double> s2{1, 2, 3, 4};
  const SignalD f = make_signal<double>(2, e2, s2);
  CHECK(f(Point{0, 1}) == 2);
  CHECK(f(Point{1, 0}) == 3);

  const std::vector<Index> bad{2};
  const std::vector<double> one{3};
  CHECK_THROWS_AS(make_signal<double>(1, bad, one), std::invalid_argument);
}

TEST_CASE("extents reject non-positive sizes and unsupported dims") {
  CHECK_THROWS_AS(Extents::line(0), std::invalid_argument);
  CHECK_THROWS_AS(Extents::checked(3, {1, 1}), std::invalid_argument);
  const Extents e = Extents::image(2, 3);
  CHECK(e.size() == 6);
  CHECK(e.point(e.linear({1, 2})) == Point{1, 2});
}

TEST_CASE("pointwise order") {
  CHECK(pointwise_leq(L({1, 1, 2}), L({3, 1, 2})));
  CHECK_FALSE(pointwise_leq(L({3, 1, 2}), L({1, 1, 2})));
  CHECK(pointwise_leq(L({-inf, 0}), L({0, 0})));
  CHECK_THROWS_AS(pointwise_leq(L({1}), L({1, 2})), std::invalid_argument);
}

TEST_CASE("median order compares amplitudes of same-sign values") {
  CHECK(median_leq(L({1, -2}), L({3, -5})));
  CHECK_FALSE(median_leq(L({1}), L({-1})));
  CHECK(median_leq(L({0, 0}), L({7, -7})));
  CHECK_FALSE(median_leq(L({2}), L({1})));
}

TEST_CASE("negation swaps top and bottom") {
  CHECK(negate(L({1, -2, 0})) == L({-1, 2, 0}));
  CHECK(negate(L({-inf})) == L({inf}));
}

TEST_CASE("window and structuring function invariants") {
  CHECK_THROWS_AS(Window(std::vector<Point>{}), std::invalid_argument);
  CHECK_THROWS_AS(Window(std::vector<Point>{{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK(Window::box(2, 2).offsets().size() == 4);
  const SF b = SF::line(-1, {1, 0, 2});
  CHECK(b.at({0, 0}) == 0);
  CHECK(b.at({5, 0}) == -inf);
  CHECK(b.reflected().at({1, 0}) == 1);
  CHECK_FALSE(b.is_flat());
  CHECK_THROWS_AS(SF(std::vector<SF::Entry>{{{0, 0}, inf}}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet<double>({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet<double>({1.0, 1.0}), std::invalid_argument);
}
