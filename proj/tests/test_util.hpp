#pragma once

#include <ostream>
#include <random>

#include <doctest.h>

#include "latmorph/io.hpp"
#include "latmorph/nets.hpp"
#include "oracles.hpp"

namespace latmorph {

inline std::ostream& operator<<(std::ostream& os, const SignalD& f) {
  return os << format_signal(f);
}

}  // namespace latmorph

namespace testutil {

using namespace latmorph;

constexpr double inf = std::numeric_limits<double>::infinity();

inline SignalD L(std::initializer_list<double> v) { return SignalD::line(v); }

/// Small deterministic generator for property tests.
struct Gen {
  std::mt19937_64 g;
  explicit Gen(std::uint64_t seed) : g(seed) {}
  int i(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
  SignalD line(Index len, int lo = -5, int hi = 5) {
    return SignalD::generate(Extents::line(len), [&](Point) { return double(i(lo, hi)); });
  }
  SignalD image(Index r, Index c, int lo = -5, int hi = 5) {
    return SignalD::generate(Extents::image(r, c), [&](Point) { return double(i(lo, hi)); });
  }
  SF sf(bool flat = false) {
    const int first = i(-1, 0), width = i(1, 3);
    std::vector<SF::Entry> e;
    for (int k = 0; k < width; ++k) e.emplace_back(Point{first + k, 0}, flat ? 0.0 : double(i(0, 2)));
    return SF(std::move(e));
  }
};

}  // namespace testutil
