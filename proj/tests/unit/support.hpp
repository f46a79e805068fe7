#pragma once

#include <cstdint>
#include <numeric>
#include <random>

#include "torus_jscc/torus.hpp"

namespace test_support {

using torus_jscc::IntVec;
using torus_jscc::Vec;

inline Vec random_unit_positive(std::mt19937_64& rng, int n, double lo = 0.2, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec c(n);
  for (int i = 0; i < n; ++i) c(i) = d(rng);
  return c / c.norm();
}

inline IntVec random_primitive(std::mt19937_64& rng, int n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    IntVec u(n);
    std::int64_t g = 0;
    for (auto& e : u) {
      e = d(rng);
      g = std::gcd(g, e < 0 ? -e : e);
    }
    if (g == 1) return u;
  }
}

inline Vec random_box_point(std::mt19937_64& rng, const torus_jscc::TorusSpec& t) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const Vec p = t.box_periods();
  Vec u(t.dim());
  for (int i = 0; i < t.dim(); ++i) u(i) = d(rng) * p(i);
  return u;
}

}  // namespace test_support
