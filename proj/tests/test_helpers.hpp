#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <functional>
#include <random>

#include "cdv/generators.hpp"
#include "cdv/polytope.hpp"

namespace cdvtest {

using cdv::HPolytope;
using cdv::Mat;
using cdv::Vec;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Mat rows(std::initializer_list<std::initializer_list<double>> rs) {
  const int n = static_cast<int>(rs.size());
  const int d = static_cast<int>(rs.begin()->size());
  Mat m(n, d);
  int i = 0;
  for (const auto& r : rs) {
    int j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

/// Monte-Carlo volume estimate by rejection sampling in the bounding box.
/// Returns (estimate, standard error).
inline std::pair<double, double> monte_carlo_volume(const HPolytope& P, int samples,
                                                    std::uint64_t seed) {
  const int d = P.dim;
  Vec lo = Vec::Constant(d, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (const auto& v : P.lattice.vertices) {
    lo = lo.cwiseMin(v.point);
    hi = hi.cwiseMax(v.point);
  }
  double boxVol = 1.0;
  for (int a = 0; a < d; ++a) boxVol *= hi[a] - lo[a];
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    Vec p(d);
    for (int a = 0; a < d; ++a) p[a] = lo[a] + (hi[a] - lo[a]) * uni(rng);
    bool inside = true;
    for (int i = 0; i < P.facetCount() && inside; ++i)
      inside = P.normals.row(i).dot(p) <= P.support[i];
    if (inside) ++hits;
  }
  const double frac = static_cast<double>(hits) / samples;
  const double est = frac * boxVol;
  const double se = boxVol * std::sqrt(frac * (1.0 - frac) / samples);
  return {est, se};
}

}  // namespace cdvtest
