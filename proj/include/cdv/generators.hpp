#pragma once

#include <cstdint>
#include <random>

#include "cdv/polytope.hpp"

namespace cdv {

/// [-1,1]^d scaled per axis: normals (+e_1, -e_1, ..., +e_d, -e_d), support
/// (s_1, s_1, ..., s_d, s_d).
inline HPolytope make_box(int d, const Vec& halfSides) {
  if (d < 1 || halfSides.size() != d)
    throw Error(ErrorCode::BadParams, "box needs d half-side lengths");
  Mat V = Mat::Zero(2 * d, d);
  Vec x(2 * d);
  for (int a = 0; a < d; ++a) {
    V(2 * a, a) = 1.0;
    V(2 * a + 1, a) = -1.0;
    x[2 * a] = halfSides[a];
    x[2 * a + 1] = halfSides[a];
  }
  return build_polytope(V, x);
}

inline HPolytope make_cube(int d) {
  if (d < 2) throw Error(ErrorCode::BadParams, "cube needs d >= 2");
  return make_box(d, Vec::Ones(d));
}

/// Regular d-simplex with insphere of radius 1 centered at the origin.
inline HPolytope make_simplex(int d) {
  if (d < 2) throw Error(ErrorCode::BadParams, "simplex needs d >= 2");
  // d+1 unit vectors with pairwise dot -1/d: vertices of a regular simplex
  // in the sum-zero subspace of R^{d+1}, expressed in an orthonormal basis.
  Mat U(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) {
    Vec u = Vec::Constant(d + 1, -1.0 / (d + 1));
    u[i] += 1.0;
    U.row(i) = u;
  }
  // orthonormal basis of the sum-zero subspace
  Mat B(d + 1, d);
  {
    std::vector<Vec> basis;
    for (int a = 0; a < d; ++a) {
      Vec w = Vec::Zero(d + 1);
      w[a] = 1.0;
      w -= Vec::Constant(d + 1, w.sum() / (d + 1));
      for (const Vec& b : basis) w -= b.dot(w) * b;
      basis.push_back(w.normalized());
    }
    for (int a = 0; a < d; ++a) B.col(a) = basis[static_cast<size_t>(a)];
  }
  Mat V(d + 1, d);
  for (int i = 0; i <= d; ++i) V.row(i) = (U.row(i) * B).normalized();
  return build_polytope(V, Vec::Ones(d + 1));
}

/// H-form of the regular cross-polytope: 2^d normals (+-1, ..., +-1), support 1.
inline HPolytope make_crosspolytope(int d) {
  if (d < 2 || d > 8) throw Error(ErrorCode::BadParams, "crosspolytope needs 2 <= d <= 8");
  const int n = 1 << d;
  Mat V(n, d);
  for (int mask = 0; mask < n; ++mask)
    for (int a = 0; a < d; ++a)
      V(mask, a) = (mask >> a) & 1 ? -1.0 : 1.0;
  return build_polytope(V, Vec::Ones(n));
}

/// n quasi-uniform unit normals with support 1; redundant ones discarded.
/// Deterministic for fixed seed.
inline HPolytope make_random_hull(int d, int n, std::uint64_t seed) {
  if (d < 2 || n < d + 1) throw Error(ErrorCode::BadParams, "need d >= 2 and n >= d+1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Mat V(n, d);
    for (int i = 0; i < n; ++i) {
      Vec v(d);
      do {
        for (int a = 0; a < d; ++a) v[a] = gauss(rng);
      } while (v.norm() < 1e-3);
      V.row(i) = v.normalized();
    }
    // drop redundant facets until the build succeeds
    while (V.rows() >= d + 1) {
      try {
        return build_polytope(V, Vec::Ones(V.rows()));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::RedundantFacet) {
          const int bad = e.index0();
          Mat W(V.rows() - 1, d);
          W.topRows(bad) = V.topRows(bad);
          W.bottomRows(V.rows() - 1 - bad) = V.bottomRows(V.rows() - 1 - bad);
          V = W;
        } else if (e.code() == ErrorCode::Unbounded ||
                   e.code() == ErrorCode::DuplicateNormal) {
          break;  // resample
        } else {
          throw;
        }
      }
    }
  }
  throw Error(ErrorCode::BadParams, "failed to generate a bounded random hull");
}

/// Cartesian product: block-diagonal normals, concatenated supports.
inline HPolytope make_product(const HPolytope& P1, const HPolytope& P2) {
  const int d = P1.dim + P2.dim;
  const int n = P1.facetCount() + P2.facetCount();
  Mat V = Mat::Zero(n, d);
  Vec x(n);
  V.topLeftCorner(P1.facetCount(), P1.dim) = P1.normals;
  V.bottomRightCorner(P2.facetCount(), P2.dim) = P2.normals;
  x.head(P1.facetCount()) = P1.support;
  x.tail(P2.facetCount()) = P2.support;
  return build_polytope(V, x);
}

}  // namespace cdv
