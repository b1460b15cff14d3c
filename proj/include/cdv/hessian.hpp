#pragma once

#include "cdv/polytope.hpp"

namespace cdv {

inline double sin_angle(const Vec& a, const Vec& b) {
  // Gram determinant form, dimension-agnostic
  const double na = a.norm(), nb = b.norm();
  const double g = na * na * nb * nb - a.dot(b) * a.dot(b);
  return std::sqrt(std::max(0.0, g)) / (na * nb);
}

/// Gradient of vol with respect to the support parameters:
/// component i is vol_{d-1}(F_i)/||v_i||.
inline Vec volume_gradient(const HPolytope& P) {
  Vec g(P.facetCount());
  for (int i = 0; i < P.facetCount(); ++i)
    g[i] = facet_volume(P, i) / P.normalNorm(i);
  return g;
}

/// Hessian Phi of vol(P(x)). Off-diagonal entries from the codimension-2
/// face volumes; diagonal completed from the closing identity
/// sum_j vol_{d-1}(F_j) v_j/||v_j|| = 0 differentiated, with a residual check.
inline Mat volume_hessian(const HPolytope& P) {
  const int n = P.facetCount();
  Mat phi = Mat::Zero(n, n);
  for (const auto& f : P.lattice.codim2) {
    const double s = sin_angle(P.normals.row(f.i), P.normals.row(f.j));
    std::map<std::vector<int>, double> memo;
    const double vol = detail::face_volume_rec(P, f.vertexIds, P.dim - 2, memo);
    const double val = vol / (P.normalNorm(f.i) * P.normalNorm(f.j) * s);
    phi(f.i, f.j) = val;
    phi(f.j, f.i) = val;
  }
  for (int i = 0; i < n; ++i) {
    Vec s = Vec::Zero(P.dim);
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += phi(i, j) * P.normals.row(j).transpose();
      scale += std::abs(phi(i, j)) * P.normalNorm(j);
    }
    const double vi2 = P.normalNorm(i) * P.normalNorm(i);
    phi(i, i) = -P.normals.row(i).dot(s) / vi2;
    const double residual = (s + phi(i, i) * P.normals.row(i).transpose()).norm();
    if (residual > 1e-8 * (1.0 + scale))
      throw Error(ErrorCode::InconsistentDiagonal,
                  "row " + std::to_string(i) + " residual " + std::to_string(residual), i);
  }
  return phi;
}

/// Central second differences of vol(x); oracle for volume_hessian.
inline Mat hessian_fd(const HPolytope& P, double step) {
  const int n = P.facetCount();
  auto vol_at = [&](const Vec& x) {
    try {
      return volume(build_polytope(P.normals, x));
    } catch (const Error&) {
      throw Error(ErrorCode::StepTooLarge, "perturbed polytope failed validation");
    }
  };
  const double f0 = volume(P);
  Mat H(n, n);
  for (int i = 0; i < n; ++i) {
    Vec xp = P.support, xm = P.support;
    xp[i] += step;
    xm[i] -= step;
    H(i, i) = (vol_at(xp) - 2.0 * f0 + vol_at(xm)) / (step * step);
    for (int j = i + 1; j < n; ++j) {
      Vec xpp = P.support, xpm = P.support, xmp = P.support, xmm = P.support;
      xpp[i] += step; xpp[j] += step;
      xpm[i] += step; xpm[j] -= step;
      xmp[i] -= step; xmp[j] += step;
      xmm[i] -= step; xmm[j] -= step;
      const double v = (vol_at(xpp) - vol_at(xpm) - vol_at(xmp) + vol_at(xmm)) /
                       (4.0 * step * step);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

/// Candidate Colin de Verdiere matrix M = -Hessian.
inline Mat cdv_matrix(const HPolytope& P) { return -volume_hessian(P); }

}  // namespace cdv
