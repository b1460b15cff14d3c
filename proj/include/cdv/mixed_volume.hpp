#pragma once

#include <limits>

#include "cdv/hessian.hpp"

namespace cdv {

struct MixedVolumes {
  std::vector<double> mv;  // mv[k] = vol(Q,...,Q (k), P,...,P), k = 0..d
  double fitResidual = 0.0;
};

struct MinkowskiReport {
  double lhs = 0.0;        // mv[1]^2
  double rhs = 0.0;        // mv[0] * mv[2]
  double detPhi2x2 = 0.0;  // Phi(x,x) Phi(y,y) - Phi(x,y)^2
  bool homothetic = false;
  bool equalityWithinTol = false;
};

namespace detail {

inline std::vector<std::vector<int>> combinatorial_type(const HPolytope& P) {
  std::vector<std::vector<int>> type;
  type.reserve(P.lattice.vertices.size());
  for (const auto& v : P.lattice.vertices) type.push_back(v.tight);
  std::sort(type.begin(), type.end());
  return type;
}

}  // namespace detail

/// Operational check that the normal fan of P(y) refines the normal fan of
/// P(x): the combinatorics of P(x + t y) is stable across sample values of t
/// and perturbed vertex tight-sets are contained in the nearby originals.
inline bool refines(const Mat& V, const Vec& y, const Vec& x) {
  HPolytope base = build_polytope(V, x);
  const double ts[] = {1e-3, 1e-2, 0.1, 0.5, 1.0};
  std::vector<std::vector<int>> reference;
  for (double t : ts) {
    HPolytope Pt;
    try {
      Pt = build_polytope(V, x + t * y);
    } catch (const Error& e) {
      // a facet dropping out along the segment is a fan coarsening
      if (e.code() == ErrorCode::RedundantFacet || e.code() == ErrorCode::Empty ||
          e.code() == ErrorCode::DegenerateFace)
        return false;
      throw;
    }
    auto type = detail::combinatorial_type(Pt);
    if (t == ts[0]) {
      reference = type;
      for (const auto& u : Pt.lattice.vertices) {
        double best = std::numeric_limits<double>::infinity();
        const Vertex* nearest = nullptr;
        for (const auto& w : base.lattice.vertices) {
          const double dist = (w.point - u.point).norm();
          if (dist < best) {
            best = dist;
            nearest = &w;
          }
        }
        if (!std::includes(nearest->tight.begin(), nearest->tight.end(),
                           u.tight.begin(), u.tight.end()))
          return false;
      }
    } else if (type != reference) {
      return false;
    }
  }
  return true;
}

inline double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// Mixed volumes of P(x) and P(y) by polynomial expansion of vol(x + t y).
inline MixedVolumes mixed_volumes(const Mat& V, const Vec& x, const Vec& y) {
  if (!refines(V, y, x))
    throw Error(ErrorCode::RefinementViolated, "N(y) does not refine N(x)");
  const int d = static_cast<int>(V.cols());
  auto vol_at = [&](double t) { return volume(build_polytope(V, x + t * y)); };

  Mat A(d + 1, d + 1);
  Vec b(d + 1);
  for (int k = 0; k <= d; ++k) {
    const double t = static_cast<double>(k) / d;
    for (int m = 0; m <= d; ++m) A(k, m) = std::pow(t, m);
    b[k] = vol_at(t);
  }
  Vec coeff = A.fullPivLu().solve(b);

  const double scale = b.cwiseAbs().maxCoeff();
  auto poly = [&](double t) {
    double acc = 0.0;
    for (int m = d; m >= 0; --m) acc = acc * t + coeff[m];
    return acc;
  };
  MixedVolumes out;
  for (double t : {0.35, 0.85})
    out.fitResidual = std::max(out.fitResidual, std::abs(poly(t) - vol_at(t)));
  if (out.fitResidual > 1e-7 * scale)
    throw Error(ErrorCode::IllConditionedFit,
                "interpolation defect " + std::to_string(out.fitResidual));
  out.mv.resize(static_cast<size_t>(d + 1));
  for (int k = 0; k <= d; ++k) out.mv[static_cast<size_t>(k)] = coeff[k] / binomial(d, k);
  return out;
}

/// Second Minkowski inequality mv[1]^2 >= mv[0] mv[2] with the homothety
/// equality case (Bol's condition specialized inside a fixed-normal family).
inline MinkowskiReport minkowski_check(const Mat& V, const Vec& x, const Vec& y) {
  MixedVolumes mv = mixed_volumes(V, x, y);
  HPolytope P = build_polytope(V, x);
  Mat phi = volume_hessian(P);

  MinkowskiReport rep;
  rep.lhs = mv.mv[1] * mv.mv[1];
  rep.rhs = mv.mv[0] * mv.mv[2];
  rep.detPhi2x2 = x.dot(phi * x) * y.dot(phi * y) - std::pow(x.dot(phi * y), 2);

  // homothety: x = lambda y + V p with lambda > 0
  const int d = static_cast<int>(V.cols());
  Mat A(V.rows(), 1 + d);
  A.col(0) = y;
  A.rightCols(d) = V;
  Vec sol = A.colPivHouseholderQr().solve(x);
  const double residual = (A * sol - x).cwiseAbs().maxCoeff();
  rep.homothetic = sol[0] > 0.0 && residual <= P.tolGeom() * (1.0 + x.cwiseAbs().maxCoeff());

  const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1.0});
  rep.equalityWithinTol = std::abs(rep.lhs - rep.rhs) <= 1e-9 * scale;
  return rep;
}

struct PhiConsistency {
  double xx = 0.0;  // |x'Phi x - d(d-1) mv[0]| / scale
  double xy = 0.0;
  double yy = 0.0;
  bool pass = false;
};

/// Cross-validate the bilinear form Phi against mixed volumes:
/// Phi(x,y) = d(d-1) vol(y, x, ..., x) and its two endpoint cases.
inline PhiConsistency phi_consistency(const Mat& V, const Vec& x, const Vec& y) {
  MixedVolumes mv = mixed_volumes(V, x, y);
  HPolytope P = build_polytope(V, x);
  Mat phi = volume_hessian(P);
  const double d = static_cast<double>(V.cols());
  const double f = d * (d - 1.0);
  const double scale = std::max(1.0, f * mv.mv[0]);
  PhiConsistency r;
  r.xx = std::abs(x.dot(phi * x) - f * mv.mv[0]) / scale;
  r.xy = std::abs(x.dot(phi * y) - f * mv.mv[1]) / scale;
  r.yy = std::abs(y.dot(phi * y) - f * mv.mv[2]) / scale;
  r.pass = r.xx <= 1e-7 && r.xy <= 1e-7 && r.yy <= 1e-7;
  return r;
}

}  // namespace cdv
