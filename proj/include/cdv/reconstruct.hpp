#pragma once

#include <deque>

#include "cdv/hessian.hpp"
#include "cdv/lovasz.hpp"
#include "cdv/spectral.hpp"

namespace cdv {

struct NullspaceRep {
  Mat v;              // n x 3, rows are the candidate outer normals
  Mat basis;          // the orthonormal kernel basis used
  double eq11Residual = 0.0;  // max row norm of M * v
};

/// Candidate facet normals from an orthonormal kernel basis of M.
inline NullspaceRep nullspace_normals(const Mat& M) {
  Spectrum s = spectrum(M);
  if (s.corank != 3)
    throw Error(ErrorCode::CorankNot3, "corank is " + std::to_string(s.corank), s.corank);
  NullspaceRep rep;
  rep.basis = kernel_basis(s);
  rep.v = rep.basis;
  rep.eq11Residual = (M * rep.v).rowwise().norm().maxCoeff();
  return rep;
}

struct ConditionsReport {
  bool condition1 = true;  // no zero / coincident normals
  bool condition2 = true;  // projected neighbor normals span v_i^perp
  std::vector<int> failures1;
  std::vector<int> failures2;
  bool pass() const { return condition1 && condition2; }
};

inline ConditionsReport check_conditions(const Mat& M, const EdgeList& edges,
                                         const NullspaceRep& rep) {
  const int n = static_cast<int>(M.rows());
  auto adj = detail::adjacency(n, edges);
  ConditionsReport rep2;
  double scale = rep.v.rowwise().norm().maxCoeff();
  const double tol = 1e-9 * (1.0 + scale);
  for (int i = 0; i < n; ++i) {
    if (rep.v.row(i).norm() <= tol) {
      rep2.condition1 = false;
      rep2.failures1.push_back(i);
    }
  }
  for (int i = 0; i < n && rep2.condition1; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((rep.v.row(i) - rep.v.row(j)).norm() <= tol) {
        rep2.condition1 = false;
        rep2.failures1.push_back(i);
        rep2.failures1.push_back(j);
      }
  for (int i = 0; i < n; ++i) {
    const Vec3 vi = rep.v.row(i);
    if (vi.norm() <= tol) continue;
    const Vec3 unit = vi.normalized();
    std::vector<Vec3> proj;
    for (int j = 0; j < n; ++j) {
      if (!adj[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
      Vec3 vij = Vec3(rep.v.row(j)) - Vec3(rep.v.row(j)).dot(unit) * unit;
      proj.push_back(vij);
    }
    bool ok = proj.size() >= 2;
    if (ok) {
      Mat A(static_cast<int>(proj.size()), 3);
      for (size_t k = 0; k < proj.size(); ++k) A.row(static_cast<int>(k)) = proj[k];
      Eigen::BDCSVD<Mat> svd(A);
      ok = svd.singularValues()[1] > tol;  // spans the 2-plane v_i^perp
      for (const Vec3& p : proj)
        if (p.norm() <= tol) ok = false;
      for (size_t a = 0; a < proj.size() && ok; ++a)
        for (size_t b = a + 1; b < proj.size(); ++b)
          if ((proj[a] - proj[b]).norm() <= tol) ok = false;
    }
    if (!ok) {
      rep2.condition2 = false;
      rep2.failures2.push_back(i);
    }
  }
  return rep2;
}

/// Convex polygon in the plane v_i^perp solving the 2D Minkowski problem for
/// edge normals v_ij and edge lengths A_ij = -M_ij ||v_i|| ||v_j|| sin(theta).
struct FacetPolygon {
  int facet = -1;
  Vec3 e1, e2;                        // right-handed frame of v_i^perp
  std::vector<Eigen::Vector2d> verts; // centered at the vertex centroid
  std::vector<int> edgeNeighbor;      // edge verts[k] -> verts[k+1] borders this facet
  double closingDefect = 0.0;
};

inline FacetPolygon facet_polygon(const Mat& M, const NullspaceRep& rep, int i,
                                  const EdgeList& edges) {
  const int n = static_cast<int>(M.rows());
  auto adj = detail::adjacency(n, edges);
  const Vec3 vi = rep.v.row(i);
  const Vec3 unit = vi.normalized();
  auto frame = detail::hyperplane_frame(Vec(vi));
  Vec3 e1 = frame[0];
  Vec3 e2 = unit.cross(e1);  // (e1, e2, unit) right-handed

  struct Edge { double angle; Eigen::Vector2d dir; double length; int j; };
  std::vector<Edge> es;
  for (int j = 0; j < n; ++j) {
    if (!adj[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
    const Vec3 vj = rep.v.row(j);
    Vec3 vij = vj - vj.dot(unit) * unit;
    const double a = -M(i, j) * vi.norm() * vij.norm();  // ||v_ij|| = ||v_j|| sin(theta_ij)
    Eigen::Vector2d u(vij.dot(e1), vij.dot(e2));
    u.normalize();
    es.push_back({std::atan2(u.y(), u.x()), u, a, j});
  }
  std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) { return a.angle < b.angle; });

  FacetPolygon poly;
  poly.facet = i;
  poly.e1 = e1;
  poly.e2 = e2;
  Eigen::Vector2d p(0.0, 0.0);
  double perimeter = 0.0;
  for (const Edge& e : es) {
    poly.verts.push_back(p);
    poly.edgeNeighbor.push_back(e.j);
    p += e.length * Eigen::Vector2d(-e.dir.y(), e.dir.x());  // rotate90(u)
    perimeter += e.length;
  }
  poly.closingDefect = p.norm();
  if (poly.closingDefect > 1e-7 * (1.0 + perimeter))
    throw Error(ErrorCode::ClosingDefect,
                "facet " + std::to_string(i) + " polygon does not close", i);
  Eigen::Vector2d centroid(0.0, 0.0);
  for (const auto& q : poly.verts) centroid += q;
  centroid /= static_cast<double>(poly.verts.size());
  for (auto& q : poly.verts) q -= centroid;
  return poly;
}

struct ReconstructionResult {
  HPolytope polytope;
  Vec support;
  double supportResidual = 0.0;
  double matrixResidual = 0.0;
};

/// Glue the facet polygons along shared edges, breadth-first over G, and
/// rebuild the polytope from the resulting support parameters.
inline ReconstructionResult assemble(const Mat& M, const EdgeList& edges,
                                     const NullspaceRep& rep) {
  const int n = static_cast<int>(M.rows());
  if (rep.v.cols() != 3)
    throw Error(ErrorCode::UnsupportedDimension, "reconstruction implemented for d = 3 only");
  std::vector<FacetPolygon> polys;
  polys.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) polys.push_back(facet_polygon(M, rep, i, edges));

  std::vector<std::vector<Vec3>> placed(static_cast<size_t>(n));
  std::vector<bool> assigned(static_cast<size_t>(n), false);
  Vec x = Vec::Zero(n);

  auto place = [&](int i, const Vec3& center) {
    auto& pts = placed[static_cast<size_t>(i)];
    pts.clear();
    for (const auto& q : polys[static_cast<size_t>(i)].verts)
      pts.push_back(center + q.x() * polys[static_cast<size_t>(i)].e1 +
                    q.y() * polys[static_cast<size_t>(i)].e2);
  };
  auto edge_midpoint = [&](int i, int j) {
    const auto& poly = polys[static_cast<size_t>(i)];
    const auto& pts = placed[static_cast<size_t>(i)];
    const size_t m = poly.verts.size();
    for (size_t k = 0; k < m; ++k)
      if (poly.edgeNeighbor[k] == j) return Vec3(0.5 * (pts[k] + pts[(k + 1) % m]));
    throw Error(ErrorCode::BadParams, "edge not found in polygon", i, j);
  };
  auto local_edge_midpoint = [&](int i, int j) {
    const auto& poly = polys[static_cast<size_t>(i)];
    const size_t m = poly.verts.size();
    for (size_t k = 0; k < m; ++k)
      if (poly.edgeNeighbor[k] == j) {
        Eigen::Vector2d mid = 0.5 * (poly.verts[k] + poly.verts[(k + 1) % m]);
        return Vec3(mid.x() * poly.e1 + mid.y() * poly.e2);
      }
    throw Error(ErrorCode::BadParams, "edge not found in polygon", i, j);
  };

  // anchor facet 0 at support 1, polygon centroid on the facet plane
  x[0] = 1.0;
  assigned[0] = true;
  const Vec3 v0 = rep.v.row(0);
  place(0, (x[0] / v0.squaredNorm()) * v0);

  ReconstructionResult out;
  std::deque<int> queue{0};
  std::vector<bool> visited(static_cast<size_t>(n), false);
  visited[0] = true;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j : polys[static_cast<size_t>(i)].edgeNeighbor) {
      const Vec3 q = edge_midpoint(i, j);
      const Vec3 vj = rep.v.row(j);
      if (!assigned[static_cast<size_t>(j)]) {
        x[j] = vj.dot(q);
        assigned[static_cast<size_t>(j)] = true;
        place(j, q - local_edge_midpoint(j, i));
      } else {
        out.supportResidual = std::max(out.supportResidual, std::abs(vj.dot(q) - x[j]));
      }
      if (!visited[static_cast<size_t>(j)]) {
        visited[static_cast<size_t>(j)] = true;
        queue.push_back(j);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (!assigned[static_cast<size_t>(i)])
      throw Error(ErrorCode::BadParams, "graph is not connected", i);
  if (out.supportResidual > 1e-6 * scale)
    throw Error(ErrorCode::InconsistentCycle,
                "support residual " + std::to_string(out.supportResidual));

  out.support = x;
  out.polytope = build_polytope(rep.v, x);
  out.matrixResidual = (cdv_matrix(out.polytope) - M).cwiseAbs().maxCoeff();
  return out;
}

struct RoundtripReport {
  double matrixResidual = 0.0;
  double supportResidual = 0.0;
  double translateResidual = 0.0;
  bool translateOfOriginal = false;
};

/// cdv_matrix -> nullspace -> assemble, with the kernel basis aligned to the
/// known normals so the reconstruction is directly comparable to P.
inline RoundtripReport roundtrip_check(const HPolytope& P) {
  if (P.dim != 3)
    throw Error(ErrorCode::UnsupportedDimension, "roundtrip implemented for d = 3 only");
  const Mat M = cdv_matrix(P);
  NullspaceRep rep = nullspace_normals(M);
  // align: project the original normal columns onto ker M
  rep.v = rep.basis * (rep.basis.transpose() * P.normals);
  ReconstructionResult rec = assemble(M, P.lattice.dualEdges(), rep);

  RoundtripReport rt;
  rt.matrixResidual = rec.matrixResidual;
  rt.supportResidual = rec.supportResidual;
  Vec diff = rec.support - P.support;
  Vec p = P.normals.colPivHouseholderQr().solve(diff);
  rt.translateResidual = (diff - P.normals * p).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, P.support.cwiseAbs().maxCoeff());
  rt.translateOfOriginal = rt.translateResidual <= 1e-6 * scale;
  return rt;
}

}  // namespace cdv
