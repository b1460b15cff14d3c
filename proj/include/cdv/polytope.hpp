#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "cdv/error.hpp"

namespace cdv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

namespace config {
// Defaults; the CLI may override these from the environment at startup.
inline double tol_geom_factor = 1e-9;
inline double tol_rank_factor = 1e-8;
}  // namespace config

struct Vertex {
  Vec point;
  std::vector<int> tight;  // facet indices, sorted
};

struct Codim2Face {
  int i, j;  // facet pair, i < j
  std::vector<int> vertexIds;
};

struct FaceLattice {
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> facetVertices;
  std::vector<Codim2Face> codim2;
  std::vector<std::vector<int>> dualAdj;  // adjacency lists on facet indices

  bool adjacent(int i, int j) const {
    const auto& a = dualAdj[i];
    return std::find(a.begin(), a.end(), j) != a.end();
  }

  std::vector<std::pair<int, int>> dualEdges() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(codim2.size());
    for (const auto& f : codim2) e.emplace_back(f.i, f.j);
    return e;
  }
};

/// Bounded polytope {p : v_i . p <= x_i}. Immutable after build_polytope.
struct HPolytope {
  int dim = 0;
  Mat normals;  // n x d, rows v_i (not unit length)
  Vec support;  // n
  FaceLattice lattice;

  int facetCount() const { return static_cast<int>(normals.rows()); }

  double normalNorm(int i) const { return normals.row(i).norm(); }

  /// Scale-aware absolute tolerance used for tightness and coincidence tests.
  double tolGeom() const {
    double h = 0.0;
    for (int i = 0; i < facetCount(); ++i)
      h = std::max(h, std::abs(support[i]) / normalNorm(i));
    return config::tol_geom_factor * (1.0 + h);
  }
};

struct VPolytopeInput {
  std::vector<Vec> points;
};

namespace detail {

// Orthonormal basis of the affine hull of the given points, by Gram-Schmidt
// over (p_k - p_0) in index order. Returns list of basis vectors.
inline std::vector<Vec> affine_basis(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> basis;
  if (pts.empty()) return basis;
  for (size_t k = 1; k < pts.size(); ++k) {
    Vec w = pts[k] - pts[0];
    for (const Vec& b : basis) w -= b.dot(w) * b;
    if (w.norm() > tol) basis.push_back(w.normalized());
  }
  return basis;
}

inline int affine_dim(const std::vector<Vec>& pts, double tol) {
  if (pts.empty()) return -1;
  return static_cast<int>(affine_basis(pts, tol).size());
}

// Deterministic orthonormal basis of normal^perp: Gram-Schmidt on the
// standard basis with the largest-|component| axis dropped.
inline std::vector<Vec> hyperplane_frame(const Vec& normal) {
  const int d = static_cast<int>(normal.size());
  int drop = 0;
  for (int a = 1; a < d; ++a)
    if (std::abs(normal[a]) > std::abs(normal[drop])) drop = a;
  std::vector<Vec> basis;
  Vec unit = normal.normalized();
  for (int a = 0; a < d; ++a) {
    if (a == drop) continue;
    Vec w = Vec::Zero(d);
    w[a] = 1.0;
    w -= unit.dot(w) * unit;
    for (const Vec& b : basis) w -= b.dot(w) * b;
    double nw = w.norm();
    if (nw > 1e-12) basis.push_back(w / nw);
  }
  return basis;
}

// True iff the rows of V positively span R^d, i.e. {p : Vp <= 0} = {0}.
// Equivalently: 0 lies in the interior of the convex hull of the rows.
inline bool positively_spans(const Mat& V) {
  const int n = static_cast<int>(V.rows());
  const int d = static_cast<int>(V.cols());
  Eigen::FullPivLU<Mat> lu(V);
  lu.setThreshold(1e-10);
  if (lu.rank() < d) return false;  // lineality space or degenerate
  if (d == 1) {
    bool pos = false, neg = false;
    for (int i = 0; i < n; ++i) {
      if (V(i, 0) > 0) pos = true;
      if (V(i, 0) < 0) neg = true;
    }
    return pos && neg;
  }
  // A pointed nonzero cone has an extreme ray tight on d-1 independent rows.
  std::vector<int> idx(static_cast<size_t>(d - 1));
  std::vector<double> rowNorm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) rowNorm[static_cast<size_t>(i)] = V.row(i).norm();
  // iterate over (d-1)-subsets of rows
  for (int i = 0; i < d - 1; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    Mat S(d - 1, d);
    for (int i = 0; i < d - 1; ++i) S.row(i) = V.row(idx[static_cast<size_t>(i)]);
    Eigen::JacobiSVD<Mat> svd(S, Eigen::ComputeFullV);
    if (svd.rank() == d - 1) {
      Vec u = svd.matrixV().col(d - 1);  // nullspace direction, unit
      for (int sign = 0; sign < 2; ++sign) {
        Vec dir = (sign == 0) ? u : Vec(-u);
        bool recession = true;
        for (int i = 0; i < n; ++i) {
          if (V.row(i).dot(dir) > 1e-9 * (1.0 + rowNorm[static_cast<size_t>(i)])) {
            recession = false;
            break;
          }
        }
        if (recession) return false;
      }
    }
    // next subset
    int k = d - 2;
    while (k >= 0 && idx[static_cast<size_t>(k)] == n - (d - 1) + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int i = k + 1; i < d - 1; ++i)
      idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return true;
}

// Brute force over d-subsets of facets, duplicates merged by distance.
inline std::vector<Vertex> enumerate_vertices_impl(const Mat& V, const Vec& x,
                                                   double tolGeom) {
  const int n = static_cast<int>(V.rows());
  const int d = static_cast<int>(V.cols());
  std::vector<double> rowNorm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) rowNorm[static_cast<size_t>(i)] = V.row(i).norm();

  std::vector<Vec> points;
  std::vector<int> idx(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<size_t>(i)] = i;
  Mat S(d, d);
  Vec b(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      S.row(i) = V.row(idx[static_cast<size_t>(i)]);
      b[i] = x[idx[static_cast<size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(S);
    lu.setThreshold(1e-10);
    if (lu.rank() == d) {
      Vec p = lu.solve(b);
      bool feasible = true;
      for (int i = 0; i < n; ++i) {
        if (V.row(i).dot(p) - x[i] > tolGeom * (1.0 + rowNorm[static_cast<size_t>(i)])) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        bool dup = false;
        for (const Vec& q : points) {
          if ((q - p).norm() < tolGeom * 10.0) {
            dup = true;
            break;
          }
        }
        if (!dup) points.push_back(p);
      }
    }
    int k = d - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == n - d + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int i = k + 1; i < d; ++i)
      idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }

  std::vector<Vertex> verts;
  verts.reserve(points.size());
  for (const Vec& p : points) {
    Vertex v;
    v.point = p;
    for (int i = 0; i < n; ++i) {
      if (std::abs(V.row(i).dot(p) - x[i]) <= tolGeom * (1.0 + rowNorm[static_cast<size_t>(i)]))
        v.tight.push_back(i);
    }
    verts.push_back(std::move(v));
  }
  // deterministic order: lexicographic by coordinates
  std::sort(verts.begin(), verts.end(), [](const Vertex& a, const Vertex& b) {
    for (int c = 0; c < a.point.size(); ++c) {
      if (a.point[c] < b.point[c] - 1e-12) return true;
      if (a.point[c] > b.point[c] + 1e-12) return false;
    }
    return false;
  });
  return verts;
}

inline FaceLattice build_lattice(const Mat& V, const Vec& x,
                                 std::vector<Vertex> verts, double tolGeom) {
  const int n = static_cast<int>(V.rows());
  const int d = static_cast<int>(V.cols());
  FaceLattice lat;
  lat.vertices = std::move(verts);
  lat.facetVertices.assign(static_cast<size_t>(n), {});
  for (size_t vi = 0; vi < lat.vertices.size(); ++vi)
    for (int f : lat.vertices[vi].tight)
      lat.facetVertices[static_cast<size_t>(f)].push_back(static_cast<int>(vi));

  double scale = 1.0;
  for (const auto& v : lat.vertices) scale = std::max(scale, v.point.norm());
  const double rankTol = 1e-7 * scale;

  lat.dualAdj.assign(static_cast<size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> shared;
      std::set_intersection(lat.facetVertices[static_cast<size_t>(i)].begin(),
                            lat.facetVertices[static_cast<size_t>(i)].end(),
                            lat.facetVertices[static_cast<size_t>(j)].begin(),
                            lat.facetVertices[static_cast<size_t>(j)].end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      std::vector<Vec> pts;
      pts.reserve(shared.size());
      for (int vi : shared) pts.push_back(lat.vertices[static_cast<size_t>(vi)].point);
      int k = affine_dim(pts, rankTol);
      if (k == d - 2) {
        lat.codim2.push_back({i, j, shared});
        lat.dualAdj[static_cast<size_t>(i)].push_back(j);
        lat.dualAdj[static_cast<size_t>(j)].push_back(i);
      } else if (k > d - 2) {
        throw Error(ErrorCode::DegenerateFace,
                    "facets " + std::to_string(i) + " and " + std::to_string(j) +
                        " share a face of dimension " + std::to_string(k),
                    i, j);
      }
      (void)x;
      (void)tolGeom;
    }
  }
  for (auto& a : lat.dualAdj) std::sort(a.begin(), a.end());
  return lat;
}

}  // namespace detail

/// Validated construction of P(x) = {p : Vp <= x}.
inline HPolytope build_polytope(const Mat& normals, const Vec& support) {
  const int n = static_cast<int>(normals.rows());
  const int d = static_cast<int>(normals.cols());
  if (d < 1 || n != support.size())
    throw Error(ErrorCode::BadParams, "inconsistent dimensions");
  if (n < d + 1)
    throw Error(ErrorCode::BadParams, "need at least d+1 facets");
  for (int i = 0; i < n; ++i) {
    if (normals.row(i).norm() == 0.0)
      throw Error(ErrorCode::BadParams, "zero normal at index " + std::to_string(i), i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec a = normals.row(i).normalized();
      Vec b = normals.row(j).normalized();
      if ((a - b).norm() < 1e-9)
        throw Error(ErrorCode::DuplicateNormal,
                    "normals " + std::to_string(i) + " and " + std::to_string(j) +
                        " are positive multiples",
                    i, j);
    }
  }
  if (!detail::positively_spans(normals))
    throw Error(ErrorCode::Unbounded, "recession direction exists");

  HPolytope P;
  P.dim = d;
  P.normals = normals;
  P.support = support;
  const double tol = P.tolGeom();
  auto verts = detail::enumerate_vertices_impl(normals, support, tol);
  if (verts.empty()) throw Error(ErrorCode::Empty, "no feasible vertex");

  double scale = 1.0;
  for (const auto& v : verts) scale = std::max(scale, v.point.norm());
  const double rankTol = 1e-7 * scale;

  // interior must be nonempty: vertices affinely span R^d
  {
    std::vector<Vec> pts;
    pts.reserve(verts.size());
    for (const auto& v : verts) pts.push_back(v.point);
    if (detail::affine_dim(pts, rankTol) < d)
      throw Error(ErrorCode::Empty, "polytope has empty interior");
  }

  // irredundancy: every facet must have dimension d-1
  for (int i = 0; i < n; ++i) {
    std::vector<Vec> pts;
    for (const auto& v : verts)
      if (std::binary_search(v.tight.begin(), v.tight.end(), i)) pts.push_back(v.point);
    if (detail::affine_dim(pts, rankTol) != d - 1)
      throw Error(ErrorCode::RedundantFacet,
                  "facet " + std::to_string(i) + " has dimension < d-1", i);
  }

  P.lattice = detail::build_lattice(normals, support, std::move(verts), tol);
  return P;
}

inline const std::vector<Vertex>& enumerate_vertices(const HPolytope& P) {
  return P.lattice.vertices;
}

inline const FaceLattice& face_lattice(const HPolytope& P) { return P.lattice; }

namespace detail {

// k-dimensional volume of the face with the given vertex ids, recursively:
// point -> 1, segment -> length, polygon -> shoelace in a 2D frame of its
// affine hull, k >= 3 -> pyramids over the face's facets from the centroid.
inline double face_volume_rec(const HPolytope& P, const std::vector<int>& vertexIds,
                              int k, std::map<std::vector<int>, double>& memo) {
  if (k <= 0) return 1.0;
  const auto& verts = P.lattice.vertices;
  auto points = [&](const std::vector<int>& ids) {
    std::vector<Vec> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(verts[static_cast<size_t>(id)].point);
    return pts;
  };
  auto pts = points(vertexIds);
  if (k == 1) {
    double len = 0.0;
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = a + 1; b < pts.size(); ++b)
        len = std::max(len, (pts[a] - pts[b]).norm());
    return len;
  }

  double scale = 1.0;
  for (const Vec& p : pts) scale = std::max(scale, p.norm());
  const double rankTol = 1e-7 * scale;

  if (k == 2) {
    auto basis = affine_basis(pts, rankTol);
    if (basis.size() < 2) return 0.0;
    Vec centroid = Vec::Zero(P.dim);
    for (const Vec& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    struct P2 { double u, v, ang; };
    std::vector<P2> flat;
    flat.reserve(pts.size());
    for (const Vec& p : pts) {
      double u = basis[0].dot(p - centroid);
      double v = basis[1].dot(p - centroid);
      flat.push_back({u, v, std::atan2(v, u)});
    }
    std::sort(flat.begin(), flat.end(), [](const P2& a, const P2& b) { return a.ang < b.ang; });
    double area2 = 0.0;
    for (size_t a = 0; a < flat.size(); ++a) {
      const P2& p = flat[a];
      const P2& q = flat[(a + 1) % flat.size()];
      area2 += p.u * q.v - q.u * p.v;
    }
    return std::abs(area2) / 2.0;
  }

  auto it = memo.find(vertexIds);
  if (it != memo.end()) return it->second;

  Vec centroid = Vec::Zero(P.dim);
  for (const Vec& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());

  // children: distinct (k-1)-faces cut out by additional tight facets
  std::set<std::vector<int>> seen;
  double vol = 0.0;
  for (int m = 0; m < P.facetCount(); ++m) {
    std::vector<int> sub;
    for (int id : vertexIds) {
      const auto& t = verts[static_cast<size_t>(id)].tight;
      if (std::binary_search(t.begin(), t.end(), m)) sub.push_back(id);
    }
    if (sub.empty() || sub.size() == vertexIds.size()) continue;
    if (!seen.insert(sub).second) continue;
    auto subPts = points(sub);
    auto subBasis = affine_basis(subPts, rankTol);
    if (static_cast<int>(subBasis.size()) != k - 1) continue;
    Vec w = centroid - subPts[0];
    for (const Vec& b : subBasis) w -= b.dot(w) * b;
    double h = w.norm();
    vol += h * face_volume_rec(P, sub, k - 1, memo) / static_cast<double>(k);
  }
  memo[vertexIds] = vol;
  return vol;
}

}  // namespace detail

inline double facet_volume(const HPolytope& P, int i) {
  if (i < 0 || i >= P.facetCount())
    throw Error(ErrorCode::BadParams, "facet index out of range", i);
  std::map<std::vector<int>, double> memo;
  return detail::face_volume_rec(P, P.lattice.facetVertices[static_cast<size_t>(i)],
                                 P.dim - 1, memo);
}

inline double codim2_volume(const HPolytope& P, int i, int j) {
  if (i > j) std::swap(i, j);
  for (const auto& f : P.lattice.codim2) {
    if (f.i == i && f.j == j) {
      std::map<std::vector<int>, double> memo;
      return detail::face_volume_rec(P, f.vertexIds, P.dim - 2, memo);
    }
  }
  throw Error(ErrorCode::NotAdjacent,
              "facets " + std::to_string(i) + " and " + std::to_string(j) +
                  " share no codimension-2 face",
              i, j);
}

/// vol_d by the pyramid recursion (1/d) sum_i (x_i/||v_i||) vol_{d-1}(F_i).
inline double volume(const HPolytope& P) {
  if (P.dim == 1) {
    std::map<std::vector<int>, double> memo;
    std::vector<int> all(P.lattice.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    return detail::face_volume_rec(P, all, 1, memo);
  }
  double vol = 0.0;
  for (int i = 0; i < P.facetCount(); ++i)
    vol += P.support[i] / P.normalNorm(i) * facet_volume(P, i);
  return vol / static_cast<double>(P.dim);
}

inline HPolytope polar_from_points(const VPolytopeInput& Q) {
  if (Q.points.empty()) throw Error(ErrorCode::BadParams, "no points");
  const int d = static_cast<int>(Q.points[0].size());
  Mat V(static_cast<int>(Q.points.size()), d);
  for (size_t i = 0; i < Q.points.size(); ++i) {
    if (Q.points[i].size() != d) throw Error(ErrorCode::BadParams, "ragged point list");
    V.row(static_cast<int>(i)) = Q.points[i];
  }
  if (!detail::positively_spans(V))
    throw Error(ErrorCode::OriginNotInterior, "origin not interior to conv(points)");
  return build_polytope(V, Vec::Ones(V.rows()));
}

}  // namespace cdv
