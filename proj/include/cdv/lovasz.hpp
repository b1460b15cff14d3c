#pragma once

#include <random>

#include "cdv/hessian.hpp"
#include "cdv/spectral.hpp"

namespace cdv {

using Vec3 = Eigen::Vector3d;

struct LovaszResult {
  Mat m;                             // indexed by vertices of Q
  std::vector<Vec3> dualVertices;    // vertices of Q* (one per face of Q)
  EdgeList skeleton;                 // edges of the 1-skeleton of Q
  HPolytope polar;                   // Q* = P(V, 1)
};

namespace detail {

inline void require_dim3(const VPolytopeInput& Q) {
  if (Q.points.empty() || Q.points[0].size() != 3)
    throw Error(ErrorCode::NotDimension3, "Lovasz construction needs a 3-polytope");
}

}  // namespace detail

/// Matrix M from the edge relation w_f - w_g = M_ij (v_i x v_j) and the
/// diagonal relation sum_j M_ij v_j = -M_ii v_i.
inline LovaszResult lovasz_matrix(const VPolytopeInput& Q) {
  detail::require_dim3(Q);
  LovaszResult res;
  res.polar = polar_from_points(Q);
  const HPolytope& P = res.polar;
  const int n = P.facetCount();
  const double tol = P.tolGeom();

  res.dualVertices.reserve(P.lattice.vertices.size());
  for (const auto& w : P.lattice.vertices) res.dualVertices.push_back(Vec3(w.point));

  res.m = Mat::Zero(n, n);
  for (const auto& f : P.lattice.codim2) {
    // the codim-2 face of Q* dual to edge ij of Q is the segment [w_f, w_g]
    if (f.vertexIds.size() != 2)
      throw Error(ErrorCode::DegenerateFace, "dual edge without two endpoints", f.i, f.j);
    const Vec3 wf = res.dualVertices[static_cast<size_t>(f.vertexIds[0])];
    const Vec3 wg = res.dualVertices[static_cast<size_t>(f.vertexIds[1])];
    const Vec3 vi = P.normals.row(f.i);
    const Vec3 vj = P.normals.row(f.j);
    const Vec3 cross = vi.cross(vj);
    const Vec3 diff = wf - wg;
    const double coef = diff.dot(cross) / cross.squaredNorm();
    const double residual = (diff - coef * cross).norm();
    if (residual > 1e4 * tol * (1.0 + diff.norm()))
      throw Error(ErrorCode::NonParallelResidual,
                  "dual edge not parallel to v_i x v_j", f.i, f.j);
    const double mij = -std::abs(coef);  // labeling of (f,g) chosen so M_ij < 0
    res.m(f.i, f.j) = mij;
    res.m(f.j, f.i) = mij;
    res.skeleton.emplace_back(f.i, f.j);
  }
  for (int i = 0; i < n; ++i) {
    Vec3 vprime = Vec3::Zero();
    for (int j = 0; j < n; ++j)
      if (j != i) vprime += res.m(i, j) * Vec3(P.normals.row(j));
    const Vec3 vi = P.normals.row(i);
    // v_i' = -M_ii v_i, least squares onto v_i
    res.m(i, i) = -vprime.dot(vi) / vi.squaredNorm();
    const double residual = (vprime + res.m(i, i) * vi).norm();
    if (residual > 1e4 * tol * (1.0 + vprime.norm()))
      throw Error(ErrorCode::NonParallelResidual, "v_i' not antiparallel to v_i", i);
  }
  return res;
}

/// Max entrywise difference between the Lovasz matrix of Q and the
/// volume-Hessian matrix of Q* at support (1,...,1).
inline double compare_lovasz_hessian(const VPolytopeInput& Q) {
  LovaszResult lov = lovasz_matrix(Q);
  Mat M = cdv_matrix(lov.polar);
  return (M - lov.m).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Radial deformation of Q: pyramids with apex 0, faces fan-triangulated.

struct Triangle { int a, b, c; };  // vertex indices of Q; apex 0 implicit

struct RadialState {
  Vec r;                // radial edge lengths
  Vec omega;            // total angle around each radial edge
  Vec kappa;            // 2*pi - omega
  double s = 0.0;       // S(r) = sum r_i kappa_i + sum l_e theta_e
  std::vector<std::pair<int, int>> boundaryEdges;  // includes fan diagonals
  Vec edgeLengths;      // per boundary edge, fixed from Q
  Vec outerDihedrals;   // theta_e = pi - (sum of interior dihedrals at e)
};

struct QTriangulation {
  std::vector<Vec3> verts;
  std::vector<std::vector<int>> faces;  // cyclic vertex lists
  std::vector<Triangle> triangles;
  std::vector<std::pair<int, int>> boundaryEdges;
  Vec baseRadii;
};

namespace detail {

/// Faces of Q as cyclic vertex lists, recovered from the polar face lattice.
inline QTriangulation triangulate_q(const VPolytopeInput& Q) {
  require_dim3(Q);
  QTriangulation T;
  for (const auto& p : Q.points) T.verts.push_back(Vec3(p));
  HPolytope P = polar_from_points(Q);
  T.baseRadii.resize(static_cast<int>(T.verts.size()));
  for (size_t i = 0; i < T.verts.size(); ++i)
    T.baseRadii[static_cast<int>(i)] = T.verts[i].norm();

  for (const auto& w : P.lattice.vertices) {
    // face of Q with outer normal w, vertex set = tight set of w
    const Vec3 normal = Vec3(w.point).normalized();
    auto frame = hyperplane_frame(w.point);
    Vec3 e1 = frame[0], e2 = frame[1];
    if (e1.cross(e2).dot(normal) < 0) e2 = -e2;
    Vec3 centroid = Vec3::Zero();
    for (int i : w.tight) centroid += T.verts[static_cast<size_t>(i)];
    centroid /= static_cast<double>(w.tight.size());
    std::vector<std::pair<double, int>> order;
    for (int i : w.tight) {
      const Vec3 rel = T.verts[static_cast<size_t>(i)] - centroid;
      order.emplace_back(std::atan2(rel.dot(e2), rel.dot(e1)), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<int> cycle;
    for (auto& [ang, i] : order) cycle.push_back(i);
    // rotate so the lowest index comes first (fan apex)
    auto lo = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), lo, cycle.end());
    T.faces.push_back(cycle);
    for (size_t k = 1; k + 1 < cycle.size(); ++k)
      T.triangles.push_back({cycle[0], cycle[k], cycle[k + 1]});
  }

  std::set<std::pair<int, int>> edges;
  for (const auto& t : T.triangles) {
    edges.insert(std::minmax(t.a, t.b));
    edges.insert(std::minmax(t.b, t.c));
    edges.insert(std::minmax(t.a, t.c));
  }
  T.boundaryEdges.assign(edges.begin(), edges.end());
  return T;
}

inline double face_angle(double adjacent1, double adjacent2, double opposite) {
  const double c = (adjacent1 * adjacent1 + adjacent2 * adjacent2 - opposite * opposite) /
                   (2.0 * adjacent1 * adjacent2);
  if (c <= -1.0 || c >= 1.0)
    throw Error(ErrorCode::DegenerateTetrahedron, "triangle inequality violated");
  return std::acos(c);
}

/// Dihedral angle from the three face angles meeting at a vertex
/// (spherical law of cosines).
inline double dihedral(double alphaOpposite, double alpha1, double alpha2) {
  const double denom = std::sin(alpha1) * std::sin(alpha2);
  if (denom < 1e-14)
    throw Error(ErrorCode::DegenerateTetrahedron, "degenerate vertex cone");
  double c = (std::cos(alphaOpposite) - std::cos(alpha1) * std::cos(alpha2)) / denom;
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace detail

/// Cone angles and the functional S for radial lengths r (intrinsic data
/// only: boundary edge lengths fixed from Q, radial lengths free).
inline RadialState cone_angles(const QTriangulation& T, const Vec& r) {
  const int n = static_cast<int>(T.verts.size());
  if (r.size() != n) throw Error(ErrorCode::BadParams, "radial vector size mismatch");
  for (int i = 0; i < n; ++i)
    if (r[i] <= 0.0) throw Error(ErrorCode::BadParams, "radial lengths must be positive");

  std::map<std::pair<int, int>, size_t> edgeIndex;
  for (size_t e = 0; e < T.boundaryEdges.size(); ++e) edgeIndex[T.boundaryEdges[e]] = e;
  Vec len(static_cast<int>(T.boundaryEdges.size()));
  for (size_t e = 0; e < T.boundaryEdges.size(); ++e) {
    auto [a, b] = T.boundaryEdges[e];
    len[static_cast<int>(e)] =
        (T.verts[static_cast<size_t>(a)] - T.verts[static_cast<size_t>(b)]).norm();
  }

  RadialState st;
  st.r = r;
  st.omega = Vec::Zero(n);
  st.boundaryEdges = T.boundaryEdges;
  st.edgeLengths = len;
  Vec interior = Vec::Zero(static_cast<int>(T.boundaryEdges.size()));

  auto L = [&](int a, int b) { return len[static_cast<int>(edgeIndex.at(std::minmax(a, b)))]; };

  for (const auto& t : T.triangles) {
    const double lab = L(t.a, t.b), lac = L(t.a, t.c), lbc = L(t.b, t.c);
    const double ra = r[t.a], rb = r[t.b], rc = r[t.c];
    // face angles at the apex 0
    const double aab = detail::face_angle(ra, rb, lab);
    const double aac = detail::face_angle(ra, rc, lac);
    const double abc = detail::face_angle(rb, rc, lbc);
    st.omega[t.a] += detail::dihedral(abc, aab, aac);
    st.omega[t.b] += detail::dihedral(aac, aab, abc);
    st.omega[t.c] += detail::dihedral(aab, aac, abc);
    // dihedral angles at the three boundary edges
    auto boundary_dihedral = [&](int a, int b, int c) {
      // at edge ab; edges from a: to b (lab'), to 0 (ra'), to c (lac')
      const double beta1 = detail::face_angle(L(a, b), r[a], r[b]);       // (ab, a0)
      const double beta2 = detail::face_angle(L(a, b), L(a, c), L(b, c)); // (ab, ac)
      const double beta3 = detail::face_angle(r[a], L(a, c), r[c]);       // (a0, ac)
      return detail::dihedral(beta3, beta1, beta2);
    };
    interior[static_cast<int>(edgeIndex.at(std::minmax(t.a, t.b)))] +=
        boundary_dihedral(t.a, t.b, t.c);
    interior[static_cast<int>(edgeIndex.at(std::minmax(t.a, t.c)))] +=
        boundary_dihedral(t.a, t.c, t.b);
    interior[static_cast<int>(edgeIndex.at(std::minmax(t.b, t.c)))] +=
        boundary_dihedral(t.b, t.c, t.a);
  }

  st.kappa = Vec::Constant(n, 2.0 * M_PI) - st.omega;
  st.outerDihedrals = Vec::Constant(interior.size(), M_PI) - interior;
  st.s = st.r.dot(st.kappa) + st.edgeLengths.dot(st.outerDihedrals);
  return st;
}

inline RadialState cone_angles(const VPolytopeInput& Q, const Vec& r) {
  return cone_angles(detail::triangulate_q(Q), r);
}

struct RigidityReport {
  Mat analytic;          // R_ij = ||v_i|| ||v_j|| M_ij
  Mat fd;                // central differences of omega w.r.t. r
  double maxDeviation = 0.0;
  double schlaefliResidual = 0.0;
  int corank = 0;
};

/// Certify the identity d(omega_i)/d(r_j) = ||v_i|| ||v_j|| M_ij, the
/// Schlaefli relation dS/dr_i = kappa_i, and the corank-3 rigidity statement.
inline RigidityReport rigidity_check(const VPolytopeInput& Q, double step = 1e-5,
                                     std::uint64_t seed = 2026) {
  LovaszResult lov = lovasz_matrix(Q);
  QTriangulation T = detail::triangulate_q(Q);
  const int n = static_cast<int>(T.verts.size());

  RigidityReport rep;
  rep.analytic = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rep.analytic(i, j) = T.baseRadii[i] * T.baseRadii[j] * lov.m(i, j);

  rep.fd = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    Vec rp = T.baseRadii, rm = T.baseRadii;
    rp[j] += step;
    rm[j] -= step;
    const Vec wp = cone_angles(T, rp).omega;
    const Vec wm = cone_angles(T, rm).omega;
    rep.fd.col(j) = (wp - wm) / (2.0 * step);
  }
  rep.maxDeviation = (rep.fd - rep.analytic).cwiseAbs().maxCoeff();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.01, 0.01);
  for (int trial = 0; trial < 5; ++trial) {
    Vec r0 = T.baseRadii;
    for (int i = 0; i < n; ++i) r0[i] += uni(rng);
    const Vec kappa = cone_angles(T, r0).kappa;
    for (int i = 0; i < n; ++i) {
      Vec rp = r0, rm = r0;
      rp[i] += step;
      rm[i] -= step;
      const double fdS = (cone_angles(T, rp).s - cone_angles(T, rm).s) / (2.0 * step);
      rep.schlaefliResidual = std::max(rep.schlaefliResidual, std::abs(fdS - kappa[i]));
    }
  }

  rep.corank = spectrum(rep.analytic).corank;
  return rep;
}

}  // namespace cdv
