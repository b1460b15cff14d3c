#include "test_helpers.hpp"

#include "cdv/lovasz.hpp"

using namespace cdv;
using cdvtest::vec;

namespace {

VPolytopeInput octahedron_points() {
  VPolytopeInput Q;
  for (int a = 0; a < 3; ++a)
    for (int s : {1, -1}) {
      Vec p = Vec::Zero(3);
      p[a] = s;
      Q.points.push_back(p);
    }
  return Q;
}

VPolytopeInput cube_points() {
  VPolytopeInput Q;
  for (int mask = 0; mask < 8; ++mask) {
    Vec p(3);
    for (int a = 0; a < 3; ++a) p[a] = (mask >> a) & 1 ? -1.0 : 1.0;
    Q.points.push_back(p);
  }
  return Q;
}

VPolytopeInput hull_points(const HPolytope& P) {
  VPolytopeInput Q;
  for (const auto& v : P.lattice.vertices) Q.points.push_back(v.point);
  return Q;
}

}  // namespace

TEST_CASE("octahedron matrix is -2 on edges, 0 elsewhere") {
  LovaszResult lov = lovasz_matrix(octahedron_points());
  REQUIRE(lov.skeleton.size() == 12);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double expected = (i == j || i / 2 == j / 2) ? 0.0 : -2.0;
      REQUIRE_THAT(lov.m(i, j), Catch::Matchers::WithinAbs(expected, 1e-10));
    }
}

TEST_CASE("edge construction reproduces the polar volume Hessian") {
  REQUIRE(compare_lovasz_hessian(octahedron_points()) < 1e-10);
  REQUIRE(compare_lovasz_hessian(cube_points()) < 1e-9);
  REQUIRE(compare_lovasz_hessian(hull_points(make_random_hull(3, 9, 7))) < 1e-8);
  REQUIRE(compare_lovasz_hessian(hull_points(make_random_hull(3, 12, 8))) < 1e-8);
}

TEST_CASE("matrix certifies on the skeleton, corank 3") {
  for (const auto& Q : {octahedron_points(), cube_points(),
                        hull_points(make_random_hull(3, 10, 19))}) {
    LovaszResult lov = lovasz_matrix(Q);
    CdVReport rep = check_cdv(lov.m, lov.skeleton);
    REQUIRE(rep.pass());
    REQUIRE(rep.corank == 3);
  }
}

TEST_CASE("translated input still certifies") {
  VPolytopeInput Q = octahedron_points();
  Vec t = vec({0.12, 0.05, -0.08});
  for (auto& p : Q.points) p += t;
  LovaszResult lov = lovasz_matrix(Q);
  CdVReport rep = check_cdv(lov.m, lov.skeleton);
  REQUIRE(rep.pass());
  REQUIRE(rep.corank == 3);
}

TEST_CASE("kernel contains the coordinate functions of the vertices") {
  for (const auto& Q : {octahedron_points(), hull_points(make_random_hull(3, 9, 29))}) {
    LovaszResult lov = lovasz_matrix(Q);
    const double scale = std::max(1.0, lov.m.cwiseAbs().maxCoeff());
    REQUIRE((lov.m * lov.polar.normals).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
}

TEST_CASE("two-dimensional input is rejected") {
  VPolytopeInput Q;
  Q.points.push_back(vec({1, 0}));
  Q.points.push_back(vec({-1, 0}));
  Q.points.push_back(vec({0, 1}));
  bool threw = false;
  try {
    lovasz_matrix(Q);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::NotDimension3;
  }
  REQUIRE(threw);
}

TEST_CASE("cone angles are flat at the base radii") {
  for (const auto& Q : {octahedron_points(), cube_points()}) {
    QTriangulation T = detail::triangulate_q(Q);
    RadialState st = cone_angles(T, T.baseRadii);
    for (int i = 0; i < st.omega.size(); ++i)
      REQUIRE_THAT(st.omega[i], Catch::Matchers::WithinAbs(2.0 * M_PI, 1e-10));
    REQUIRE(st.kappa.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("pulling one vertex outward leaves the flat point") {
  QTriangulation T = detail::triangulate_q(octahedron_points());
  Vec r = T.baseRadii;
  r[1] = 1.1;
  RadialState st = cone_angles(T, r);
  REQUIRE(st.omega[1] > 2.0 * M_PI + 1e-3);
  REQUIRE(st.kappa[1] < -1e-3);
}

TEST_CASE("rigidity: angle derivatives match the scaled matrix") {
  for (const auto& Q : {octahedron_points(), cube_points(),
                        hull_points(make_random_hull(3, 9, 37))}) {
    RigidityReport rep = rigidity_check(Q);
    REQUIRE(rep.maxDeviation < 1e-4);
    REQUIRE(rep.schlaefliResidual < 1e-5);
    REQUIRE(rep.corank == 3);
  }
}

TEST_CASE("analytic rigidity matrix is the radially scaled matrix") {
  VPolytopeInput Q = hull_points(make_random_hull(3, 8, 41));
  LovaszResult lov = lovasz_matrix(Q);
  RigidityReport rep = rigidity_check(Q);
  const int n = static_cast<int>(Q.points.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      REQUIRE_THAT(rep.analytic(i, j),
                   Catch::Matchers::WithinAbs(
                       Q.points[static_cast<size_t>(i)].norm() *
                           Q.points[static_cast<size_t>(j)].norm() * lov.m(i, j),
                       1e-12));
}
