#include "test_helpers.hpp"

using namespace cdv;
using cdvtest::rows;
using cdvtest::vec;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("cube builds and has 8 vertices") {
  HPolytope P = make_cube(3);
  REQUIRE(P.facetCount() == 6);
  REQUIRE(P.lattice.vertices.size() == 8);
  for (const auto& v : P.lattice.vertices) {
    for (int a = 0; a < 3; ++a) REQUIRE(std::abs(std::abs(v.point[a]) - 1.0) < 1e-12);
    REQUIRE(v.tight.size() == 3);
  }
}

TEST_CASE("redundant facet is rejected") {
  // square plus a plane that misses it
  Mat V = rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}});
  Vec x = vec({1, 1, 1, 1, 3});
  REQUIRE(throws_code(ErrorCode::RedundantFacet, [&] { build_polytope(V, x); }));
}

TEST_CASE("missing lower bounds give Unbounded") {
  Mat V = rows({{1, 0}, {0, 1}, {0.5, 0.5}});
  REQUIRE(throws_code(ErrorCode::Unbounded, [&] { build_polytope(V, vec({1, 1, 1})); }));
}

TEST_CASE("duplicate normal is rejected") {
  Mat V = rows({{1, 0}, {2, 0}, {-1, 0}, {0, 1}, {0, -1}});
  REQUIRE(throws_code(ErrorCode::DuplicateNormal, [&] {
    build_polytope(V, vec({1, 1, 1, 1, 1}));
  }));
}

TEST_CASE("right triangle vertex enumeration") {
  Mat V = rows({{-1, 0}, {0, -1}, {1, 1}});
  HPolytope P = build_polytope(V, vec({0, 0, 1}));
  REQUIRE(P.lattice.vertices.size() == 3);
  std::set<std::pair<int, int>> got;
  for (const auto& v : P.lattice.vertices)
    got.insert({static_cast<int>(std::lround(v.point[0])),
                static_cast<int>(std::lround(v.point[1]))});
  REQUIRE(got == std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("4-cube has 16 vertices") {
  HPolytope P = make_cube(4);
  REQUIRE(P.lattice.vertices.size() == 16);
}

TEST_CASE("cube face lattice is the octahedron graph") {
  HPolytope P = make_cube(3);
  REQUIRE(P.lattice.codim2.size() == 12);
  // opposite facets (2a, 2a+1) are the only non-adjacent pairs
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const bool opposite = (i / 2 == j / 2);
      REQUIRE(P.lattice.adjacent(i, j) == !opposite);
    }
}

TEST_CASE("simplex dual graph is complete") {
  for (int d = 2; d <= 4; ++d) {
    HPolytope P = make_simplex(d);
    REQUIRE(static_cast<int>(P.lattice.codim2.size()) == (d + 1) * d / 2);
  }
}

TEST_CASE("square dual graph is a 4-cycle") {
  HPolytope P = make_cube(2);
  REQUIRE(P.lattice.codim2.size() == 4);
  REQUIRE(!P.lattice.adjacent(0, 1));
  REQUIRE(!P.lattice.adjacent(2, 3));
}

TEST_CASE("volumes of boxes") {
  REQUIRE_THAT(volume(make_cube(3)), Catch::Matchers::WithinRel(8.0, 1e-12));
  REQUIRE_THAT(volume(make_box(3, vec({1, 1, 2}))), Catch::Matchers::WithinRel(16.0, 1e-12));
  REQUIRE_THAT(volume(make_cube(4)), Catch::Matchers::WithinRel(16.0, 1e-12));
}

TEST_CASE("random 4-polytope volume matches Monte-Carlo estimate") {
  HPolytope P = make_random_hull(4, 10, 11);
  const double vol = volume(P);
  auto [est, se] = cdvtest::monte_carlo_volume(P, 200000, 5);
  REQUIRE(std::abs(vol - est) < 3.0 * se);
}

TEST_CASE("facet and edge volumes of the cube") {
  HPolytope P = make_cube(3);
  for (int i = 0; i < 6; ++i)
    REQUIRE_THAT(facet_volume(P, i), Catch::Matchers::WithinRel(4.0, 1e-12));
  REQUIRE_THAT(codim2_volume(P, 0, 2), Catch::Matchers::WithinRel(2.0, 1e-12));
  REQUIRE(throws_code(ErrorCode::NotAdjacent, [&] { codim2_volume(P, 0, 1); }));
}

TEST_CASE("polar duality octahedron <-> cube") {
  VPolytopeInput oct;
  for (int a = 0; a < 3; ++a)
    for (int s : {1, -1}) {
      Vec p = Vec::Zero(3);
      p[a] = s;
      oct.points.push_back(p);
    }
  HPolytope P = polar_from_points(oct);
  REQUIRE(P.lattice.vertices.size() == 8);
  REQUIRE_THAT(volume(P), Catch::Matchers::WithinRel(8.0, 1e-12));

  VPolytopeInput cube;
  for (int mask = 0; mask < 8; ++mask) {
    Vec p(3);
    for (int a = 0; a < 3; ++a) p[a] = (mask >> a) & 1 ? -1.0 : 1.0;
    cube.points.push_back(p);
  }
  HPolytope Oct = polar_from_points(cube);
  REQUIRE(Oct.lattice.vertices.size() == 6);

  VPolytopeInput bad;
  bad.points.push_back(vec({1, 0, 0}));
  bad.points.push_back(vec({2, 1, 0}));
  bad.points.push_back(vec({2, -1, 0}));
  bad.points.push_back(vec({1, 0, 1}));
  bad.points.push_back(vec({1, 0, -1}));
  REQUIRE(throws_code(ErrorCode::OriginNotInterior, [&] { polar_from_points(bad); }));
}

TEST_CASE("generators are deterministic") {
  HPolytope a = make_random_hull(3, 10, 7);
  HPolytope b = make_random_hull(3, 10, 7);
  REQUIRE((a.normals - b.normals).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((a.support - b.support).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cross-polytope combinatorics") {
  HPolytope P = make_crosspolytope(3);
  REQUIRE(P.lattice.vertices.size() == 6);
  REQUIRE(P.facetCount() == 8);
  REQUIRE(P.lattice.codim2.size() == 12);
  HPolytope P4 = make_crosspolytope(4);
  REQUIRE(P4.lattice.vertices.size() == 8);
  REQUIRE(P4.facetCount() == 16);
}

TEST_CASE("volume identities across generated polytopes") {
  std::vector<HPolytope> suite;
  suite.push_back(make_cube(3));
  suite.push_back(make_box(3, vec({1, 1, 2})));
  suite.push_back(make_simplex(3));
  suite.push_back(make_crosspolytope(3));
  suite.push_back(make_cube(4));
  suite.push_back(make_simplex(4));
  for (std::uint64_t s : {1, 2, 3}) suite.push_back(make_random_hull(3, 8, s));
  suite.push_back(make_random_hull(4, 9, 4));

  for (const auto& P : suite) {
    const int d = P.dim;
    const double vol = volume(P);
    double pyramid = 0.0;
    Vec closing = Vec::Zero(d);
    double facetSum = 0.0;
    for (int i = 0; i < P.facetCount(); ++i) {
      const double fv = facet_volume(P, i);
      pyramid += P.support[i] / P.normalNorm(i) * fv;
      closing += fv / P.normalNorm(i) * P.normals.row(i).transpose();
      facetSum += fv;
    }
    // Euler-style identity d vol = sum h_i vol(F_i)
    REQUIRE_THAT(pyramid, Catch::Matchers::WithinRel(d * vol, 1e-10));
    // Minkowski closing identity
    REQUIRE(closing.norm() <= 1e-10 * facetSum);
    // scaling: vol(lambda x) = lambda^d vol(x)
    const double lambda = 1.37;
    const double scaled = volume(build_polytope(P.normals, Vec(lambda * P.support)));
    REQUIRE_THAT(scaled, Catch::Matchers::WithinRel(std::pow(lambda, d) * vol, 1e-10));
  }
}

TEST_CASE("translation covariance") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-0.3, 0.3);
  for (const auto& P : {make_cube(3), make_random_hull(3, 8, 21)}) {
    Vec p(P.dim);
    for (int a = 0; a < P.dim; ++a) p[a] = uni(rng);
    HPolytope Q = build_polytope(P.normals, Vec(P.support + P.normals * p));
    REQUIRE_THAT(volume(Q), Catch::Matchers::WithinRel(volume(P), 1e-10));
    for (int i = 0; i < P.facetCount(); ++i)
      REQUIRE_THAT(facet_volume(Q, i), Catch::Matchers::WithinRel(facet_volume(P, i), 1e-9));
    REQUIRE(Q.lattice.dualEdges() == P.lattice.dualEdges());
  }
}

TEST_CASE("product generator") {
  HPolytope P = make_product(make_cube(2), make_cube(2));
  REQUIRE(P.dim == 4);
  REQUIRE(P.lattice.vertices.size() == 16);
  REQUIRE_THAT(volume(P), Catch::Matchers::WithinRel(16.0, 1e-12));
}
