#include "test_helpers.hpp"

#include <cstdio>
#include <filesystem>

#include "cdv/json_io.hpp"

using namespace cdv;
using cdvtest::vec;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
  void write(const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
};

}  // namespace

TEST_CASE("polytope file round-trips bit-exactly") {
  HPolytope P = make_random_hull(3, 9, 101);
  TempFile f("cdv_test_poly.json");
  f.write(polytope_to_json(P));
  PolytopeFile pf = read_polytope_file(f.path);
  REQUIRE(!pf.isPointSet);
  REQUIRE((pf.normals - P.normals).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((pf.support - P.support).cwiseAbs().maxCoeff() == 0.0);
  HPolytope Q = polytope_from_file(pf);
  REQUIRE_THAT(volume(Q), Catch::Matchers::WithinRel(volume(P), 1e-12));
}

TEST_CASE("point-set file builds the polar") {
  std::vector<Vec> pts;
  for (int a = 0; a < 3; ++a)
    for (int s : {1, -1}) {
      Vec p = Vec::Zero(3);
      p[a] = s;
      pts.push_back(p);
    }
  TempFile f("cdv_test_points.json");
  f.write(points_to_json(pts));
  PolytopeFile pf = read_polytope_file(f.path);
  REQUIRE(pf.isPointSet);
  HPolytope polar = polytope_from_file(pf);
  REQUIRE(polar.facetCount() == 6);
  REQUIRE_THAT(volume(polar), Catch::Matchers::WithinRel(8.0, 1e-12));
  VPolytopeInput q = points_from_file(pf);
  REQUIRE(q.points.size() == 6);
}

TEST_CASE("matrix file round-trips bit-exactly") {
  Mat M = cdv_matrix(make_random_hull(3, 8, 103));
  TempFile f("cdv_test_matrix.json");
  f.write(matrix_to_json(M));
  Mat R = read_matrix_file(f.path);
  REQUIRE((R - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph file round-trips") {
  HPolytope P = make_cube(3);
  EdgeList edges = P.lattice.dualEdges();
  TempFile f("cdv_test_graph.json");
  f.write(graph_to_json(P.facetCount(), edges));
  auto [n, back] = read_graph_file(f.path);
  REQUIRE(n == 6);
  REQUIRE(back == edges);
}

TEST_CASE("malformed files are rejected") {
  TempFile f("cdv_test_bad.json");
  f.write(json{{"foo", 1}});
  bool threw = false;
  try {
    read_polytope_file(f.path);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::BadParams;
  }
  REQUIRE(threw);

  threw = false;
  f.write(json{{"n", 3}, {"rows", json::array({json::array({1.0, 2.0})})}});
  try {
    read_matrix_file(f.path);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::BadParams;
  }
  REQUIRE(threw);
}

TEST_CASE("serialization is deterministic") {
  HPolytope P = make_random_hull(3, 9, 107);
  REQUIRE(polytope_to_json(P).dump() == polytope_to_json(P).dump());
  Mat M = cdv_matrix(P);
  REQUIRE(matrix_to_json(M).dump() == matrix_to_json(M).dump());
}

TEST_CASE("report serialization carries the pass verdicts") {
  HPolytope P = make_cube(3);
  Mat M = cdv_matrix(P);
  CdVReport rep = check_cdv(M, P.lattice.dualEdges());
  Spectrum s = spectrum(M);
  rep.kernelMatch = kernel_match(s, P.normals);
  rep.gap = gap_bound(P, s);
  json j = to_json(rep);
  REQUIRE(j["pass"].get<bool>());
  REQUIRE(j["corank"].get<int>() == 3);
  REQUIRE(j["gap"]["equality"].get<bool>());

  RoundtripReport rt = roundtrip_check(P);
  json jr = to_json(rt);
  REQUIRE(jr["translateOfOriginal"].get<bool>());
}
