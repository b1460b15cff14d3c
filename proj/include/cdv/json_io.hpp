#pragma once

#include <fstream>
#include <json.hpp>

#include "cdv/lovasz.hpp"
#include "cdv/mixed_volume.hpp"
#include "cdv/polytope.hpp"
#include "cdv/reconstruct.hpp"
#include "cdv/spectral.hpp"

namespace cdv {

using json = nlohmann::ordered_json;

// --- basic values -----------------------------------------------------------

inline json to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vec(m.row(i))));
  return rows;
}

inline Vec vec_from_json(const json& a) {
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
  return v;
}

// --- polytope interchange format --------------------------------------------

struct PolytopeFile {
  bool isPointSet = false;
  Mat normals;  // or points, as rows
  Vec support;
};

inline PolytopeFile read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParams, "cannot open " + path);
  json j;
  in >> j;
  PolytopeFile f;
  auto read_rows = [](const json& rows) {
    if (rows.empty()) throw Error(ErrorCode::BadParams, "empty vector list");
    Mat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw Error(ErrorCode::BadParams, "ragged vector list");
      for (size_t c = 0; c < rows[i].size(); ++c)
        m(static_cast<int>(i), static_cast<int>(c)) = rows[i][c].get<double>();
    }
    return m;
  };
  if (j.contains("points")) {
    f.isPointSet = true;
    f.normals = read_rows(j["points"]);
    f.support = Vec::Ones(f.normals.rows());
  } else if (j.contains("normals") && j.contains("support") && j.contains("dimension")) {
    f.normals = read_rows(j["normals"]);
    f.support = vec_from_json(j["support"]);
    if (f.normals.cols() != j["dimension"].get<int>() || f.normals.rows() != f.support.size())
      throw Error(ErrorCode::BadParams, "inconsistent polytope file");
  } else {
    throw Error(ErrorCode::BadParams, "expected {dimension, normals, support} or {points}");
  }
  return f;
}

inline json polytope_to_json(const HPolytope& P) {
  json j;
  j["dimension"] = P.dim;
  j["normals"] = to_json(P.normals);
  j["support"] = to_json(P.support);
  return j;
}

inline json points_to_json(const std::vector<Vec>& points) {
  json j;
  json rows = json::array();
  for (const auto& p : points) rows.push_back(to_json(p));
  j["points"] = rows;
  return j;
}

inline HPolytope polytope_from_file(const PolytopeFile& f) {
  if (f.isPointSet) {
    VPolytopeInput q;
    for (int i = 0; i < f.normals.rows(); ++i) q.points.push_back(f.normals.row(i));
    return polar_from_points(q);
  }
  return build_polytope(f.normals, f.support);
}

inline VPolytopeInput points_from_file(const PolytopeFile& f) {
  if (!f.isPointSet) throw Error(ErrorCode::BadParams, "expected a point-set file");
  VPolytopeInput q;
  for (int i = 0; i < f.normals.rows(); ++i) q.points.push_back(f.normals.row(i));
  return q;
}

// --- matrix / graph files ---------------------------------------------------

inline json matrix_to_json(const Mat& m) {
  json j;
  j["n"] = m.rows();
  j["rows"] = to_json(m);
  return j;
}

inline Mat read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParams, "cannot open " + path);
  json j;
  in >> j;
  if (!j.contains("n") || !j.contains("rows"))
    throw Error(ErrorCode::BadParams, "expected {n, rows}");
  const int n = j["n"].get<int>();
  Mat m(n, n);
  if (static_cast<int>(j["rows"].size()) != n)
    throw Error(ErrorCode::BadParams, "row count mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(j["rows"][i].size()) != n)
      throw Error(ErrorCode::BadParams, "column count mismatch");
    for (int c = 0; c < n; ++c) m(i, c) = j["rows"][i][c].get<double>();
  }
  return m;
}

inline json graph_to_json(int n, const EdgeList& edges) {
  json j;
  j["n"] = n;
  json e = json::array();
  for (auto [a, b] : edges) e.push_back(json::array({a, b}));
  j["edges"] = e;
  return j;
}

inline std::pair<int, EdgeList> read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParams, "cannot open " + path);
  json j;
  in >> j;
  if (!j.contains("n") || !j.contains("edges"))
    throw Error(ErrorCode::BadParams, "expected {n, edges}");
  EdgeList edges;
  for (const auto& e : j["edges"]) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  return {j["n"].get<int>(), edges};
}

// --- reports ----------------------------------------------------------------

inline json to_json(const CdVReport& r) {
  json j;
  j["m1"] = {{"pass", r.m1.pass}};
  if (!r.m1.offending.empty()) {
    json off = json::array();
    for (auto [a, b] : r.m1.offending) off.push_back(json::array({a, b}));
    j["m1"]["offending"] = off;
  }
  j["m2"] = {{"pass", r.m2.pass},
             {"negativeCount", r.m2.negativeCount},
             {"lambda1", r.m2.lambda1}};
  j["m3"] = {{"pass", r.m3.pass},
             {"vacuous", r.m3.vacuous},
             {"smallestSingularValue", r.m3.smallestSingularValue}};
  j["corank"] = r.corank;
  if (r.kernelMatch) j["kernelAngle"] = r.kernelMatch->angle;
  if (r.gap)
    j["gap"] = {{"bound", r.gap->bound},
                {"lambda1", r.gap->lambda1},
                {"holds", r.gap->holds},
                {"equality", r.gap->equality}};
  j["pass"] = r.pass();
  return j;
}

inline json to_json(const MixedVolumes& mv, const MinkowskiReport& mk,
                    const PhiConsistency& pc) {
  json j;
  j["mv"] = mv.mv;
  j["fitResidual"] = mv.fitResidual;
  j["minkowski"] = {{"lhs", mk.lhs},
                    {"rhs", mk.rhs},
                    {"detPhi2x2", mk.detPhi2x2},
                    {"homothetic", mk.homothetic},
                    {"equalityWithinTol", mk.equalityWithinTol}};
  j["phiConsistency"] = {{"xx", pc.xx}, {"xy", pc.xy}, {"yy", pc.yy}, {"pass", pc.pass}};
  return j;
}

inline json to_json(const RigidityReport& r) {
  json j;
  j["maxDeviation"] = r.maxDeviation;
  j["schlaefliResidual"] = r.schlaefliResidual;
  j["corank"] = r.corank;
  j["matrix"] = to_json(r.analytic);
  return j;
}

inline json to_json(const RoundtripReport& r) {
  json j;
  j["matrixResidual"] = r.matrixResidual;
  j["supportResidual"] = r.supportResidual;
  j["translateResidual"] = r.translateResidual;
  j["translateOfOriginal"] = r.translateOfOriginal;
  return j;
}

inline json tolerances_json() {
  return {{"tolGeomFactor", config::tol_geom_factor},
          {"tolRankFactor", config::tol_rank_factor}};
}

}  // namespace cdv
