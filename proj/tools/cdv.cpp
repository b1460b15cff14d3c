// Command-line front end: fixture generation, analysis pipelines, batch runs.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cdv/generators.hpp"
#include "cdv/json_io.hpp"
#include "cdv/mixed_volume.hpp"
#include "cdv/reconstruct.hpp"

using namespace cdv;

namespace {

bool is_math_failure(ErrorCode c) {
  switch (c) {
    case ErrorCode::InconsistentDiagonal:
    case ErrorCode::InconsistentCycle:
    case ErrorCode::ClosingDefect:
    case ErrorCode::NonParallelResidual:
    case ErrorCode::CorankMismatch:
    case ErrorCode::CorankNot3:
    case ErrorCode::RefinementViolated:
    case ErrorCode::IllConditionedFit:
    case ErrorCode::DegenerateTetrahedron:
      return true;
    default:
      return false;
  }
}

void emit(const json& j, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(outPath);
    if (!out) throw Error(ErrorCode::BadParams, "cannot write " + outPath);
    out << j.dump(2) << "\n";
  }
}

void apply_env_tolerances() {
  if (const char* g = std::getenv("CDV_TOL_GEOM")) config::tol_geom_factor = std::atof(g);
  if (const char* r = std::getenv("CDV_TOL_RANK")) config::tol_rank_factor = std::atof(r);
}

json analyze_polytope(const HPolytope& P, bool& mathPass) {
  Mat M = cdv_matrix(P);
  CdVReport rep = check_cdv(M, P.lattice.dualEdges());
  Spectrum s = spectrum(M);
  rep.kernelMatch = kernel_match(s, P.normals);
  rep.gap = gap_bound(P, s);
  json j;
  j["dimension"] = P.dim;
  j["facets"] = P.facetCount();
  j["vertices"] = P.lattice.vertices.size();
  j["volume"] = volume(P);
  j["eigenvalues"] = to_json(s.eigenvalues);
  j["report"] = to_json(rep);
  j["tolerances"] = tolerances_json();
  mathPass = rep.pass();
  return j;
}

int cmd_gen(const std::string& kind, int dim, int count, std::uint64_t seed,
            const std::vector<double>& sides, bool asPoints, const std::string& outPath) {
  HPolytope P;
  if (kind == "cube") {
    P = make_cube(dim);
  } else if (kind == "simplex") {
    P = make_simplex(dim);
  } else if (kind == "crosspolytope") {
    P = make_crosspolytope(dim);
  } else if (kind == "box") {
    Vec h(static_cast<int>(sides.size()));
    for (size_t i = 0; i < sides.size(); ++i) h[static_cast<int>(i)] = sides[i];
    P = make_box(dim, h);
  } else if (kind == "random") {
    P = make_random_hull(dim, count, seed);
  } else {
    throw Error(ErrorCode::BadParams, "unknown kind " + kind);
  }
  if (asPoints) {
    std::vector<Vec> pts;
    for (const auto& v : P.lattice.vertices) pts.push_back(v.point);
    emit(points_to_json(pts), outPath);
  } else {
    emit(polytope_to_json(P), outPath);
  }
  return 0;
}

int cmd_analyze(const std::string& file, const std::string& outPath) {
  HPolytope P = polytope_from_file(read_polytope_file(file));
  bool pass = false;
  emit(analyze_polytope(P, pass), outPath);
  return pass ? 0 : 2;
}

int cmd_lovasz(const std::string& file, const std::string& outPath) {
  VPolytopeInput Q = points_from_file(read_polytope_file(file));
  LovaszResult lov = lovasz_matrix(Q);
  const double diff = compare_lovasz_hessian(Q);
  CdVReport rep = check_cdv(lov.m, lov.skeleton);
  json j;
  j["matrix"] = matrix_to_json(lov.m);
  j["skeleton"] = graph_to_json(static_cast<int>(lov.m.rows()), lov.skeleton);
  j["hessianDifference"] = diff;
  j["report"] = to_json(rep);
  j["tolerances"] = tolerances_json();
  const bool pass = rep.pass() && diff < 1e-8 * std::max(1.0, lov.m.cwiseAbs().maxCoeff());
  j["pass"] = pass;
  emit(j, outPath);
  return pass ? 0 : 2;
}

int cmd_rigidity(const std::string& file, std::uint64_t seed, const std::string& outPath) {
  VPolytopeInput Q = points_from_file(read_polytope_file(file));
  RigidityReport rep = rigidity_check(Q, 1e-5, seed);
  json j = to_json(rep);
  j["tolerances"] = tolerances_json();
  const bool pass =
      rep.maxDeviation < 1e-4 && rep.schlaefliResidual < 1e-5 && rep.corank == 3;
  j["pass"] = pass;
  emit(j, outPath);
  return pass ? 0 : 2;
}

int cmd_mixed(const std::string& fileX, const std::string& fileY,
              const std::string& outPath) {
  PolytopeFile fx = read_polytope_file(fileX);
  PolytopeFile fy = read_polytope_file(fileY);
  if (fx.isPointSet || fy.isPointSet)
    throw Error(ErrorCode::BadParams, "mixed needs two facet-form inputs");
  if (fx.normals.rows() != fy.normals.rows() ||
      (fx.normals - fy.normals).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::BadParams, "inputs must share the same normal matrix");
  MixedVolumes mv = mixed_volumes(fx.normals, fx.support, fy.support);
  MinkowskiReport mk = minkowski_check(fx.normals, fx.support, fy.support);
  PhiConsistency pc = phi_consistency(fx.normals, fx.support, fy.support);
  json j = to_json(mv, mk, pc);
  j["tolerances"] = tolerances_json();
  const bool pass =
      pc.pass && mk.lhs >= mk.rhs - 1e-9 * std::max(1.0, std::abs(mk.lhs));
  j["pass"] = pass;
  emit(j, outPath);
  return pass ? 0 : 2;
}

int cmd_reconstruct(const std::string& matrixFile, const std::string& graphFile,
                    const std::string& outPath) {
  Mat M = read_matrix_file(matrixFile);
  auto [n, edges] = read_graph_file(graphFile);
  if (n != M.rows()) throw Error(ErrorCode::SizeMismatch, "graph size != matrix size");
  NullspaceRep rep = nullspace_normals(M);
  ConditionsReport cond = check_conditions(M, edges, rep);
  json j;
  j["conditions"] = {{"condition1", cond.condition1}, {"condition2", cond.condition2}};
  if (!cond.pass()) {
    j["pass"] = false;
    emit(j, outPath);
    return 2;
  }
  ReconstructionResult rec = assemble(M, edges, rep);
  j["polytope"] = polytope_to_json(rec.polytope);
  j["supportResidual"] = rec.supportResidual;
  j["matrixResidual"] = rec.matrixResidual;
  j["tolerances"] = tolerances_json();
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const bool pass = rec.matrixResidual <= 1e-6 * scale;
  j["pass"] = pass;
  emit(j, outPath);
  return pass ? 0 : 2;
}

int cmd_roundtrip(const std::string& file, const std::string& outPath) {
  HPolytope P = polytope_from_file(read_polytope_file(file));
  RoundtripReport rt = roundtrip_check(P);
  json j = to_json(rt);
  j["tolerances"] = tolerances_json();
  const bool pass = rt.translateOfOriginal && rt.matrixResidual < 1e-6;
  j["pass"] = pass;
  emit(j, outPath);
  return pass ? 0 : 2;
}

int cmd_suite(std::uint64_t seed, int count, const std::string& outPath) {
  json instances = json::array();
  bool allPass = true;
  for (int i = 0; i < count; ++i) {
    const int d = 2 + i % 4;  // 2..5
    HPolytope P;
    std::string name;
    switch ((i / 4) % 4) {
      case 0:
        P = make_cube(d);
        name = "cube";
        break;
      case 1:
        P = make_simplex(d);
        name = "simplex";
        break;
      case 2:
        if (d <= 4) {
          P = make_crosspolytope(d);
          name = "crosspolytope";
          break;
        }
        [[fallthrough]];
      default:
        P = make_random_hull(d, 2 * d + 3, seed + static_cast<std::uint64_t>(i));
        name = "random";
        break;
    }
    json rec;
    rec["index"] = i;
    rec["kind"] = name;
    rec["dimension"] = d;
    bool pass = false;
    try {
      rec["analysis"] = analyze_polytope(P, pass)["report"];
      if (d == 3) {
        RoundtripReport rt = roundtrip_check(P);
        rec["roundtrip"] = to_json(rt);
        pass = pass && rt.translateOfOriginal;
      }
    } catch (const Error& e) {
      rec["error"] = e.what();
      pass = false;
    }
    rec["pass"] = pass;
    allPass = allPass && pass;
    instances.push_back(rec);
  }
  json j;
  j["seed"] = seed;
  j["count"] = count;
  j["instances"] = instances;
  j["tolerances"] = tolerances_json();
  j["pass"] = allPass;
  emit(j, outPath);
  return allPass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  apply_env_tolerances();

  CLI::App app{"Colin de Verdiere matrices from polytope volume Hessians"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string outPath;
  app.add_option("-o,--output", outPath, "write the JSON report to FILE instead of stdout")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate a fixture polytope");
  std::string kind;
  int dim = 3, count = 9;
  std::uint64_t seed = 1;
  std::vector<double> sides;
  bool asPoints = false;
  gen->add_option("kind", kind, "cube | simplex | crosspolytope | box | random")->required();
  gen->add_option("--dim", dim, "ambient dimension");
  gen->add_option("--count", count, "normal count for random hulls");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--sides", sides, "half-side lengths for box");
  gen->add_flag("--points", asPoints, "emit the vertex set instead of the facet form");

  auto* analyze = app.add_subcommand("analyze", "full certificate for a facet-form polytope");
  std::string analyzeFile;
  analyze->add_option("file", analyzeFile)->required();

  auto* lovasz = app.add_subcommand("lovasz", "edge construction from a 3D point set");
  std::string lovaszFile;
  lovasz->add_option("file", lovaszFile)->required();

  auto* rigidity = app.add_subcommand("rigidity", "radial rigidity certificate");
  std::string rigidityFile;
  std::uint64_t rigiditySeed = 2026;
  rigidity->add_option("file", rigidityFile)->required();
  rigidity->add_option("--seed", rigiditySeed, "perturbation seed");

  auto* mixed = app.add_subcommand("mixed", "mixed volumes of two bodies with shared normals");
  std::string mixedX, mixedY;
  mixed->add_option("fileX", mixedX)->required();
  mixed->add_option("fileY", mixedY)->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a 3-polytope from (M, G)");
  std::string matrixFile, graphFile;
  reconstruct->add_option("matrix", matrixFile)->required();
  reconstruct->add_option("graph", graphFile)->required();

  auto* roundtrip = app.add_subcommand("roundtrip", "matrix -> polytope -> matrix check");
  std::string roundtripFile;
  roundtrip->add_option("file", roundtripFile)->required();

  auto* suite = app.add_subcommand("suite", "batch property run over generated instances");
  std::uint64_t suiteSeed = 2026;
  int suiteCount = 20;
  suite->add_option("--seed", suiteSeed, "base seed");
  suite->add_option("--count", suiteCount, "instance count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(kind, dim, count, seed, sides, asPoints, outPath);
    if (analyze->parsed()) return cmd_analyze(analyzeFile, outPath);
    if (lovasz->parsed()) return cmd_lovasz(lovaszFile, outPath);
    if (rigidity->parsed()) return cmd_rigidity(rigidityFile, rigiditySeed, outPath);
    if (mixed->parsed()) return cmd_mixed(mixedX, mixedY, outPath);
    if (reconstruct->parsed()) return cmd_reconstruct(matrixFile, graphFile, outPath);
    if (roundtrip->parsed()) return cmd_roundtrip(roundtripFile, outPath);
    if (suite->parsed()) return cmd_suite(suiteSeed, suiteCount, outPath);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_math_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
