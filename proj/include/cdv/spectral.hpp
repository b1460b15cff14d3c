#pragma once

#include <optional>

#include "cdv/hessian.hpp"

namespace cdv {

struct Spectrum {
  Vec eigenvalues;   // ascending
  Mat eigenvectors;  // orthonormal columns, same order
  int corank = 0;
  double tolRank = 0.0;
};

inline Spectrum spectrum(const Mat& M) {
  if (M.rows() != M.cols())
    throw Error(ErrorCode::SizeMismatch, "matrix not square");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + M.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::SizeMismatch, "matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "eigensolver failed");
  Spectrum s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  const double lmax = s.eigenvalues.cwiseAbs().maxCoeff();
  s.tolRank = config::tol_rank_factor * std::max(1.0, lmax);
  s.corank = 0;
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues[i]) <= s.tolRank) ++s.corank;
  return s;
}

inline Mat kernel_basis(const Spectrum& s) {
  const int n = static_cast<int>(s.eigenvalues.size());
  Mat K(n, s.corank);
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(s.eigenvalues[i]) <= s.tolRank) K.col(c++) = s.eigenvectors.col(i);
  return K;
}

struct M1Check {
  bool pass = true;
  std::vector<std::pair<int, int>> offending;
};

struct M2Check {
  bool pass = false;
  int negativeCount = 0;
  double lambda1 = 0.0;
};

struct M3Check {
  bool pass = false;
  bool vacuous = false;  // no non-edges
  double smallestSingularValue = 0.0;
};

struct KernelMatch {
  int corank = 0;
  double angle = 0.0;  // largest principal angle, radians
  bool pass = false;
};

struct GapRecord {
  double bound = 0.0;
  double lambda1 = 0.0;
  bool holds = false;
  bool equality = false;
  double fittedC = 0.0;
};

struct CdVReport {
  M1Check m1;
  M2Check m2;
  M3Check m3;
  int corank = 0;
  std::optional<KernelMatch> kernelMatch;
  std::optional<GapRecord> gap;

  bool pass() const {
    bool ok = m1.pass && m2.pass && m3.pass;
    if (kernelMatch) ok = ok && kernelMatch->pass;
    if (gap) ok = ok && gap->holds;
    return ok;
  }
};

using EdgeList = std::vector<std::pair<int, int>>;

namespace detail {

inline std::vector<std::vector<bool>> adjacency(int n, const EdgeList& edges) {
  std::vector<std::vector<bool>> adj(static_cast<size_t>(n),
                                     std::vector<bool>(static_cast<size_t>(n), false));
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw Error(ErrorCode::BadParams, "bad edge");
    adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
  }
  return adj;
}

}  // namespace detail

/// Certify (M1),(M2),(M3) of a Colin de Verdiere matrix for graph G.
inline CdVReport check_cdv(const Mat& M, const EdgeList& edges) {
  const int n = static_cast<int>(M.rows());
  if (M.rows() != M.cols()) throw Error(ErrorCode::SizeMismatch, "matrix not square");
  auto adj = detail::adjacency(n, edges);

  CdVReport rep;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double zeroTol = 1e-9 * scale;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool edge = adj[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const bool bad = edge ? !(M(i, j) < 0.0) : std::abs(M(i, j)) > zeroTol;
      if (bad) {
        rep.m1.pass = false;
        rep.m1.offending.emplace_back(i, j);
      }
    }
  }

  Spectrum s = spectrum(M);
  rep.corank = s.corank;
  int neg = 0;
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues[i] < -s.tolRank) ++neg;
  rep.m2.negativeCount = neg;
  rep.m2.lambda1 = s.eigenvalues[0];
  rep.m2.pass = (neg == 1);

  // (M3): X -> MX on symmetric matrices supported on non-edges with zero
  // diagonal must be injective.
  std::vector<std::pair<int, int>> nonEdges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!adj[static_cast<size_t>(i)][static_cast<size_t>(j)]) nonEdges.emplace_back(i, j);
  if (nonEdges.empty()) {
    rep.m3.pass = true;
    rep.m3.vacuous = true;
  } else {
    Mat A(n * n, static_cast<int>(nonEdges.size()));
    for (size_t c = 0; c < nonEdges.size(); ++c) {
      auto [i, j] = nonEdges[c];
      Mat MX = Mat::Zero(n, n);
      MX.col(j) += M.col(i);
      MX.col(i) += M.col(j);
      A.col(static_cast<int>(c)) = Eigen::Map<Vec>(MX.data(), n * n);
    }
    Eigen::BDCSVD<Mat> svd(A);
    const Vec& sv = svd.singularValues();
    rep.m3.smallestSingularValue = sv[sv.size() - 1];
    rep.m3.pass = rep.m3.smallestSingularValue > 1e-8 * std::max(1.0, sv[0]);
  }
  return rep;
}

/// Largest principal angle between the kernel of M and the column space of V.
inline KernelMatch kernel_match(const Spectrum& s, const Mat& V) {
  const int d = static_cast<int>(V.cols());
  if (s.corank != d)
    throw Error(ErrorCode::CorankMismatch,
                "corank " + std::to_string(s.corank) + " != d = " + std::to_string(d),
                s.corank, d);
  Mat K = kernel_basis(s);
  Eigen::HouseholderQR<Mat> qr(V);
  Mat Q2 = qr.householderQ() * Mat::Identity(static_cast<int>(V.rows()), d);
  Eigen::BDCSVD<Mat> svd(K.transpose() * Q2);
  double c = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  KernelMatch km;
  km.corank = s.corank;
  km.angle = std::acos(c);
  km.pass = km.angle < 1e-7;
  return km;
}

/// Spectral-gap bound lambda_1 <= -d(d-1) vol/||x||^2 with equality iff the
/// support vector is proportional to the volume gradient.
inline GapRecord gap_bound(const HPolytope& P, const Spectrum& s) {
  GapRecord g;
  const double d = P.dim;
  g.bound = -d * (d - 1.0) * volume(P) / P.support.squaredNorm();
  g.lambda1 = s.eigenvalues[0];
  g.holds = g.lambda1 <= g.bound + 1e-9 * std::abs(g.bound);
  const Vec grad = volume_gradient(P);
  g.fittedC = P.support.dot(grad) / grad.squaredNorm();
  g.equality = (P.support - g.fittedC * grad).cwiseAbs().maxCoeff() <= P.tolGeom();
  return g;
}

}  // namespace cdv
