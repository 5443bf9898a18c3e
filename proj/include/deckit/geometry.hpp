#ifndef DECKIT_GEOMETRY_HPP
#define DECKIT_GEOMETRY_HPP

#include <string>
#include <vector>

#include "deckit/simplicial.hpp"

namespace deckit {

struct Circumcenter {
  DenseVector barycentric;  // length p+1, sums to 1
  DenseVector point;        // embedding coordinates
  double radius = 0.0;
  double q = 0.0;  // auxiliary unknown of the linear system
};

/// Columns are the differentials dmu_j for j = 1..p; dmu_0 is minus their
/// sum. X^T V_0 = I_p within tolerance.
struct BarycentricDifferentials {
  Eigen::MatrixXd x;  // embedding dim x p

  DenseVector dmu(Index i) const {
    if (i == 0) return -x.rowwise().sum();
    return x.col(i - 1);
  }
  /// All differentials as columns 0..p.
  Eigen::MatrixXd all() const {
    Eigen::MatrixXd g(x.rows(), x.cols() + 1);
    g.col(0) = -x.rowwise().sum();
    g.rightCols(x.cols()) = x;
    return g;
  }
};

struct DualVolumes {
  std::vector<DenseVector> per_level;      // signed |*sigma| for p = 0..n
  std::vector<std::string> diagnostics;    // negative lower-codimension cells
};

/// Unsigned p-volume sqrt(det(V0^T V0))/p! of the simplex whose vertices
/// are the rows; 0 below the degeneracy cutoff, 1 for a single vertex.
double simplex_volume(const Eigen::MatrixXd& vertices);

/// Circumcenter via the (p+2)-order barycentric linear system. Degenerate
/// simplices are an error naming the simplex.
Circumcenter circumcenter(const Eigen::MatrixXd& vertices);

/// Barycentric differentials as the pseudoinverse of V0, switching to an
/// orthogonal factorization when the normal equations are ill-conditioned.
BarycentricDifferentials barycentric_differentials(const Eigen::MatrixXd& vertices);

/// Signed circumcentric dual volumes for every cell of every level via the
/// ascending-flag sum; top-level duals are 1. Requires a manifold complex;
/// boundary codimension-1 cells must satisfy the one-sided circumcenter
/// condition. Negative lower-codimension volumes are reported in
/// diagnostics, not errors.
DualVolumes dual_volumes(const SimplicialComplex& c);

struct GeometryReport {
  std::vector<std::string> diagnostics;
};

/// Fill circumcenters, primal volumes, and dual volumes on every level.
GeometryReport attach_geometry(SimplicialComplex& c);

}  // namespace deckit

#endif  // DECKIT_GEOMETRY_HPP
