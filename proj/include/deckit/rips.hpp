#ifndef DECKIT_RIPS_HPP
#define DECKIT_RIPS_HPP

#include <utility>
#include <vector>

#include "deckit/abstract.hpp"
#include "deckit/simplicial.hpp"

namespace deckit {

/// Vietoris-Rips complex of a point cloud: skeleton arrays plus the
/// boundary machinery of the abstract complex built from them.
struct RipsComplex {
  Eigen::MatrixXd points;
  double radius = 0.0;
  SparseMatrixd edge_graph;  // E(i,j) = 1 for every edge i < j
  AbstractComplex complex;

  const SimplexArray& skeleton(Index p) const { return complex.levels[p].cells; }
  const SparseMatrixd& boundary(Index p) const { return complex.levels[p].boundary; }
  Index dim() const { return complex.dim(); }
};

/// All unordered pairs within distance r (inclusive; compared as squared
/// distances), rows (i, j) with i < j in lexicographic order, plus the
/// upper-triangular 0/1 edge graph E.
std::pair<SimplexArray, SparseMatrixd> rips_skeleton1(const Eigen::MatrixXd& points,
                                                      double r);

/// One extension step: F_p from s_p, the product F_p E, and a row
/// sorted(simplex_i, j) for every entry (i, j) equal to p + 1.
SimplexArray rips_extend(const SimplexArray& s_p, const SparseMatrixd& e);

/// Skeletons up to max_dim (or until empty) with boundary operators.
RipsComplex build_rips(const Eigen::MatrixXd& points, double r, Index max_dim);

}  // namespace deckit

#endif  // DECKIT_RIPS_HPP
