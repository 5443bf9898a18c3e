#ifndef DECKIT_DEC_HPP
#define DECKIT_DEC_HPP

#include <string>
#include <vector>

#include "deckit/geometry.hpp"
#include "deckit/simplicial.hpp"

namespace deckit {

struct Cochain {
  Index p = 0;
  bool primal = true;
  DenseVector values;
};

struct MassMatrix {
  Index p = 0;
  SparseMatrixd matrix;  // symmetric positive definite
};

/// Instrumentation for the unique-determinant assembly.
struct MassCounters {
  Index top_simplices = 0;
  Index determinant_evaluations = 0;
};

/// Diagonal circumcentric Hodge star, entries |*sigma|/|sigma|. The
/// inverse carries the sign (-1)^{p(n-p)} so that inverse * star equals
/// (-1)^{p(n-p)} I.
struct HodgeStar {
  Index p = 0;
  Index n = 0;
  DenseVector diagonal;

  DenseVector inverse_diagonal() const {
    const double sign = ((p * (n - p)) % 2 == 0) ? 1.0 : -1.0;
    return sign * diagonal.cwiseInverse();
  }
};

struct HodgeDecomposition {
  Cochain d_alpha, delta_beta, harmonic;
  SolveResult alpha_solve, beta_solve;
  bool converged = false;
};

/// Unique determinants per top simplex in the M_p assembly:
/// (C(n+1,p)^2 + C(n+1,p)) / 2.
Index unique_determinant_count(Index n, Index p);

/// Determinants per top simplex without caching:
/// (C(n+1,p+1)^2 + C(n+1,p+1)) / 2 * C(n,p)^2.
Index naive_determinant_count(Index n, Index p);

/// Exact integral of mu_a mu_b over the simplex:
/// 2|sigma|/((n+1)(n+2)) when a = b, |sigma|/((n+1)(n+2)) otherwise.
double barycentric_moment_integral(double volume, Index n, Index a, Index b);
double barycentric_moment_integral(const Eigen::MatrixXd& simplex_vertices,
                                   Index a, Index b);

/// Whitney inner product matrix assembled per top simplex with one
/// determinant evaluation per unordered subset pair; p = n is the diagonal
/// 1/|sigma| shortcut.
MassMatrix whitney_mass_matrix(const SimplicialComplex& c, Index p,
                               MassCounters* counters = nullptr);

/// Stiffness d_p^T M_{p+1} d_p.
SparseMatrixd whitney_stiffness(const SimplicialComplex& c, Index p);

/// Diagonal star from attached geometry. Negative dual volumes are a
/// diagnostic error naming the offending cells.
HodgeStar dec_hodge_star(const SimplicialComplex& c, Index p);

/// delta_{p+1} = (-1)^{np+1} star_p^{-1} d_p^T star_{p+1} for diagonal
/// stars, as an explicit sparse matrix.
SparseMatrixd codifferential(const HodgeStar& star_p, const HodgeStar& star_p1,
                             const SparseMatrixd& d_p);

/// Codifferential against Whitney mass matrices: applies
/// (-1)^{np+1+p(n-p)} M_p^{-1} d_p^T M_{p+1} by conjugate-gradient solves
/// with M_p instead of forming the inverse.
class WhitneyCodifferential {
 public:
  WhitneyCodifferential(MassMatrix mass_p, MassMatrix mass_p1, SparseMatrixd d_p,
                        Index n, double tol = 1e-12);
  DenseVector apply(const DenseVector& x) const;
  const SolveResult& last_solve() const { return last_; }

 private:
  MassMatrix mass_p_, mass_p1_;
  SparseMatrixd boundary_;  // d_p^T
  double sign_ = 1.0;
  double tol_;
  mutable SolveResult last_;
};

/// Laplace-deRham with circumcentric stars:
/// d_p^T s_{p+1} d_p + s_p d_{p-1} s_{p-1}^{-1} d_{p-1}^T s_p,
/// dropping the term that is undefined at p = 0 or p = n.
SparseMatrixd laplace_derham(const SimplicialComplex& c, Index p);

/// Metric-free variant for Rips and abstract complexes:
/// boundary_1^T boundary_1 + boundary_2 boundary_2^T.
SparseMatrixd combinatorial_laplacian1(const SparseMatrixd& boundary1,
                                       const SparseMatrixd& boundary2);

/// Split omega into d alpha + delta beta + h with two singular-consistent
/// conjugate-gradient solves; only the level-p star enters (the adjacent
/// stars cancel in the assembled systems). Pass d_prev = nullptr at p = 0
/// and d_cur = nullptr at p = n; identity star gives the combinatorial
/// decomposition.
HodgeDecomposition hodge_decompose(const Cochain& omega,
                                   const SparseMatrixd* d_prev,
                                   const SparseMatrixd* d_cur,
                                   const DenseVector& star_p,
                                   double tol = 1e-10);

/// Whitney 1-form of the cochain evaluated at every top-simplex
/// barycenter; one embedding-dim vector per row.
Eigen::MatrixXd whitney_interpolate_at_barycenters(const SimplicialComplex& c,
                                                   const Cochain& u);

}  // namespace deckit

#endif  // DECKIT_DEC_HPP
