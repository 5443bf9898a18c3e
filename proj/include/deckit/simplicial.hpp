#ifndef DECKIT_SIMPLICIAL_HPP
#define DECKIT_SIMPLICIAL_HPP

#include <vector>

#include "deckit/sparse.hpp"

namespace deckit {

using IndexMatrix =
    Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Simplices of one dimension, one row of p+1 vertex indices per simplex.
/// Derived-face arrays have strictly increasing rows in lexicographic order
/// with no duplicates.
struct SimplexArray {
  Index p = 0;
  IndexMatrix rows;  // shape N_p x (p+1)

  Index count() const { return rows.rows(); }
};

/// Canonically sorted simplices with the permutation parity and the
/// originating row of each.
struct ParityTaggedSimplexArray {
  IndexMatrix rows;                 // sorted vertex columns
  std::vector<int> parity;          // +1 or -1 per row
  std::vector<Index> source_index;  // original row ids

  Index count() const { return rows.rows(); }
};

/// Per-dimension bundle of a complex. Geometry fields are empty until
/// attach_geometry fills them.
struct ComplexLevel {
  SimplexArray cells;
  std::vector<int> parity;      // top level: canonicalization parity; else +1
  SparseMatrixd boundary;       // boundary_p, shape N_{p-1} x N_p (1 x N_0 zero at p=0)
  Eigen::MatrixXd circumcenters;  // N_p x embedding dim
  DenseVector primal_volumes;
  DenseVector dual_volumes;
};

struct SimplicialComplex {
  Eigen::MatrixXd vertices;          // N_0 x embedding dim
  std::vector<ComplexLevel> levels;  // p = 0..n

  Index dim() const { return static_cast<Index>(levels.size()) - 1; }
  Index embedding_dim() const { return vertices.cols(); }
  Index count(Index p) const { return levels[p].cells.count(); }
};

struct BoundaryFaces {
  SimplexArray faces;
  SparseMatrixd boundary;
};

/// Sort each row ascending, recording the permutation parity by
/// insertion-sort swap count. A repeated vertex in a row is an error.
ParityTaggedSimplexArray canonical_format(const SimplexArray& s);

/// Faces and boundary operator of one level via the column-deletion,
/// lexicographic-sort, CSR-extraction pipeline. For p = 0 input the
/// boundary is the 1 x N_0 zero matrix and the face array is empty.
BoundaryFaces boundary_faces(const ParityTaggedSimplexArray& s_plus);

/// Full complex from embedded vertices and top simplices: canonicalizes the
/// top level, then cascades boundary_faces down to the vertices.
SimplicialComplex build_complex(const Eigen::MatrixXd& vertices,
                                const SimplexArray& top_simplices);

/// d_p = transpose(boundary_{p+1}), shape N_{p+1} x N_p.
SparseMatrixd coboundary(const SimplicialComplex& c, Index p);

}  // namespace deckit

#endif  // DECKIT_SIMPLICIAL_HPP
