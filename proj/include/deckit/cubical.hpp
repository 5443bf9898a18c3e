#ifndef DECKIT_CUBICAL_HPP
#define DECKIT_CUBICAL_HPP

#include <vector>

#include "deckit/simplicial.hpp"

namespace deckit {

/// p-cubes in an n-dimensional unit grid. Each row holds the n integer
/// corner coordinates followed by the p spanned direction indices in
/// ascending order.
struct CubeArray {
  Index n = 0;
  Index p = 0;
  IndexMatrix rows;  // shape N_p x (n + p)

  Index count() const { return rows.rows(); }
};

struct CubeLevel {
  CubeArray cells;
  SparseMatrixd boundary;  // 1 x N_0 zero at p = 0
};

struct CubeComplex {
  Index n = 0;
  std::vector<CubeLevel> levels;  // p = 0..n

  Index dim() const { return static_cast<Index>(levels.size()) - 1; }
  Index count(Index p) const { return levels[p].cells.count(); }
};

struct CubeBoundaryFaces {
  CubeArray faces;
  SparseMatrixd boundary;
};

/// Top cubes of an n-dimensional 0/1 bitmap in C order: one row per on-bit,
/// corner = bit multi-index, directions 0..n-1. All-zero bitmaps are an
/// error.
CubeArray bitmap_to_cubes(const std::vector<Index>& shape,
                          const std::vector<int>& bits);

/// 2D overload with image convention: matrix row r (top to bottom), column
/// c maps to corner (c, rows - 1 - r).
CubeArray bitmap_to_cubes(const Eigen::MatrixXi& bitmap);

/// 2p faces per p-cube by the alternating-sum formula (shifted face +, in
/// place face -, times (-1)^i for the omitted direction), then sort and
/// extract unique faces and the CSR boundary. p = 0 is an error.
CubeBoundaryFaces cube_boundary_faces(const CubeArray& c);

/// Cascade from a canonical top cube array down to corners; boundary_0 is
/// the 1 x N_0 zero matrix.
CubeComplex build_cube_complex(const CubeArray& top);
CubeComplex build_cube_complex(const Eigen::MatrixXi& bitmap);

}  // namespace deckit

#endif  // DECKIT_CUBICAL_HPP
