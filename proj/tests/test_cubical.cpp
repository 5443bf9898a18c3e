#include <random>
#include <set>
#include <vector>

#include "deckit/cubical.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace deckit;
using helpers::dense_of;
using helpers::max_abs_diff;
using helpers::rows_of;
using helpers::same_rows;

namespace {

/// L-shaped bitmap: squares at corners (0,0), (1,0), (1,1).
Eigen::MatrixXi ell_bitmap() {
  Eigen::MatrixXi bitmap(2, 2);
  bitmap << 0, 1, 1, 1;
  return bitmap;
}

}  // namespace

TEST_CASE("bitmap_to_cubes reads a 2D bitmap in image convention") {
  const CubeArray c2 = bitmap_to_cubes(ell_bitmap());
  CHECK(c2.n == 2);
  CHECK(c2.p == 2);
  CHECK(same_rows(c2.rows, rows_of({{0, 0, 0, 1}, {1, 0, 0, 1}, {1, 1, 0, 1}})));

  const CubeArray flat = bitmap_to_cubes({2, 2}, {0, 1, 1, 1});
  CHECK(flat.count() == 3);  // C-order indexing, no row flip
  CHECK(same_rows(flat.rows, rows_of({{0, 1, 0, 1}, {1, 0, 0, 1}, {1, 1, 0, 1}})));

  CHECK_THROWS_WITH_AS(bitmap_to_cubes({2, 2}, {0, 0, 0, 0}),
                       "bitmap_to_cubes: all-zero bitmap", std::invalid_argument);
  CHECK_THROWS_AS(bitmap_to_cubes({2}, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bitmap_to_cubes(Eigen::MatrixXi()), std::invalid_argument);
}

TEST_CASE("cube_boundary_faces reproduces the L-mesh edge and vertex tables") {
  const CubeArray c2 = bitmap_to_cubes(ell_bitmap());
  const CubeBoundaryFaces edges = cube_boundary_faces(c2);
  CHECK(edges.faces.p == 1);
  CHECK(same_rows(edges.faces.rows, rows_of({{0, 0, 0},
                                             {0, 0, 1},
                                             {0, 1, 0},
                                             {1, 0, 0},
                                             {1, 0, 1},
                                             {1, 1, 0},
                                             {1, 1, 1},
                                             {1, 2, 0},
                                             {2, 0, 1},
                                             {2, 1, 1}})));
  const Eigen::MatrixXd b2 = dense_of({{1, 0, 0},
                                       {-1, 0, 0},
                                       {-1, 0, 0},
                                       {0, 1, 0},
                                       {1, -1, 0},
                                       {0, -1, 1},
                                       {0, 0, -1},
                                       {0, 0, -1},
                                       {0, 1, 0},
                                       {0, 0, 1}});
  CHECK(max_abs_diff(to_dense(edges.boundary), b2) == 0.0);
  CHECK(is_canonical(edges.boundary));

  const CubeBoundaryFaces points = cube_boundary_faces(edges.faces);
  CHECK(points.faces.p == 0);
  CHECK(same_rows(points.faces.rows, rows_of({{0, 0},
                                              {0, 1},
                                              {1, 0},
                                              {1, 1},
                                              {1, 2},
                                              {2, 0},
                                              {2, 1},
                                              {2, 2}})));
  CHECK_THROWS_AS(cube_boundary_faces(points.faces), std::invalid_argument);
}

TEST_CASE("square boundary follows the alternating corner-shift formula") {
  CubeArray square;
  square.n = 2;
  square.p = 2;
  square.rows = rows_of({{10, 20, 0, 1}});
  const CubeBoundaryFaces bf = cube_boundary_faces(square);
  // boundary = [(11,20)(1)] - [(10,20)(1)] - [(10,21)(0)] + [(10,20)(0)]
  CHECK(same_rows(bf.faces.rows,
                  rows_of({{10, 20, 0}, {10, 20, 1}, {10, 21, 0}, {11, 20, 1}})));
  CHECK(max_abs_diff(to_dense(bf.boundary), dense_of({{1}, {-1}, {-1}, {1}})) == 0.0);
}

TEST_CASE("build_cube_complex cascades the L-mesh and kills boundary twice") {
  const CubeComplex c = build_cube_complex(ell_bitmap());
  REQUIRE(c.dim() == 2);
  CHECK(c.count(0) == 8);
  CHECK(c.count(1) == 10);
  CHECK(c.count(2) == 3);
  CHECK(spgemm(c.levels[1].boundary, c.levels[2].boundary).nnz() == 0);
  CHECK(c.levels[0].boundary.rows == 1);
  CHECK(c.levels[0].boundary.nnz() == 0);

  // Edge boundaries: head minus tail vertex.
  const Eigen::MatrixXd b1 = to_dense(c.levels[1].boundary);
  for (Index e = 0; e < c.count(1); ++e) {
    CHECK(b1.col(e).sum() == 0.0);
    CHECK(b1.col(e).cwiseAbs().sum() == 2.0);
  }
}

TEST_CASE("cube face counts match the subset-enumeration oracle") {
  std::mt19937 gen(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 2);  // alternate 2D / 3D
    const Index side = 2 + static_cast<Index>(gen() % 2);
    std::vector<Index> shape(n, side);
    Index total = 1;
    for (const Index s : shape) total *= s;
    std::vector<int> bits(total, 0);
    Index on = 0;
    for (auto& b : bits)
      if (gen() % 2) {
        b = 1;
        ++on;
      }
    if (on == 0) {
      bits[0] = 1;
      ++on;
    }
    const CubeArray top = bitmap_to_cubes(shape, bits);
    REQUIRE(top.count() == on);
    const CubeComplex c = build_cube_complex(top);
    const auto expected = oracles::cube_faces(n, helpers::rows_as_vectors(top.rows));
    for (Index p = 0; p <= n; ++p) {
      CHECK(c.count(p) == static_cast<Index>(expected[p].size()));
      CHECK(helpers::rows_as_vectors(c.levels[p].cells.rows) == expected[p]);
    }
    for (Index p = 1; p < n; ++p)
      CHECK(spgemm(c.levels[p].boundary, c.levels[p + 1].boundary).nnz() == 0);
  }
}

TEST_CASE("solid 3D bitmap has the cell counts of a cubes-and-faces grid") {
  const CubeComplex c = build_cube_complex(bitmap_to_cubes({2, 2, 2}, std::vector<int>(8, 1)));
  REQUIRE(c.dim() == 3);
  CHECK(c.count(0) == 27);
  CHECK(c.count(1) == 54);
  CHECK(c.count(2) == 36);
  CHECK(c.count(3) == 8);
  const Index chi = c.count(0) - c.count(1) + c.count(2) - c.count(3);
  CHECK(chi == 1);  // solid cube is contractible
  CHECK(spgemm(c.levels[1].boundary, c.levels[2].boundary).nnz() == 0);
  CHECK(spgemm(c.levels[2].boundary, c.levels[3].boundary).nnz() == 0);
}

TEST_CASE("build_cube_complex rejects duplicates and empty input") {
  CubeArray dup;
  dup.n = 2;
  dup.p = 2;
  dup.rows = rows_of({{0, 0, 0, 1}, {0, 0, 0, 1}});
  CHECK_THROWS_WITH_AS(build_cube_complex(dup),
                       "build_cube_complex: duplicate cubes in rows 0 and 1",
                       std::invalid_argument);
  CubeArray empty;
  empty.n = 2;
  empty.p = 2;
  empty.rows.resize(0, 4);
  CHECK_THROWS_AS(build_cube_complex(empty), std::invalid_argument);
}
