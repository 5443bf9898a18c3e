#include "deckit/cubical.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deckit {

namespace {

struct ExpandedCubeFace {
  std::vector<Index> face;  // corner coords followed by directions
  Index parent = 0;
  double sign = 1.0;
};

void validate_canonical(const CubeArray& c, const char* who) {
  if (c.rows.cols() != c.n + c.p)
    throw std::invalid_argument(std::string(who) + ": row width " +
                                std::to_string(c.rows.cols()) +
                                " disagrees with n + p");
  for (Index r = 0; r < c.count(); ++r)
    for (Index k = 1; k < c.p; ++k)
      if (c.rows(r, c.n + k) <= c.rows(r, c.n + k - 1))
        throw std::invalid_argument(std::string(who) +
                                    ": directions not ascending in row " +
                                    std::to_string(r));
}

}  // namespace

CubeArray bitmap_to_cubes(const std::vector<Index>& shape,
                          const std::vector<int>& bits) {
  if (shape.empty()) throw std::invalid_argument("bitmap_to_cubes: empty shape");
  Index total = 1;
  for (const Index s : shape) {
    if (s <= 0) throw std::invalid_argument("bitmap_to_cubes: nonpositive extent");
    total *= s;
  }
  if (static_cast<Index>(bits.size()) != total)
    throw std::invalid_argument("bitmap_to_cubes: " + std::to_string(bits.size()) +
                                " bits for shape of size " + std::to_string(total));
  const Index n = static_cast<Index>(shape.size());
  std::vector<std::vector<Index>> rows;
  std::vector<Index> idx(n, 0);
  // C-order scan emits corner rows in lexicographic order.
  for (Index flat = 0; flat < total; ++flat) {
    if (bits[flat]) {
      std::vector<Index> row(idx);
      for (Index d = 0; d < n; ++d) row.push_back(d);
      rows.push_back(std::move(row));
    }
    for (Index d = n - 1; d >= 0; --d) {
      if (++idx[d] < shape[d]) break;
      idx[d] = 0;
    }
  }
  if (rows.empty()) throw std::invalid_argument("bitmap_to_cubes: all-zero bitmap");
  CubeArray out;
  out.n = n;
  out.p = n;
  out.rows.resize(static_cast<Index>(rows.size()), 2 * n);
  for (Index r = 0; r < out.count(); ++r)
    for (Index c = 0; c < 2 * n; ++c) out.rows(r, c) = rows[r][c];
  return out;
}

CubeArray bitmap_to_cubes(const Eigen::MatrixXi& bitmap) {
  if (bitmap.size() == 0) throw std::invalid_argument("bitmap_to_cubes: empty bitmap");
  std::vector<std::vector<Index>> rows;
  // Image convention: matrix row r from the top, column c, maps to corner
  // (c, rows - 1 - r); scanning y descending then x ascending is not
  // lexicographic, so collect and sort.
  for (Index r = 0; r < bitmap.rows(); ++r)
    for (Index c = 0; c < bitmap.cols(); ++c)
      if (bitmap(r, c)) rows.push_back({c, bitmap.rows() - 1 - r, 0, 1});
  if (rows.empty()) throw std::invalid_argument("bitmap_to_cubes: all-zero bitmap");
  std::sort(rows.begin(), rows.end());
  CubeArray out;
  out.n = 2;
  out.p = 2;
  out.rows.resize(static_cast<Index>(rows.size()), 4);
  for (Index r = 0; r < out.count(); ++r)
    for (Index c = 0; c < 4; ++c) out.rows(r, c) = rows[r][c];
  return out;
}

CubeBoundaryFaces cube_boundary_faces(const CubeArray& cubes) {
  if (cubes.p == 0)
    throw std::invalid_argument("cube_boundary_faces: 0-cubes have no faces");
  validate_canonical(cubes, "cube_boundary_faces");
  const Index n = cubes.n;
  const Index p = cubes.p;

  std::vector<ExpandedCubeFace> expanded;
  expanded.reserve(static_cast<std::size_t>(2 * p * cubes.count()));
  for (Index r = 0; r < cubes.count(); ++r)
    for (Index i = 0; i < p; ++i) {
      const Index dir = cubes.rows(r, n + i);
      const double alt = (i % 2 == 0) ? 1.0 : -1.0;
      for (const bool shifted : {false, true}) {
        ExpandedCubeFace e;
        e.face.reserve(n + p - 1);
        for (Index c = 0; c < n; ++c)
          e.face.push_back(cubes.rows(r, c) + ((shifted && c == dir) ? 1 : 0));
        for (Index k = 0; k < p; ++k)
          if (k != i) e.face.push_back(cubes.rows(r, n + k));
        e.parent = r;
        e.sign = shifted ? alt : -alt;
        expanded.push_back(std::move(e));
      }
    }
  std::sort(expanded.begin(), expanded.end(),
            [](const ExpandedCubeFace& a, const ExpandedCubeFace& b) {
              if (a.face != b.face) return a.face < b.face;
              return a.parent < b.parent;
            });

  CubeBoundaryFaces out;
  std::vector<std::vector<Index>> faces;
  std::vector<Index> counts;
  SparseMatrixd& b = out.boundary;
  b.cols = cubes.count();
  for (const ExpandedCubeFace& e : expanded) {
    if (faces.empty() || faces.back() != e.face) {
      faces.push_back(e.face);
      counts.push_back(0);
    }
    b.indices.push_back(e.parent);
    b.data.push_back(e.sign);
    ++counts.back();
  }
  b.rows = static_cast<Index>(faces.size());
  b.ptr.assign(faces.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) b.ptr[i + 1] = b.ptr[i] + counts[i];

  out.faces.n = n;
  out.faces.p = p - 1;
  out.faces.rows.resize(static_cast<Index>(faces.size()), n + p - 1);
  for (Index r = 0; r < out.faces.count(); ++r)
    for (Index c = 0; c < n + p - 1; ++c) out.faces.rows(r, c) = faces[r][c];
  return out;
}

CubeComplex build_cube_complex(const CubeArray& top) {
  if (top.count() == 0) throw std::invalid_argument("build_cube_complex: empty cube array");
  validate_canonical(top, "build_cube_complex");
  {
    std::map<std::vector<Index>, Index> seen;
    for (Index r = 0; r < top.count(); ++r) {
      std::vector<Index> key(top.rows.row(r).begin(), top.rows.row(r).end());
      const auto [it, inserted] = seen.emplace(std::move(key), r);
      if (!inserted)
        throw std::invalid_argument("build_cube_complex: duplicate cubes in rows " +
                                    std::to_string(it->second) + " and " +
                                    std::to_string(r));
    }
  }
  CubeComplex out;
  out.n = top.n;
  out.levels.resize(top.p + 1);
  out.levels[top.p].cells = top;
  for (Index p = top.p; p >= 1; --p) {
    CubeBoundaryFaces bf = cube_boundary_faces(out.levels[p].cells);
    out.levels[p].boundary = std::move(bf.boundary);
    out.levels[p - 1].cells = std::move(bf.faces);
  }
  out.levels[0].boundary = SparseMatrixd::zero(1, out.levels[0].cells.count());
  return out;
}

CubeComplex build_cube_complex(const Eigen::MatrixXi& bitmap) {
  return build_cube_complex(bitmap_to_cubes(bitmap));
}

}  // namespace deckit
