#include "deckit/simplicial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace deckit {

namespace {

struct ExpandedFace {
  std::vector<Index> face;
  Index parent = 0;
  double sign = 1.0;
};

}  // namespace

ParityTaggedSimplexArray canonical_format(const SimplexArray& s) {
  ParityTaggedSimplexArray out;
  out.rows = s.rows;
  out.parity.assign(s.count(), 1);
  out.source_index.resize(s.count());
  const Index width = s.rows.cols();
  for (Index r = 0; r < s.count(); ++r) {
    out.source_index[r] = r;
    // Insertion sort; the swap count gives the permutation parity.
    Index swaps = 0;
    for (Index i = 1; i < width; ++i) {
      const Index v = out.rows(r, i);
      Index j = i;
      while (j > 0 && out.rows(r, j - 1) > v) {
        out.rows(r, j) = out.rows(r, j - 1);
        --j;
        ++swaps;
      }
      out.rows(r, j) = v;
    }
    for (Index i = 1; i < width; ++i)
      if (out.rows(r, i) == out.rows(r, i - 1))
        throw std::invalid_argument("canonical_format: repeated vertex " +
                                    std::to_string(out.rows(r, i)) + " in row " +
                                    std::to_string(r));
    out.parity[r] = (swaps % 2 == 0) ? 1 : -1;
  }
  return out;
}

BoundaryFaces boundary_faces(const ParityTaggedSimplexArray& s_plus) {
  const Index np = s_plus.count();
  const Index width = s_plus.rows.cols();
  const Index p = width - 1;
  BoundaryFaces out;
  if (p == 0) {
    out.faces.p = 0;
    out.faces.rows.resize(0, 1);
    out.boundary = SparseMatrixd::zero(1, np);
    return out;
  }

  std::vector<ExpandedFace> expanded;
  expanded.reserve(static_cast<std::size_t>(np * width));
  for (Index r = 0; r < np; ++r)
    for (Index i = 0; i < width; ++i) {
      ExpandedFace e;
      e.face.reserve(width - 1);
      for (Index c = 0; c < width; ++c)
        if (c != i) e.face.push_back(s_plus.rows(r, c));
      e.parent = r;
      e.sign = s_plus.parity[r] * ((i % 2 == 0) ? 1.0 : -1.0);
      expanded.push_back(std::move(e));
    }
  // Sorting by (face, parent) keeps column indices strictly increasing
  // within each CSR row of the boundary.
  std::sort(expanded.begin(), expanded.end(),
            [](const ExpandedFace& a, const ExpandedFace& b) {
              if (a.face != b.face) return a.face < b.face;
              return a.parent < b.parent;
            });

  std::vector<std::vector<Index>> faces;
  SparseMatrixd& b = out.boundary;
  b.cols = np;
  std::vector<Index> counts;
  for (const ExpandedFace& e : expanded) {
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

  out.faces.p = p - 1;
  out.faces.rows.resize(static_cast<Index>(faces.size()), width - 1);
  for (Index r = 0; r < out.faces.rows.rows(); ++r)
    for (Index c = 0; c < width - 1; ++c) out.faces.rows(r, c) = faces[r][c];
  return out;
}

SimplicialComplex build_complex(const Eigen::MatrixXd& vertices,
                                const SimplexArray& top_simplices) {
  if (top_simplices.count() == 0)
    throw std::invalid_argument("build_complex: empty simplex array");
  const Index n0 = vertices.rows();
  for (Index r = 0; r < top_simplices.count(); ++r)
    for (Index c = 0; c < top_simplices.rows.cols(); ++c) {
      const Index v = top_simplices.rows(r, c);
      if (v < 0 || v >= n0)
        throw std::invalid_argument("build_complex: vertex index " +
                                    std::to_string(v) + " out of range in row " +
                                    std::to_string(r));
    }

  ParityTaggedSimplexArray top = canonical_format(top_simplices);
  {
    std::map<std::vector<Index>, Index> seen;
    for (Index r = 0; r < top.count(); ++r) {
      std::vector<Index> key(top.rows.row(r).begin(), top.rows.row(r).end());
      const auto [it, inserted] = seen.emplace(std::move(key), r);
      if (!inserted)
        throw std::invalid_argument(
            "build_complex: duplicate top simplices in rows " +
            std::to_string(it->second) + " and " + std::to_string(r));
    }
  }

  const Index n = top_simplices.rows.cols() - 1;
  SimplicialComplex c;
  c.vertices = vertices;
  c.levels.resize(n + 1);
  c.levels[n].cells.p = n;
  c.levels[n].cells.rows = top.rows;
  c.levels[n].parity = top.parity;

  ParityTaggedSimplexArray current = std::move(top);
  for (Index p = n; p >= 1; --p) {
    BoundaryFaces bf = boundary_faces(current);
    c.levels[p].boundary = std::move(bf.boundary);
    if (p - 1 > 0) {
      c.levels[p - 1].cells = std::move(bf.faces);
      c.levels[p - 1].parity.assign(c.levels[p - 1].cells.count(), 1);
      current.rows = c.levels[p - 1].cells.rows;
      current.parity.assign(current.rows.rows(), 1);
      current.source_index.resize(current.rows.rows());
      for (Index i = 0; i < current.rows.rows(); ++i) current.source_index[i] = i;
    } else {
      // Remap rows of boundary_1 from cascade order to vertex ids so every
      // vertex owns a row even when unused.
      SparseMatrixd remapped = SparseMatrixd::zero(n0, c.levels[1].boundary.cols);
      const SparseMatrixd& old = c.levels[1].boundary;
      remapped.indices = old.indices;
      remapped.data = old.data;
      for (Index k = 0; k < bf.faces.count(); ++k) {
        const Index vertex = bf.faces.rows(k, 0);
        remapped.ptr[vertex + 1] = old.ptr[k + 1] - old.ptr[k];
      }
      for (Index v = 0; v < n0; ++v) remapped.ptr[v + 1] += remapped.ptr[v];
      c.levels[1].boundary = std::move(remapped);
    }
  }

  c.levels[0].cells.p = 0;
  c.levels[0].cells.rows.resize(n0, 1);
  for (Index v = 0; v < n0; ++v) c.levels[0].cells.rows(v, 0) = v;
  c.levels[0].parity.assign(n0, 1);
  c.levels[0].boundary = SparseMatrixd::zero(1, n0);
  return c;
}

SparseMatrixd coboundary(const SimplicialComplex& c, Index p) {
  if (p < 0 || p >= c.dim())
    throw std::invalid_argument("coboundary: dimension " + std::to_string(p) +
                                " out of range for a " + std::to_string(c.dim()) +
                                "-complex");
  return transpose(c.levels[p + 1].boundary);
}

}  // namespace deckit
