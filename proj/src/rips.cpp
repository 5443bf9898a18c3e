#include "deckit/rips.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deckit {

namespace {

using Pair = std::pair<Index, Index>;

std::vector<Pair> pairs_within(const Eigen::MatrixXd& points, double r) {
  const Index n = points.rows();
  const double r2 = r * r;
  std::vector<Pair> pairs;
  const Index dim = points.cols();
  if (dim > 3 || n < 64) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if ((points.row(i) - points.row(j)).squaredNorm() <= r2)
          pairs.emplace_back(i, j);
    return pairs;
  }
  // Uniform grid with cell edge r: candidate mates live in adjacent cells.
  std::map<std::vector<Index>, std::vector<Index>> grid;
  std::vector<std::vector<Index>> keys(n);
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> key(dim);
    for (Index d = 0; d < dim; ++d)
      key[d] = static_cast<Index>(std::floor(points(i, d) / r));
    grid[key].push_back(i);
    keys[i] = std::move(key);
  }
  std::vector<Index> neighbor(dim);
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> offset(dim, -1);
    while (true) {
      for (Index d = 0; d < dim; ++d) neighbor[d] = keys[i][d] + offset[d];
      const auto it = grid.find(neighbor);
      if (it != grid.end())
        for (const Index j : it->second)
          if (j > i && (points.row(i) - points.row(j)).squaredNorm() <= r2)
            pairs.emplace_back(i, j);
      Index d = 0;
      for (; d < dim; ++d) {
        if (++offset[d] <= 1) break;
        offset[d] = -1;
      }
      if (d == dim) break;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

std::pair<SimplexArray, SparseMatrixd> rips_skeleton1(const Eigen::MatrixXd& points,
                                                      double r) {
  if (points.rows() == 0)
    throw std::invalid_argument("rips_skeleton1: no points");
  if (r <= 0.0) throw std::invalid_argument("rips_skeleton1: radius must be positive");
  const std::vector<Pair> pairs = pairs_within(points, r);

  SimplexArray s1;
  s1.p = 1;
  s1.rows.resize(static_cast<Index>(pairs.size()), 2);
  SparseMatrixd e = SparseMatrixd::zero(points.rows(), points.rows());
  e.indices.reserve(pairs.size());
  e.data.assign(pairs.size(), 1.0);
  for (Index k = 0; k < static_cast<Index>(pairs.size()); ++k) {
    s1.rows(k, 0) = pairs[k].first;
    s1.rows(k, 1) = pairs[k].second;
    ++e.ptr[pairs[k].first + 1];
    e.indices.push_back(pairs[k].second);
  }
  for (Index i = 0; i < e.rows; ++i) e.ptr[i + 1] += e.ptr[i];
  return {std::move(s1), std::move(e)};
}

SimplexArray rips_extend(const SimplexArray& s_p, const SparseMatrixd& e) {
  SimplexArray out;
  out.p = s_p.p + 1;
  out.rows.resize(0, s_p.p + 2);
  if (s_p.count() == 0) return out;

  const Index width = s_p.rows.cols();
  SparseMatrixd f = SparseMatrixd::zero(s_p.count(), e.rows);
  f.indices.reserve(s_p.count() * width);
  f.data.assign(static_cast<std::size_t>(s_p.count() * width), 1.0);
  for (Index i = 0; i < s_p.count(); ++i) {
    f.ptr[i + 1] = f.ptr[i] + width;
    for (Index c = 0; c < width; ++c) f.indices.push_back(s_p.rows(i, c));
  }

  const SparseMatrixd product = spgemm(f, e);
  const double threshold = static_cast<double>(width);
  std::vector<std::pair<Index, Index>> hits;
  for (Index i = 0; i < product.rows; ++i)
    for (Index k = product.ptr[i]; k < product.ptr[i + 1]; ++k)
      if (product.data[k] == threshold) hits.emplace_back(i, product.indices[k]);

  out.rows.resize(static_cast<Index>(hits.size()), width + 1);
  for (Index r = 0; r < out.count(); ++r) {
    // E is upper triangular, so the new vertex exceeds every simplex vertex
    // and appending keeps the row sorted; row-major scan order keeps the
    // array lexicographically sorted and unique.
    out.rows.row(r).head(width) = s_p.rows.row(hits[r].first);
    out.rows(r, width) = hits[r].second;
  }
  return out;
}

RipsComplex build_rips(const Eigen::MatrixXd& points, double r, Index max_dim) {
  if (max_dim < 1) throw std::invalid_argument("build_rips: max_dim must be >= 1");
  RipsComplex out;
  out.points = points;
  out.radius = r;

  auto [s1, e] = rips_skeleton1(points, r);
  out.edge_graph = std::move(e);

  std::vector<SimplexArray> lists;
  SimplexArray s0;
  s0.p = 0;
  s0.rows.resize(points.rows(), 1);
  for (Index i = 0; i < points.rows(); ++i) s0.rows(i, 0) = i;
  lists.push_back(std::move(s0));

  SimplexArray current = std::move(s1);
  while (current.count() > 0) {
    lists.push_back(current);
    if (current.p >= max_dim) break;
    current = rips_extend(current, out.edge_graph);
  }
  out.complex = build_abstract(lists);
  return out;
}

}  // namespace deckit
