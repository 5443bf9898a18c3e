#ifndef DECKIT_TESTS_HELPERS_HPP
#define DECKIT_TESTS_HELPERS_HPP

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "deckit/simplicial.hpp"
#include "deckit/sparse.hpp"

namespace helpers {

inline std::string fixture(const std::string& name) {
  return std::string(DECKIT_FIXTURE_DIR) + "/" + name;
}

inline deckit::IndexMatrix rows_of(
    std::initializer_list<std::initializer_list<deckit::Index>> data) {
  const deckit::Index r = static_cast<deckit::Index>(data.size());
  const deckit::Index c = static_cast<deckit::Index>(data.begin()->size());
  deckit::IndexMatrix m(r, c);
  deckit::Index i = 0;
  for (const auto& row : data) {
    deckit::Index j = 0;
    for (const auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline deckit::SimplexArray simplices(
    std::initializer_list<std::initializer_list<deckit::Index>> data) {
  deckit::SimplexArray s;
  s.rows = rows_of(data);
  s.p = s.rows.cols() - 1;
  return s;
}

inline Eigen::MatrixXd dense_of(
    std::initializer_list<std::initializer_list<double>> data) {
  const deckit::Index r = static_cast<deckit::Index>(data.size());
  const deckit::Index c = static_cast<deckit::Index>(data.begin()->size());
  Eigen::MatrixXd m(r, c);
  deckit::Index i = 0;
  for (const auto& row : data) {
    deckit::Index j = 0;
    for (const auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline std::vector<std::vector<deckit::Index>> rows_as_vectors(
    const deckit::IndexMatrix& m) {
  std::vector<std::vector<deckit::Index>> out;
  for (deckit::Index r = 0; r < m.rows(); ++r)
    out.push_back(std::vector<deckit::Index>(m.row(r).begin(), m.row(r).end()));
  return out;
}

inline bool same_rows(const deckit::IndexMatrix& a, const deckit::IndexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 || (a.array() == b.array()).all();
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline Eigen::MatrixXd random_dense(std::mt19937& gen, deckit::Index rows,
                                    deckit::Index cols, double lo = -1.0,
                                    double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (deckit::Index i = 0; i < rows; ++i)
    for (deckit::Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

/// from_coo with a concrete triplet vector so brace literals deduce.
inline deckit::SparseMatrixd coo(deckit::Index rows, deckit::Index cols,
                                 std::vector<deckit::Tripletd> entries) {
  return deckit::from_coo(rows, cols, std::move(entries));
}

inline deckit::SparseMatrixd random_sparse(std::mt19937& gen, deckit::Index rows,
                                           deckit::Index cols, double density) {
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<deckit::Tripletd> entries;
  for (deckit::Index i = 0; i < rows; ++i)
    for (deckit::Index j = 0; j < cols; ++j)
      if (coin(gen) < density) entries.push_back({i, j, value(gen)});
  return deckit::from_coo(rows, cols, std::move(entries));
}

/// Random vertex-perturbed triangulated grid: a (cells+1)^2 lattice split
/// into triangles, interior vertices jittered. Always a valid complex.
inline void random_triangle_mesh(std::mt19937& gen, deckit::Index cells,
                                 Eigen::MatrixXd& vertices,
                               deckit::SimplexArray& top) {
  const deckit::Index side = cells + 1;
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  vertices.resize(side * side, 2);
  for (deckit::Index r = 0; r < side; ++r)
    for (deckit::Index c = 0; c < side; ++c) {
      const bool interior = r > 0 && r < cells && c > 0 && c < cells;
      vertices(r * side + c, 0) = c + (interior ? jitter(gen) : 0.0);
      vertices(r * side + c, 1) = r + (interior ? jitter(gen) : 0.0);
    }
  top.p = 2;
  top.rows.resize(2 * cells * cells, 3);
  deckit::Index t = 0;
  for (deckit::Index r = 0; r < cells; ++r)
    for (deckit::Index c = 0; c < cells; ++c) {
      const deckit::Index a = r * side + c;
      const deckit::Index b = a + 1;
      const deckit::Index d = a + side;
      const deckit::Index e = d + 1;
      top.rows.row(t++) << a, b, e;
      top.rows.row(t++) << a, e, d;
    }
}

}  // namespace helpers

#endif  // DECKIT_TESTS_HELPERS_HPP
