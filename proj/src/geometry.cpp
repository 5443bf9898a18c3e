#include "deckit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace deckit {

namespace {

double factorial(Index k) {
  double f = 1.0;
  for (Index i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

double max_edge_length(const Eigen::MatrixXd& vertices) {
  double m = 0.0;
  for (Index i = 0; i < vertices.rows(); ++i)
    for (Index j = i + 1; j < vertices.rows(); ++j)
      m = std::max(m, (vertices.row(i) - vertices.row(j)).norm());
  return m;
}

std::string simplex_to_string(const Eigen::MatrixXd& vertices) {
  std::string s = "[";
  for (Index i = 0; i < vertices.rows(); ++i) {
    if (i) s += "; ";
    for (Index c = 0; c < vertices.cols(); ++c) {
      if (c) s += " ";
      s += std::to_string(vertices(i, c));
    }
  }
  return s + "]";
}

Eigen::MatrixXd edge_matrix(const Eigen::MatrixXd& vertices) {
  const Index p = vertices.rows() - 1;
  Eigen::MatrixXd v0(vertices.cols(), p);
  for (Index j = 0; j < p; ++j)
    v0.col(j) = (vertices.row(j + 1) - vertices.row(0)).transpose();
  return v0;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& vertices, const IndexMatrix& cells,
                       Index row) {
  Eigen::MatrixXd v(cells.cols(), vertices.cols());
  for (Index c = 0; c < cells.cols(); ++c) v.row(c) = vertices.row(cells(row, c));
  return v;
}

}  // namespace

double simplex_volume(const Eigen::MatrixXd& vertices) {
  const Index p = vertices.rows() - 1;
  if (p == 0) return 1.0;
  const Eigen::MatrixXd v0 = edge_matrix(vertices);
  const double det = dense_determinant(v0.transpose() * v0);
  const double root = det > 0.0 ? std::sqrt(det) : 0.0;
  const double cutoff =
      1e-12 * std::pow(max_edge_length(vertices), static_cast<double>(p));
  if (root < cutoff) return 0.0;
  return root / factorial(p);
}

Circumcenter circumcenter(const Eigen::MatrixXd& vertices) {
  const Index p = vertices.rows() - 1;
  if (p > 0 && simplex_volume(vertices) == 0.0)
    throw std::runtime_error("circumcenter: degenerate simplex " +
                             simplex_to_string(vertices));
  Eigen::MatrixXd a(p + 2, p + 2);
  DenseVector rhs(p + 2);
  for (Index i = 0; i <= p; ++i) {
    for (Index j = 0; j <= p; ++j)
      a(i, j) = 2.0 * vertices.row(i).dot(vertices.row(j));
    a(i, p + 1) = 1.0;
    rhs[i] = vertices.row(i).squaredNorm();
  }
  a.row(p + 1).setOnes();
  a(p + 1, p + 1) = 0.0;
  rhs[p + 1] = 1.0;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw std::runtime_error("circumcenter: singular system for simplex " +
                             simplex_to_string(vertices));
  const DenseVector sol = lu.solve(rhs);
  Circumcenter out;
  out.barycentric = sol.head(p + 1);
  out.q = sol[p + 1];
  out.point = vertices.transpose() * out.barycentric;
  out.radius = (out.point.transpose() - vertices.row(0)).norm();
  return out;
}

BarycentricDifferentials barycentric_differentials(const Eigen::MatrixXd& vertices) {
  const Index p = vertices.rows() - 1;
  if (p < 1)
    throw std::invalid_argument("barycentric_differentials: need at least an edge");
  if (simplex_volume(vertices) == 0.0)
    throw std::runtime_error("barycentric_differentials: degenerate simplex " +
                             simplex_to_string(vertices));
  const Eigen::MatrixXd v0 = edge_matrix(vertices);
  const Eigen::MatrixXd gram = v0.transpose() * v0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  BarycentricDifferentials out;
  if (lmin <= 0.0 || lmax / lmin > 1e8) {
    // Near-degenerate: orthogonal factorization instead of normal equations.
    out.x = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(v0)
                .pseudoInverse()
                .transpose();
  } else {
    out.x = gram.llt().solve(v0.transpose()).transpose();
  }
  return out;
}

namespace {

struct LevelGeometry {
  Eigen::MatrixXd circumcenters;  // N_p x embedding dim
  DenseVector primal_volumes;
};

std::vector<LevelGeometry> level_geometry(const SimplicialComplex& c) {
  std::vector<LevelGeometry> out(c.dim() + 1);
  for (Index p = 0; p <= c.dim(); ++p) {
    const IndexMatrix& cells = c.levels[p].cells.rows;
    LevelGeometry& g = out[p];
    g.circumcenters.resize(cells.rows(), c.embedding_dim());
    g.primal_volumes.resize(cells.rows());
    for (Index i = 0; i < cells.rows(); ++i) {
      if (p == 0) {
        g.circumcenters.row(i) = c.vertices.row(cells(i, 0));
        g.primal_volumes[i] = 1.0;
        continue;
      }
      const Eigen::MatrixXd verts = gather(c.vertices, cells, i);
      g.primal_volumes[i] = simplex_volume(verts);
      if (g.primal_volumes[i] == 0.0)
        throw std::runtime_error("geometry: zero volume for cell " +
                                 std::to_string(i) + " at dimension " +
                                 std::to_string(p));
      g.circumcenters.row(i) = circumcenter(verts).point.transpose();
    }
  }
  return out;
}

class DualAccumulator {
 public:
  DualAccumulator(const SimplicialComplex& c, const std::vector<LevelGeometry>& geo)
      : c_(c), geo_(geo), n_(c.dim()) {
    faces_of_.resize(n_ + 1);
    for (Index q = 1; q <= n_; ++q) faces_of_[q] = transpose(c.levels[q].boundary);
    result_.per_level.resize(n_ + 1);
    for (Index p = 0; p <= n_; ++p)
      result_.per_level[p] = DenseVector::Zero(c.count(p));
    result_.per_level[n_].setOnes();
    if (n_ >= 1) {
      const SparseMatrixd& bn = c.levels[n_].boundary;
      top_count_.assign(bn.rows, 0);
      for (Index f = 0; f < bn.rows; ++f) {
        top_count_[f] = bn.ptr[f + 1] - bn.ptr[f];
        if (top_count_[f] > 2)
          throw std::runtime_error(
              "dual_volumes: non-manifold complex: cell " + std::to_string(f) +
              " at dimension " + std::to_string(n_ - 1) + " lies in " +
              std::to_string(top_count_[f]) + " top cells");
      }
    }
  }

  DualVolumes run() {
    std::vector<DenseVector> chain;
    for (Index t = 0; t < c_.count(n_); ++t) {
      chain.assign(1, geo_[n_].circumcenters.row(t).transpose());
      descend(n_, t, chain, 1.0);
    }
    if (!boundary_violations_.empty()) {
      std::string msg =
          "dual_volumes: boundary condition violated at dimension " +
          std::to_string(n_ - 1) + " cells:";
      for (const Index f : boundary_violations_) msg += " " + std::to_string(f);
      throw std::runtime_error(msg);
    }
    for (Index p = 0; p < n_; ++p)
      for (Index i = 0; i < c_.count(p); ++i)
        if (result_.per_level[p][i] < 0.0)
          result_.diagnostics.push_back(
              "negative dual volume " + std::to_string(result_.per_level[p][i]) +
              " for cell " + std::to_string(i) + " at dimension " +
              std::to_string(p));
    return std::move(result_);
  }

 private:
  void descend(Index q, Index cell, std::vector<DenseVector>& chain,
               double sign_product) {
    if (q == 0) return;
    const SparseMatrixd& faces = faces_of_[q];
    for (Index k = faces.ptr[cell]; k < faces.ptr[cell + 1]; ++k) {
      const Index f = faces.indices[k];
      const DenseVector fc = geo_[q - 1].circumcenters.row(f).transpose();
      const DenseVector u = chain.back() - fc;
      const Index opp = opposite_vertex(q, cell, f);
      const DenseVector z = c_.vertices.row(opp).transpose() - fc;
      // A circumcenter exactly on the face (right-angle cells) rounds to an
      // arbitrary side; only an offset clearly above the coordinate noise
      // floor counts as a flip.
      const double coord_scale =
          std::max({1.0, chain.back().norm(), fc.norm()});
      const double step =
          (u.dot(z) >= -1e-9 * z.norm() * coord_scale) ? 1.0 : -1.0;
      if (q == n_ && top_count_[f] == 1 && step < 0.0)
        boundary_violations_.push_back(f);
      chain.push_back(fc);
      Eigen::MatrixXd pts(static_cast<Index>(chain.size()), c_.embedding_dim());
      for (Index i = 0; i < pts.rows(); ++i) pts.row(i) = chain[i].transpose();
      result_.per_level[q - 1][f] +=
          sign_product * step * simplex_volume(pts);
      descend(q - 1, f, chain, sign_product * step);
      chain.pop_back();
    }
  }

  Index opposite_vertex(Index q, Index cell, Index face) const {
    const IndexMatrix& cells = c_.levels[q].cells.rows;
    const IndexMatrix& faces = c_.levels[q - 1].cells.rows;
    Index fi = 0;
    for (Index c = 0; c <= q; ++c) {
      const Index v = cells(cell, c);
      if (fi < q && faces(face, fi) == v) {
        ++fi;
        continue;
      }
      return v;
    }
    throw std::logic_error("opposite_vertex: face is not a subset of the cell");
  }

  const SimplicialComplex& c_;
  const std::vector<LevelGeometry>& geo_;
  Index n_;
  std::vector<SparseMatrixd> faces_of_;
  std::vector<Index> top_count_;
  std::vector<Index> boundary_violations_;
  DualVolumes result_;
};

}  // namespace

DualVolumes dual_volumes(const SimplicialComplex& c) {
  const std::vector<LevelGeometry> geo = level_geometry(c);
  return DualAccumulator(c, geo).run();
}

GeometryReport attach_geometry(SimplicialComplex& c) {
  std::vector<LevelGeometry> geo = level_geometry(c);
  DualVolumes duals = DualAccumulator(c, geo).run();
  for (Index p = 0; p <= c.dim(); ++p) {
    c.levels[p].circumcenters = std::move(geo[p].circumcenters);
    c.levels[p].primal_volumes = std::move(geo[p].primal_volumes);
    c.levels[p].dual_volumes = std::move(duals.per_level[p]);
  }
  return GeometryReport{std::move(duals.diagnostics)};
}

}  // namespace deckit
