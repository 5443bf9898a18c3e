#ifndef DECKIT_SPARSE_HPP
#define DECKIT_SPARSE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deckit {

using Index = Eigen::Index;
using DenseVector = Eigen::VectorXd;

/// Compressed sparse row matrix. Canonical form: ptr nondecreasing with
/// ptr[0] = 0 and ptr[rows] = nnz, column indices strictly increasing
/// within each row.
template <class T = double>
struct SparseMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> ptr{0};
  std::vector<Index> indices;
  std::vector<T> data;

  Index nnz() const { return static_cast<Index>(indices.size()); }

  static SparseMatrix zero(Index r, Index c) {
    SparseMatrix m;
    m.rows = r;
    m.cols = c;
    m.ptr.assign(static_cast<std::size_t>(r) + 1, 0);
    return m;
  }

  static SparseMatrix identity(Index n) {
    SparseMatrix m;
    m.rows = m.cols = n;
    m.ptr.resize(static_cast<std::size_t>(n) + 1);
    m.indices.resize(static_cast<std::size_t>(n));
    m.data.assign(static_cast<std::size_t>(n), T(1));
    for (Index i = 0; i <= n; ++i) m.ptr[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < n; ++i) m.indices[static_cast<std::size_t>(i)] = i;
    return m;
  }

  /// Diagonal matrix from a dense vector; zeros are kept so the diagonal
  /// stays addressable.
  static SparseMatrix diagonal(const Eigen::Matrix<T, Eigen::Dynamic, 1>& d) {
    SparseMatrix m;
    m.rows = m.cols = d.size();
    m.ptr.resize(static_cast<std::size_t>(d.size()) + 1);
    m.indices.resize(static_cast<std::size_t>(d.size()));
    m.data.resize(static_cast<std::size_t>(d.size()));
    for (Index i = 0; i <= d.size(); ++i) m.ptr[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < d.size(); ++i) {
      m.indices[static_cast<std::size_t>(i)] = i;
      m.data[static_cast<std::size_t>(i)] = d[i];
    }
    return m;
  }

  bool operator==(const SparseMatrix& o) const {
    return rows == o.rows && cols == o.cols && ptr == o.ptr &&
           indices == o.indices && data == o.data;
  }
};

using SparseMatrixd = SparseMatrix<double>;

template <class T>
struct Triplet {
  Index row = 0;
  Index col = 0;
  T value{};
};

using Tripletd = Triplet<double>;

/// True when the matrix satisfies the canonical CSR invariants.
template <class T>
bool is_canonical(const SparseMatrix<T>& a) {
  if (a.rows < 0 || a.cols < 0) return false;
  if (static_cast<Index>(a.ptr.size()) != a.rows + 1) return false;
  if (a.ptr.front() != 0 || a.ptr.back() != a.nnz()) return false;
  if (a.indices.size() != a.data.size()) return false;
  for (Index i = 0; i < a.rows; ++i) {
    if (a.ptr[i] > a.ptr[i + 1]) return false;
    for (Index k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
      if (a.indices[k] < 0 || a.indices[k] >= a.cols) return false;
      if (k > a.ptr[i] && a.indices[k] <= a.indices[k - 1]) return false;
    }
  }
  return true;
}

/// Build canonical CSR from coordinate triplets. Duplicates are summed;
/// entries whose sum is exactly zero are dropped.
template <class T>
SparseMatrix<T> from_coo(Index rows, Index cols, std::vector<Triplet<T>> entries) {
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("from_coo: entry out of bounds");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet<T>& a, const Triplet<T>& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  SparseMatrix<T> m;
  m.rows = rows;
  m.cols = cols;
  m.ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    T sum{};
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col) {
      sum += entries[j].value;
      ++j;
    }
    if (sum != T(0)) {
      m.indices.push_back(entries[i].col);
      m.data.push_back(sum);
      ++m.ptr[entries[i].row + 1];
    }
    i = j;
  }
  for (Index r = 0; r < rows; ++r) m.ptr[r + 1] += m.ptr[r];
  return m;
}

template <class T>
SparseMatrix<T> transpose(const SparseMatrix<T>& a) {
  SparseMatrix<T> t;
  t.rows = a.cols;
  t.cols = a.rows;
  t.ptr.assign(static_cast<std::size_t>(a.cols) + 1, 0);
  t.indices.resize(a.indices.size());
  t.data.resize(a.data.size());
  for (Index k = 0; k < a.nnz(); ++k) ++t.ptr[a.indices[k] + 1];
  for (Index c = 0; c < a.cols; ++c) t.ptr[c + 1] += t.ptr[c];
  std::vector<Index> next(t.ptr.begin(), t.ptr.end() - 1);
  for (Index r = 0; r < a.rows; ++r)
    for (Index k = a.ptr[r]; k < a.ptr[r + 1]; ++k) {
      const Index dst = next[a.indices[k]]++;
      t.indices[dst] = r;
      t.data[dst] = a.data[k];
    }
  return t;
}

/// Row-by-row Gustavson product. Cancellation pruning is exact-zero only,
/// so integer chain data cancels to structural zeros.
template <class T>
SparseMatrix<T> spgemm(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.cols != b.rows)
    throw std::invalid_argument("spgemm: inner dimensions disagree (" +
                                std::to_string(a.cols) + " vs " +
                                std::to_string(b.rows) + ")");
  SparseMatrix<T> c;
  c.rows = a.rows;
  c.cols = b.cols;
  c.ptr.assign(static_cast<std::size_t>(a.rows) + 1, 0);
  std::vector<T> acc(static_cast<std::size_t>(b.cols), T(0));
  std::vector<char> mark(static_cast<std::size_t>(b.cols), 0);
  std::vector<Index> touched;
  for (Index r = 0; r < a.rows; ++r) {
    touched.clear();
    for (Index ka = a.ptr[r]; ka < a.ptr[r + 1]; ++ka) {
      const Index j = a.indices[ka];
      const T v = a.data[ka];
      for (Index kb = b.ptr[j]; kb < b.ptr[j + 1]; ++kb) {
        const Index col = b.indices[kb];
        if (!mark[col]) {
          mark[col] = 1;
          touched.push_back(col);
        }
        acc[col] += v * b.data[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const Index col : touched) {
      if (acc[col] != T(0)) {
        c.indices.push_back(col);
        c.data.push_back(acc[col]);
        ++c.ptr[r + 1];
      }
      acc[col] = T(0);
      mark[col] = 0;
    }
  }
  for (Index r = 0; r < a.rows; ++r) c.ptr[r + 1] += c.ptr[r];
  return c;
}

/// Entrywise a + b in canonical CSR; exact-zero sums are pruned.
template <class T>
SparseMatrix<T> add(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("add: shapes disagree");
  SparseMatrix<T> c;
  c.rows = a.rows;
  c.cols = a.cols;
  c.ptr.assign(static_cast<std::size_t>(a.rows) + 1, 0);
  for (Index r = 0; r < a.rows; ++r) {
    Index ka = a.ptr[r], kb = b.ptr[r];
    while (ka < a.ptr[r + 1] || kb < b.ptr[r + 1]) {
      Index col;
      T v{};
      if (kb >= b.ptr[r + 1] ||
          (ka < a.ptr[r + 1] && a.indices[ka] < b.indices[kb])) {
        col = a.indices[ka];
        v = a.data[ka++];
      } else if (ka >= a.ptr[r + 1] || b.indices[kb] < a.indices[ka]) {
        col = b.indices[kb];
        v = b.data[kb++];
      } else {
        col = a.indices[ka];
        v = a.data[ka++] + b.data[kb++];
      }
      if (v != T(0)) {
        c.indices.push_back(col);
        c.data.push_back(v);
        ++c.ptr[r + 1];
      }
    }
  }
  for (Index r = 0; r < a.rows; ++r) c.ptr[r + 1] += c.ptr[r];
  return c;
}

template <class T>
SparseMatrix<T> scaled(SparseMatrix<T> a, T factor) {
  for (auto& v : a.data) v *= factor;
  return a;
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> matvec(
    const SparseMatrix<T>& a, const Eigen::Matrix<T, Eigen::Dynamic, 1>& x) {
  if (x.size() != a.cols) throw std::invalid_argument("matvec: size mismatch");
  Eigen::Matrix<T, Eigen::Dynamic, 1> y =
      Eigen::Matrix<T, Eigen::Dynamic, 1>::Zero(a.rows);
  for (Index r = 0; r < a.rows; ++r) {
    T s{};
    for (Index k = a.ptr[r]; k < a.ptr[r + 1]; ++k)
      s += a.data[k] * x[a.indices[k]];
    y[r] = s;
  }
  return y;
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> to_dense(const SparseMatrix<T>& a) {
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> d =
      Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.rows, a.cols);
  for (Index r = 0; r < a.rows; ++r)
    for (Index k = a.ptr[r]; k < a.ptr[r + 1]; ++k) d(r, a.indices[k]) = a.data[k];
  return d;
}

struct SolveResult {
  DenseVector x;
  bool converged = false;
  Index iterations = 0;
  double residual = 0.0;  // relative to the stopping norm
};

/// Conjugate gradients for symmetric positive semidefinite systems.
/// The start vector is zero, so for singular consistent systems the
/// kernel component of the result stays zero.
inline SolveResult conjugate_gradient(const SparseMatrixd& a, const DenseVector& b,
                                      double tol = 1e-10, Index max_iter = -1) {
  if (a.rows != a.cols) throw std::invalid_argument("conjugate_gradient: not square");
  if (b.size() != a.rows) throw std::invalid_argument("conjugate_gradient: size mismatch");
  if (max_iter < 0) max_iter = 10 * std::max<Index>(a.rows, 1);
  SolveResult out;
  out.x = DenseVector::Zero(a.rows);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  DenseVector r = b;
  DenseVector p = r;
  double rr = r.squaredNorm();
  for (Index it = 0; it < max_iter; ++it) {
    if (std::sqrt(rr) <= tol * bnorm) break;
    const DenseVector ap = matvec(a, p);
    const double pap = p.dot(ap);
    if (pap <= 0.0) break;  // left the positive cone: stop with status
    const double alpha = rr / pap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    out.iterations = it + 1;
  }
  out.residual = std::sqrt(rr) / bnorm;
  out.converged = std::sqrt(rr) <= tol * bnorm;
  return out;
}

/// Minimum-norm least squares via conjugate gradients on the normal
/// equations from a zero start. Stops when the normal residual satisfies
/// ||A^T(Ax - b)|| <= tol * ||A^T b||.
inline SolveResult least_squares(const SparseMatrixd& a, const DenseVector& b,
                                 double tol = 1e-10) {
  if (b.size() != a.rows) throw std::invalid_argument("least_squares: size mismatch");
  const SparseMatrixd at = transpose(a);
  const Index max_iter = 10 * std::max<Index>(a.cols, 1);
  SolveResult out;
  out.x = DenseVector::Zero(a.cols);
  const DenseVector atb = matvec(at, b);
  const double gnorm = atb.norm();
  if (gnorm == 0.0) {
    out.converged = true;
    return out;
  }
  DenseVector r = b;        // b - Ax
  DenseVector g = atb;      // A^T r
  DenseVector p = g;
  double gg = g.squaredNorm();
  for (Index it = 0; it < max_iter; ++it) {
    if (std::sqrt(gg) <= tol * gnorm) break;
    const DenseVector ap = matvec(a, p);
    const double ap2 = ap.squaredNorm();
    if (ap2 == 0.0) break;
    const double alpha = gg / ap2;
    out.x += alpha * p;
    r -= alpha * ap;
    g = matvec(at, r);
    const double gg_next = g.squaredNorm();
    p = g + (gg_next / gg) * p;
    gg = gg_next;
    out.iterations = it + 1;
  }
  out.residual = std::sqrt(gg) / gnorm;
  out.converged = std::sqrt(gg) <= tol * gnorm;
  return out;
}

struct EigResult {
  DenseVector eigenvalues;       // ascending
  Eigen::MatrixXd eigenvectors;  // M-orthonormal columns
};

/// Smallest `count` eigenpairs of K v = lambda M v for symmetric K and
/// symmetric positive definite M, via dense Cholesky reduction.
inline EigResult symmetric_generalized_eig(const SparseMatrixd& k,
                                           const SparseMatrixd& m, Index count) {
  if (k.rows != k.cols || m.rows != m.cols || k.rows != m.rows)
    throw std::invalid_argument("symmetric_generalized_eig: shapes disagree");
  if (count < 0 || count > k.rows)
    throw std::invalid_argument("symmetric_generalized_eig: bad count");
  const Eigen::MatrixXd kd = to_dense(k);
  const Eigen::MatrixXd md = to_dense(m);
  const Eigen::LLT<Eigen::MatrixXd> llt(md);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "symmetric_generalized_eig: mass matrix is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(kd, md);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric_generalized_eig: iteration failed");
  EigResult out;
  out.eigenvalues = solver.eigenvalues().head(count);
  out.eigenvectors = solver.eigenvectors().leftCols(count);
  return out;
}

namespace detail {

template <class Derived>
typename Derived::Scalar cofactor_determinant(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  const Index n = a.rows();
  if (n == 0) return S(1);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (n == 3)
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  S det{};
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
  for (Index j = 0; j < n; ++j) {
    minor.leftCols(j) = a.bottomRows(n - 1).leftCols(j);
    minor.rightCols(n - 1 - j) = a.bottomRows(n - 1).rightCols(n - 1 - j);
    const S term = a(0, j) * cofactor_determinant(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace detail

/// Determinant of a small dense matrix: cofactor expansion through order 4,
/// pivoted LU beyond.
inline double dense_determinant(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense_determinant: not square");
  if (a.rows() <= 4) return detail::cofactor_determinant(a);
  return Eigen::FullPivLU<Eigen::MatrixXd>(a).determinant();
}

}  // namespace deckit

#endif  // DECKIT_SPARSE_HPP
