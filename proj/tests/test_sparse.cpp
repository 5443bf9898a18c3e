#include <random>
#include <vector>

#include "deckit/sparse.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace deckit;
using helpers::max_abs_diff;
using helpers::random_sparse;

TEST_CASE("from_coo sums duplicates, drops zero sums, orders columns") {
  std::vector<Tripletd> entries{{1, 2, 3.0}, {0, 1, 1.0}, {1, 2, -1.0},
                                {0, 0, 2.0}, {1, 0, 4.0}, {0, 1, -1.0}};
  const SparseMatrixd a = from_coo(2, 3, entries);
  CHECK(a.rows == 2);
  CHECK(a.cols == 3);
  CHECK(a.nnz() == 3);  // (0,1) cancels exactly
  CHECK(is_canonical(a));
  CHECK(a.ptr == std::vector<Index>{0, 1, 3});
  CHECK(a.indices == std::vector<Index>{0, 0, 2});
  CHECK(a.data == std::vector<double>{2.0, 4.0, 2.0});
  CHECK_THROWS_AS(helpers::coo(2, 3, {{2, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(helpers::coo(2, 3, {{0, 3, 1.0}}), std::invalid_argument);
}

TEST_CASE("constructors: zero, identity, diagonal keep declared shapes") {
  const SparseMatrixd z = SparseMatrixd::zero(3, 5);
  CHECK(z.nnz() == 0);
  CHECK(to_dense(z).isZero());
  const SparseMatrixd i3 = SparseMatrixd::identity(3);
  CHECK(max_abs_diff(to_dense(i3), Eigen::MatrixXd::Identity(3, 3)) == 0.0);
  DenseVector d(3);
  d << 2.0, 0.0, -1.0;
  const SparseMatrixd dm = SparseMatrixd::diagonal(d);
  CHECK(dm.nnz() == 3);  // structural zero kept for invertible-diagonal users
  CHECK(to_dense(dm).diagonal().isApprox(d));
}

TEST_CASE("transpose matches dense transpose and is an involution") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrixd a = random_sparse(gen, 6, 9, 0.3);
    const SparseMatrixd at = transpose(a);
    CHECK(is_canonical(at));
    CHECK(max_abs_diff(to_dense(at), to_dense(a).transpose()) == 0.0);
    CHECK(transpose(at) == a);
  }
}

TEST_CASE("spgemm matches dense product and prunes exact zeros") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseMatrixd a = random_sparse(gen, 5, 7, 0.4);
    const SparseMatrixd b = random_sparse(gen, 7, 6, 0.4);
    const SparseMatrixd c = spgemm(a, b);
    CHECK(is_canonical(c));
    CHECK(max_abs_diff(to_dense(c), to_dense(a) * to_dense(b)) < 1e-13);
  }
  const SparseMatrixd ones = helpers::coo(2, 2, {{0, 0, 1.0}, {0, 1, 1.0},
                                             {1, 0, 1.0}, {1, 1, 1.0}});
  const SparseMatrixd cancel = helpers::coo(2, 1, {{0, 0, 1.0}, {1, 0, -1.0}});
  CHECK(spgemm(ones, cancel).nnz() == 0);
  CHECK_THROWS_AS(spgemm(ones, SparseMatrixd::zero(3, 1)), std::invalid_argument);
}

TEST_CASE("add matches dense sum and cancels exactly") {
  std::mt19937 gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const SparseMatrixd a = random_sparse(gen, 5, 5, 0.4);
    const SparseMatrixd b = random_sparse(gen, 5, 5, 0.4);
    const SparseMatrixd s = add(a, b);
    CHECK(is_canonical(s));
    CHECK(max_abs_diff(to_dense(s), to_dense(a) + to_dense(b)) == 0.0);
    CHECK(add(a, scaled(a, -1.0)).nnz() == 0);
  }
}

TEST_CASE("matvec matches dense product") {
  std::mt19937 gen(17);
  const SparseMatrixd a = random_sparse(gen, 8, 5, 0.5);
  const DenseVector x = helpers::random_dense(gen, 5, 1);
  CHECK((matvec(a, x) - to_dense(a) * x).norm() < 1e-14);
  const DenseVector wrong_size = DenseVector::Zero(4);
  CHECK_THROWS_AS(matvec(a, wrong_size), std::invalid_argument);
}

TEST_CASE("conjugate gradient solves SPD systems to tolerance") {
  std::mt19937 gen(19);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd b = helpers::random_dense(gen, 12, 12);
    const Eigen::MatrixXd spd =
        b.transpose() * b + Eigen::MatrixXd::Identity(12, 12);
    std::vector<Tripletd> entries;
    for (Index i = 0; i < 12; ++i)
      for (Index j = 0; j < 12; ++j) entries.push_back({i, j, spd(i, j)});
    const SparseMatrixd a = from_coo(12, 12, entries);
    const DenseVector rhs = helpers::random_dense(gen, 12, 1);
    const SolveResult r = conjugate_gradient(a, rhs);
    CHECK(r.converged);
    CHECK((matvec(a, r.x) - rhs).norm() <= 1e-9 * rhs.norm());
  }
}

namespace {

/// Path-graph Laplacian: singular, kernel spanned by the constant vector.
SparseMatrixd path_laplacian(Index n) {
  std::vector<Tripletd> entries;
  for (Index i = 0; i + 1 < n; ++i) {
    entries.push_back({i, i, 1.0});
    entries.push_back({i + 1, i + 1, 1.0});
    entries.push_back({i, i + 1, -1.0});
    entries.push_back({i + 1, i, -1.0});
  }
  return from_coo(n, n, std::move(entries));
}

}  // namespace

TEST_CASE("conjugate gradient on a singular consistent system stays in range") {
  const Index n = 20;
  const SparseMatrixd l = path_laplacian(n);
  std::mt19937 gen(23);
  DenseVector x0 = helpers::random_dense(gen, n, 1);
  x0.array() -= x0.mean();
  const DenseVector b = matvec(l, x0);
  const SolveResult r = conjugate_gradient(l, b);
  CHECK(r.converged);
  CHECK((matvec(l, r.x) - b).norm() <= 1e-8 * b.norm());
  CHECK(std::abs(r.x.mean()) < 1e-10);  // zero start keeps the kernel part zero
  CHECK((r.x - x0).norm() < 1e-7);

  const SolveResult zero = conjugate_gradient(l, DenseVector::Zero(n));
  CHECK(zero.converged);
  CHECK(zero.x.norm() == 0.0);
}

TEST_CASE("conjugate gradient error decreases monotonically in the A-norm") {
  const Index n = 16;
  std::mt19937 gen(29);
  const Eigen::MatrixXd b = helpers::random_dense(gen, n, n);
  const Eigen::MatrixXd spd = b.transpose() * b + Eigen::MatrixXd::Identity(n, n);
  std::vector<Tripletd> entries;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) entries.push_back({i, j, spd(i, j)});
  const SparseMatrixd a = from_coo(n, n, std::move(entries));
  const DenseVector rhs = helpers::random_dense(gen, n, 1);
  const DenseVector exact = spd.ldlt().solve(rhs);

  double previous = std::numeric_limits<double>::infinity();
  for (Index k = 1; k <= n; ++k) {
    const SolveResult r = conjugate_gradient(a, rhs, 0.0, k);
    const DenseVector e = r.x - exact;
    const double err = std::sqrt(e.dot(spd * e));
    CHECK(err <= previous + 1e-9 * (1.0 + previous));
    previous = err;
  }
}

TEST_CASE("least squares matches a dense orthogonal solver") {
  std::mt19937 gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseMatrixd a = random_sparse(gen, 15, 6, 0.6);
    const DenseVector b = helpers::random_dense(gen, 15, 1);
    const SolveResult r = least_squares(a, b);
    CHECK(r.converged);
    const DenseVector reference =
        to_dense(a).completeOrthogonalDecomposition().solve(b);
    CHECK((r.x - reference).norm() < 1e-7 * (1.0 + reference.norm()));
  }
}

TEST_CASE("least squares returns the minimum-norm solution when rank deficient") {
  const SparseMatrixd a = helpers::coo(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  DenseVector b(1);
  b << 2.0;
  const SolveResult r = least_squares(a, b);
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-10);
  CHECK(std::abs(r.x[1] - 1.0) < 1e-10);
}

TEST_CASE("generalized eigensolver recovers known pairs and rejects bad mass") {
  const SparseMatrixd k =
      helpers::coo(2, 2, {{0, 0, 2.0}, {1, 1, 6.0}});
  const SparseMatrixd m =
      helpers::coo(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}});
  const EigResult r = symmetric_generalized_eig(k, m, 2);
  CHECK(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(3.0));
  for (Index i = 0; i < 2; ++i) {
    const DenseVector v = r.eigenvectors.col(i);
    const DenseVector lhs = matvec(k, v);
    const DenseVector rhs = r.eigenvalues[i] * matvec(m, v);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
  const SparseMatrixd indefinite = helpers::coo(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  CHECK_THROWS_WITH_AS(symmetric_generalized_eig(k, indefinite, 1),
                       "symmetric_generalized_eig: mass matrix is not positive "
                       "definite",
                       std::runtime_error);
}

TEST_CASE("dense determinant matches the elimination oracle") {
  std::mt19937 gen(37);
  CHECK(dense_determinant(Eigen::MatrixXd(0, 0)) == 1.0);
  for (Index n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXd m = helpers::random_dense(gen, n, n);
      CHECK(dense_determinant(m) ==
            doctest::Approx(oracles::dense_det(m)).epsilon(1e-10));
    }
}
