#include "deckit/dec.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deckit {

namespace {

Index binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  Index r = 1;
  for (Index i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(Index k) {
  double f = 1.0;
  for (Index i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

std::vector<std::vector<Index>> combinations(Index m, Index k) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> cur(k);
  // Lexicographic enumeration of ascending k-subsets of {0..m-1}.
  std::function<void(Index, Index)> rec = [&](Index start, Index depth) {
    if (depth == k) {
      out.push_back(cur);
      return;
    }
    for (Index v = start; v < m; ++v) {
      cur[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Row id of a sorted key inside a lexicographically sorted row matrix.
Index find_row(const IndexMatrix& rows, const std::vector<Index>& key) {
  Index lo = 0, hi = rows.rows();
  while (lo < hi) {
    const Index mid = (lo + hi) / 2;
    bool less = false, equal = true;
    for (Index c = 0; c < rows.cols(); ++c) {
      if (rows(mid, c) != key[c]) {
        less = rows(mid, c) < key[c];
        equal = false;
        break;
      }
    }
    if (equal) return mid;
    if (less)
      lo = mid + 1;
    else
      hi = mid;
  }
  throw std::logic_error("find_row: key not present");
}

/// Assembly template for one (n, p): local faces, reduced subsets, and the
/// cofactor terms of every face pair. Built once from the reference
/// simplex and instantiated per top simplex.
struct MassTemplate {
  struct Term {
    Index red_a = 0;  // reduced-subset ids: det key is the unordered pair
    Index red_b = 0;
    double sign = 1.0;
    Index a = 0;  // moment slots mu_a mu_b
    Index b = 0;
  };
  struct FacePair {
    Index fi = 0;
    Index fj = 0;
    std::vector<Term> terms;
  };
  Index n = 0, p = 0;
  std::vector<std::vector<Index>> faces;    // ascending (p+1)-subsets
  std::vector<std::vector<Index>> reduced;  // ascending p-subsets
  std::vector<FacePair> pairs;

  MassTemplate(Index n_in, Index p_in) : n(n_in), p(p_in) {
    faces = combinations(n + 1, p + 1);
    reduced = combinations(n + 1, p);
    std::vector<Index> red_id(static_cast<std::size_t>(1) << (n + 1), -1);
    for (Index r = 0; r < static_cast<Index>(reduced.size()); ++r) {
      Index mask = 0;
      for (const Index v : reduced[r]) mask |= Index(1) << v;
      red_id[mask] = r;
    }
    for (Index fi = 0; fi < static_cast<Index>(faces.size()); ++fi)
      for (Index fj = fi; fj < static_cast<Index>(faces.size()); ++fj) {
        FacePair fp;
        fp.fi = fi;
        fp.fj = fj;
        for (Index k = 0; k <= p; ++k)
          for (Index l = 0; l <= p; ++l) {
            Term t;
            Index mask_a = 0, mask_b = 0;
            for (Index m = 0; m <= p; ++m) {
              if (m != k) mask_a |= Index(1) << faces[fi][m];
              if (m != l) mask_b |= Index(1) << faces[fj][m];
            }
            t.red_a = red_id[mask_a];
            t.red_b = red_id[mask_b];
            t.sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
            t.a = faces[fi][k];
            t.b = faces[fj][l];
            fp.terms.push_back(t);
          }
        pairs.push_back(std::move(fp));
      }
  }
};

const MassTemplate& mass_template(Index n, Index p) {
  static std::vector<std::vector<std::unique_ptr<MassTemplate>>> cache;
  if (static_cast<Index>(cache.size()) <= n) cache.resize(n + 1);
  if (static_cast<Index>(cache[n].size()) <= p) cache[n].resize(p + 1);
  if (!cache[n][p]) cache[n][p] = std::make_unique<MassTemplate>(n, p);
  return *cache[n][p];
}

/// Determinants of Gram submatrices, evaluated once per unordered
/// subset pair.
class DeterminantCache {
 public:
  DeterminantCache(const MassTemplate& tpl, const Eigen::MatrixXd& gram)
      : tpl_(tpl), gram_(gram) {
    const Index r = static_cast<Index>(tpl.reduced.size());
    values_.assign(r * r, 0.0);
    known_.assign(r * r, 0);
  }

  double get(Index a, Index b) {
    const Index lo = std::min(a, b), hi = std::max(a, b);
    const Index key = lo * static_cast<Index>(tpl_.reduced.size()) + hi;
    if (!known_[key]) {
      const std::vector<Index>& ra = tpl_.reduced[lo];
      const std::vector<Index>& rb = tpl_.reduced[hi];
      Eigen::MatrixXd sub(tpl_.p, tpl_.p);
      for (Index r = 0; r < tpl_.p; ++r)
        for (Index c = 0; c < tpl_.p; ++c) sub(r, c) = gram_(ra[r], rb[c]);
      values_[key] = dense_determinant(sub);
      known_[key] = 1;
      ++evaluations_;
    }
    return values_[key];
  }

  Index evaluations() const { return evaluations_; }

 private:
  const MassTemplate& tpl_;
  const Eigen::MatrixXd& gram_;
  std::vector<double> values_;
  std::vector<char> known_;
  Index evaluations_ = 0;
};

Eigen::MatrixXd gather_vertices(const SimplicialComplex& c, Index p, Index cell) {
  const IndexMatrix& cells = c.levels[p].cells.rows;
  Eigen::MatrixXd v(cells.cols(), c.embedding_dim());
  for (Index i = 0; i < cells.cols(); ++i) v.row(i) = c.vertices.row(cells(cell, i));
  return v;
}

}  // namespace

Index unique_determinant_count(Index n, Index p) {
  const Index c = binomial(n + 1, p);
  return (c * c + c) / 2;
}

Index naive_determinant_count(Index n, Index p) {
  const Index c = binomial(n + 1, p + 1);
  const Index lower = binomial(n, p);
  return (c * c + c) / 2 * lower * lower;
}

double barycentric_moment_integral(double volume, Index n, Index a, Index b) {
  const double denom = static_cast<double>((n + 1) * (n + 2));
  return volume * (a == b ? 2.0 : 1.0) / denom;
}

double barycentric_moment_integral(const Eigen::MatrixXd& simplex_vertices, Index a,
                                   Index b) {
  const Index n = simplex_vertices.rows() - 1;
  if (a < 0 || a > n || b < 0 || b > n)
    throw std::invalid_argument("barycentric_moment_integral: slot out of range");
  return barycentric_moment_integral(simplex_volume(simplex_vertices), n, a, b);
}

MassMatrix whitney_mass_matrix(const SimplicialComplex& c, Index p,
                               MassCounters* counters) {
  const Index n = c.dim();
  if (p < 0 || p > n)
    throw std::invalid_argument("whitney_mass_matrix: p out of range");
  const Index np = c.count(p);
  MassMatrix out;
  out.p = p;

  if (p == n) {
    DenseVector diag(np);
    for (Index t = 0; t < np; ++t) {
      const double vol = simplex_volume(gather_vertices(c, n, t));
      if (vol == 0.0)
        throw std::runtime_error("whitney_mass_matrix: degenerate top simplex " +
                                 std::to_string(t));
      diag[t] = 1.0 / vol;
    }
    if (counters) counters->top_simplices += np;
    out.matrix = SparseMatrixd::diagonal(diag);
    return out;
  }

  const MassTemplate& tpl = mass_template(n, p);
  const double scale = factorial(p) * factorial(p);
  std::vector<Tripletd> triplets;
  const IndexMatrix& top = c.levels[n].cells.rows;
  const IndexMatrix& level_rows = c.levels[p].cells.rows;

  for (Index t = 0; t < c.count(n); ++t) {
    const Eigen::MatrixXd verts = gather_vertices(c, n, t);
    const double vol = simplex_volume(verts);
    if (vol == 0.0)
      throw std::runtime_error("whitney_mass_matrix: degenerate top simplex " +
                               std::to_string(t));
    const Eigen::MatrixXd grads = barycentric_differentials(verts).all();
    const Eigen::MatrixXd gram = grads.transpose() * grads;
    DeterminantCache cache(tpl, gram);

    // Global ids of the local p-faces.
    std::vector<Index> global(tpl.faces.size());
    std::vector<Index> key(p + 1);
    for (std::size_t f = 0; f < tpl.faces.size(); ++f) {
      for (Index m = 0; m <= p; ++m) key[m] = top(t, tpl.faces[f][m]);
      global[f] = find_row(level_rows, key);
    }

    for (const MassTemplate::FacePair& fp : tpl.pairs) {
      double value = 0.0;
      for (const MassTemplate::Term& term : fp.terms)
        value += term.sign * cache.get(term.red_a, term.red_b) *
                 barycentric_moment_integral(vol, n, term.a, term.b);
      value *= scale;
      triplets.push_back({global[fp.fi], global[fp.fj], value});
      if (fp.fi != fp.fj) triplets.push_back({global[fp.fj], global[fp.fi], value});
    }
    if (counters) {
      counters->top_simplices += 1;
      counters->determinant_evaluations += cache.evaluations();
    }
  }
  out.matrix = from_coo(np, np, std::move(triplets));
  return out;
}

SparseMatrixd whitney_stiffness(const SimplicialComplex& c, Index p) {
  if (p < 0 || p >= c.dim())
    throw std::invalid_argument("whitney_stiffness: p out of range");
  const SparseMatrixd d = coboundary(c, p);
  const MassMatrix m = whitney_mass_matrix(c, p + 1);
  return spgemm(spgemm(transpose(d), m.matrix), d);
}

HodgeStar dec_hodge_star(const SimplicialComplex& c, Index p) {
  if (p < 0 || p > c.dim())
    throw std::invalid_argument("dec_hodge_star: p out of range");
  const ComplexLevel& level = c.levels[p];
  if (level.dual_volumes.size() != c.count(p))
    throw std::logic_error("dec_hodge_star: attach_geometry has not run");
  std::string bad;
  for (Index i = 0; i < c.count(p); ++i)
    if (level.dual_volumes[i] <= 0.0) bad += " " + std::to_string(i);
  if (!bad.empty())
    throw std::runtime_error("dec_hodge_star: nonpositive dual volume at dimension " +
                             std::to_string(p) + " for cells" + bad);
  HodgeStar star;
  star.p = p;
  star.n = c.dim();
  star.diagonal = level.dual_volumes.cwiseQuotient(level.primal_volumes);
  return star;
}

SparseMatrixd codifferential(const HodgeStar& star_p, const HodgeStar& star_p1,
                             const SparseMatrixd& d_p) {
  if (star_p1.p != star_p.p + 1 || star_p1.n != star_p.n)
    throw std::invalid_argument("codifferential: stars are not adjacent levels");
  if (d_p.rows != star_p1.diagonal.size() || d_p.cols != star_p.diagonal.size())
    throw std::invalid_argument("codifferential: operator shapes disagree");
  const Index n = star_p.n, p = star_p.p;
  const double sign = ((n * p + 1) % 2 == 0) ? 1.0 : -1.0;
  const DenseVector inv = star_p.inverse_diagonal();
  SparseMatrixd out = transpose(d_p);  // boundary_{p+1}: N_p x N_{p+1}
  for (Index r = 0; r < out.rows; ++r)
    for (Index k = out.ptr[r]; k < out.ptr[r + 1]; ++k)
      out.data[k] *= sign * inv[r] * star_p1.diagonal[out.indices[k]];
  return out;
}

WhitneyCodifferential::WhitneyCodifferential(MassMatrix mass_p, MassMatrix mass_p1,
                                             SparseMatrixd d_p, Index n, double tol)
    : mass_p_(std::move(mass_p)),
      mass_p1_(std::move(mass_p1)),
      boundary_(transpose(d_p)),
      tol_(tol) {
  const Index p = mass_p_.p;
  const Index exponent = n * p + 1 + p * (n - p);
  sign_ = (exponent % 2 == 0) ? 1.0 : -1.0;
}

DenseVector WhitneyCodifferential::apply(const DenseVector& x) const {
  const DenseVector rhs = matvec(boundary_, matvec(mass_p1_.matrix, x));
  last_ = conjugate_gradient(mass_p_.matrix, rhs, tol_);
  if (!last_.converged)
    throw std::runtime_error("WhitneyCodifferential: mass solve did not converge");
  return sign_ * last_.x;
}

SparseMatrixd laplace_derham(const SimplicialComplex& c, Index p) {
  const Index n = c.dim();
  if (p < 0 || p > n) throw std::invalid_argument("laplace_derham: p out of range");
  const Index np = c.count(p);
  SparseMatrixd result = SparseMatrixd::zero(np, np);
  if (p < n) {
    const SparseMatrixd d = coboundary(c, p);
    const SparseMatrixd s1 = SparseMatrixd::diagonal(dec_hodge_star(c, p + 1).diagonal);
    result = add(result, spgemm(spgemm(transpose(d), s1), d));
  }
  if (p > 0) {
    const SparseMatrixd d = coboundary(c, p - 1);
    const SparseMatrixd sp = SparseMatrixd::diagonal(dec_hodge_star(c, p).diagonal);
    const SparseMatrixd sinv = SparseMatrixd::diagonal(
        dec_hodge_star(c, p - 1).diagonal.cwiseInverse());
    const SparseMatrixd term =
        spgemm(spgemm(spgemm(spgemm(sp, d), sinv), transpose(d)), sp);
    result = add(result, term);
  }
  return result;
}

SparseMatrixd combinatorial_laplacian1(const SparseMatrixd& boundary1,
                                       const SparseMatrixd& boundary2) {
  SparseMatrixd lap = spgemm(transpose(boundary1), boundary1);
  if (boundary2.cols > 0)
    lap = add(lap, spgemm(boundary2, transpose(boundary2)));
  return lap;
}

HodgeDecomposition hodge_decompose(const Cochain& omega, const SparseMatrixd* d_prev,
                                   const SparseMatrixd* d_cur,
                                   const DenseVector& star_p, double tol) {
  const Index np = omega.values.size();
  if (star_p.size() != np)
    throw std::invalid_argument("hodge_decompose: star size disagrees with omega");
  if (d_prev && d_prev->rows != np)
    throw std::invalid_argument("hodge_decompose: d_prev shape disagrees");
  if (d_cur && d_cur->cols != np)
    throw std::invalid_argument("hodge_decompose: d_cur shape disagrees");

  HodgeDecomposition out;
  out.d_alpha = {omega.p, omega.primal, DenseVector::Zero(np)};
  out.delta_beta = {omega.p, omega.primal, DenseVector::Zero(np)};
  bool ok = true;

  if (d_prev) {
    const SparseMatrixd bt = transpose(*d_prev);
    const SparseMatrixd s = SparseMatrixd::diagonal(star_p);
    const SparseMatrixd a = spgemm(spgemm(bt, s), *d_prev);
    const DenseVector weighted = star_p.cwiseProduct(omega.values);
    const DenseVector rhs = matvec(bt, weighted);
    out.alpha_solve = conjugate_gradient(a, rhs, tol);
    ok = ok && out.alpha_solve.converged;
    out.d_alpha.values = matvec(*d_prev, out.alpha_solve.x);
  } else {
    out.alpha_solve.converged = true;
  }

  if (d_cur) {
    const SparseMatrixd sinv = SparseMatrixd::diagonal(star_p.cwiseInverse());
    const SparseMatrixd b = spgemm(spgemm(*d_cur, sinv), transpose(*d_cur));
    const DenseVector rhs = matvec(*d_cur, omega.values);
    out.beta_solve = conjugate_gradient(b, rhs, tol);
    ok = ok && out.beta_solve.converged;
    out.delta_beta.values =
        star_p.cwiseInverse().cwiseProduct(matvec(transpose(*d_cur), out.beta_solve.x));
  } else {
    out.beta_solve.converged = true;
  }

  out.harmonic = {omega.p, omega.primal,
                  omega.values - out.d_alpha.values - out.delta_beta.values};
  out.converged = ok;
  return out;
}

Eigen::MatrixXd whitney_interpolate_at_barycenters(const SimplicialComplex& c,
                                                   const Cochain& u) {
  const Index n = c.dim();
  if (u.p != 1)
    throw std::invalid_argument("whitney_interpolate_at_barycenters: cochain is not "
                                "a 1-cochain");
  if (n < 1 || u.values.size() != c.count(1))
    throw std::invalid_argument("whitney_interpolate_at_barycenters: size mismatch");
  const IndexMatrix& top = c.levels[n].cells.rows;
  const IndexMatrix& edges = c.levels[1].cells.rows;
  Eigen::MatrixXd out(c.count(n), c.embedding_dim());
  const double mu = 1.0 / static_cast<double>(n + 1);
  std::vector<Index> key(2);
  for (Index t = 0; t < c.count(n); ++t) {
    const Eigen::MatrixXd verts = gather_vertices(c, n, t);
    const Eigen::MatrixXd grads = barycentric_differentials(verts).all();
    DenseVector field = DenseVector::Zero(c.embedding_dim());
    for (Index a = 0; a <= n; ++a)
      for (Index b = a + 1; b <= n; ++b) {
        key[0] = top(t, a);
        key[1] = top(t, b);
        const Index e = find_row(edges, key);
        field += u.values[e] * mu * (grads.col(b) - grads.col(a));
      }
    out.row(t) = field.transpose();
  }
  return out;
}

}  // namespace deckit
