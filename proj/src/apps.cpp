#include "deckit/apps.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace deckit {

namespace {

struct UnionFind {
  std::vector<Index> parent;

  explicit UnionFind(Index n) : parent(n) {
    std::iota(parent.begin(), parent.end(), Index(0));
  }
  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(Index a, Index b) { parent[find(a)] = find(b); }
  Index components() {
    Index count = 0;
    for (Index i = 0; i < static_cast<Index>(parent.size()); ++i)
      if (find(i) == i) ++count;
    return count;
  }
};

/// Principal submatrix at the rows/cols whose map entry is nonnegative.
SparseMatrixd restrict_to(const SparseMatrixd& a, const std::vector<Index>& map,
                          Index kept) {
  std::vector<Tripletd> entries;
  for (Index r = 0; r < a.rows; ++r) {
    if (map[r] < 0) continue;
    for (Index k = a.ptr[r]; k < a.ptr[r + 1]; ++k)
      if (map[a.indices[k]] >= 0)
        entries.push_back({map[r], map[a.indices[k]], a.data[k]});
  }
  return from_coo(kept, kept, std::move(entries));
}

Index boundary_degree(const SparseMatrixd& b2, Index edge) {
  return b2.ptr[edge + 1] - b2.ptr[edge];
}

/// Orientation of each ascending-vertex triangle in the plane: +1 if
/// counterclockwise.
std::vector<double> triangle_orientations(const SimplicialComplex& c) {
  const IndexMatrix& tri = c.levels[2].cells.rows;
  std::vector<double> orient(c.count(2));
  for (Index t = 0; t < c.count(2); ++t) {
    const Eigen::Vector2d a = c.vertices.row(tri(t, 0));
    const Eigen::Vector2d b = c.vertices.row(tri(t, 1));
    const Eigen::Vector2d d = c.vertices.row(tri(t, 2));
    const double det = (b.x() - a.x()) * (d.y() - a.y()) -
                       (b.y() - a.y()) * (d.x() - a.x());
    orient[t] = det >= 0.0 ? 1.0 : -1.0;
  }
  return orient;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void require_input(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void write_edge_rows(const std::string& path, const IndexMatrix& edges) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (Index r = 0; r < edges.rows(); ++r)
    out << edges(r, 0) << ' ' << edges(r, 1) << '\n';
}

}  // namespace

Eigen::MatrixXd star_gram_schmidt(const Eigen::MatrixXd& columns,
                                  const DenseVector& weight, double rank_tol) {
  const Index rows = columns.rows();
  auto dot = [&](const DenseVector& a, const DenseVector& b) {
    return a.cwiseProduct(weight).dot(b);
  };
  std::vector<DenseVector> kept;
  for (Index j = 0; j < columns.cols(); ++j) {
    DenseVector v = columns.col(j);
    const double original = std::sqrt(dot(v, v));
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const DenseVector& q : kept) v -= dot(q, v) * q;
    const double remaining = std::sqrt(dot(v, v));
    if (remaining <= rank_tol * original) continue;
    kept.push_back(v / remaining);
  }
  Eigen::MatrixXd out(rows, static_cast<Index>(kept.size()));
  for (Index j = 0; j < out.cols(); ++j) out.col(j) = kept[j];
  return out;
}

void householder_localize(Eigen::MatrixXd& columns) {
  const Index k = columns.cols();
  for (Index i = 0; i < k; ++i) {
    const Index width = k - i;
    Index peak = 0;
    double best = -1.0;
    for (Index r = 0; r < columns.rows(); ++r) {
      const double mag = columns.row(r).segment(i, width).norm();
      if (mag > best) {
        best = mag;
        peak = r;
      }
    }
    if (best <= 0.0) continue;
    if (width > 1) {
      DenseVector z = columns.row(peak).segment(i, width).transpose();
      const double alpha = (z[0] >= 0.0 ? -1.0 : 1.0) * z.norm();
      DenseVector u = z;
      u[0] -= alpha;
      const double uu = u.squaredNorm();
      if (uu > 0.0) {
        // Right-multiply by I - 2uu^T/u^Tu, zeroing row `peak` past column i.
        for (Index r = 0; r < columns.rows(); ++r) {
          const double proj =
              2.0 * columns.row(r).segment(i, width).dot(u.transpose()) / uu;
          columns.row(r).segment(i, width) -= proj * u.transpose();
        }
      }
    }
    if (columns(peak, i) < 0.0) columns.col(i) = -columns.col(i);
  }
}

CavityResult cavity_solve(const Eigen::MatrixXd& vertices, const SimplexArray& elements,
                          Index count) {
  if (elements.p != 2)
    throw InputError("cavity: mesh must consist of triangles");
  CavityResult out;
  out.mesh = build_complex(vertices, elements);
  const SimplicialComplex& c = out.mesh;
  const Index n1 = c.count(1);

  const SparseMatrixd stiffness = whitney_stiffness(c, 1);
  const MassMatrix mass = whitney_mass_matrix(c, 1);

  const SparseMatrixd& b2 = c.levels[2].boundary;
  std::vector<Index> old_to_new(n1, -1);
  for (Index e = 0; e < n1; ++e)
    if (boundary_degree(b2, e) != 1) {
      old_to_new[e] = static_cast<Index>(out.interior_edges.size());
      out.interior_edges.push_back(e);
    }
  const Index ni = static_cast<Index>(out.interior_edges.size());
  if (ni == 0) throw SolverError("cavity: no interior edges after boundary removal");

  const SparseMatrixd k = restrict_to(stiffness, old_to_new, ni);
  const SparseMatrixd m = restrict_to(mass.matrix, old_to_new, ni);
  const EigResult eig = symmetric_generalized_eig(k, m, ni);
  out.eigenvalues = eig.eigenvalues;

  Index zeros = 0;
  while (zeros < ni && out.eigenvalues[zeros] < 1e-6) ++zeros;
  out.zero_modes = zeros;

  for (Index i = 0; i < count && zeros + i < ni; ++i) {
    DenseVector full = DenseVector::Zero(n1);
    for (Index j = 0; j < ni; ++j)
      full[out.interior_edges[j]] = eig.eigenvectors(j, zeros + i);
    out.modes.push_back({1, true, std::move(full)});
  }
  return out;
}

DarcyResult darcy_solve(const Eigen::MatrixXd& vertices, const SimplexArray& elements,
                        double kappa, double mu) {
  if (elements.p != 2)
    throw InputError("darcy: mesh must consist of triangles");
  if (vertices.cols() != 2)
    throw InputError("darcy: mesh must be embedded in the plane");
  if (kappa <= 0.0 || mu <= 0.0)
    throw InputError("darcy: kappa and mu must be positive");

  DarcyResult out;
  out.mesh = build_complex(vertices, elements);
  SimplicialComplex& c = out.mesh;
  attach_geometry(c);
  const DenseVector star1 = dec_hodge_star(c, 1).diagonal;

  const Index n1 = c.count(1);
  const Index n2 = c.count(2);
  const SparseMatrixd& b2 = c.levels[2].boundary;
  const std::vector<double> orient = triangle_orientations(c);
  const IndexMatrix& edges = c.levels[1].cells.rows;

  // Prescribed flux of the uniform field (1, 0) across boundary edges:
  // psi = integral of u . n with n the right-hand normal of the ascending edge.
  DenseVector psi = DenseVector::Zero(n1);
  std::vector<Index> flux_id(n1, -1);
  std::vector<Index> interior;
  for (Index e = 0; e < n1; ++e) {
    if (boundary_degree(b2, e) == 1) {
      psi[e] = vertices(edges(e, 1), 1) - vertices(edges(e, 0), 1);
    } else {
      flux_id[e] = static_cast<Index>(interior.size());
      interior.push_back(e);
    }
  }

  double net = 0.0, scale = 0.0;
  for (Index e = 0; e < n1; ++e) {
    if (flux_id[e] >= 0) continue;
    const Index k = b2.ptr[e];
    net += orient[b2.indices[k]] * b2.data[k] * psi[e];
    scale += std::abs(psi[e]);
  }
  if (std::abs(net) > 1e-8 * std::max(scale, 1.0))
    throw InputError("darcy: boundary flux is inconsistent, net " +
                     std::to_string(net));

  // Unknowns: interior fluxes, then pressures of triangles 1..n2-1 with the
  // pressure of triangle 0 pinned to zero. Incidence uses counterclockwise
  // coherent signs so the recovered pressure is the physical one.
  const Index ni = static_cast<Index>(interior.size());
  const Index order = ni + n2 - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(order, order);
  DenseVector rhs = DenseVector::Zero(order);

  for (Index e = 0; e < n1; ++e) {
    for (Index k = b2.ptr[e]; k < b2.ptr[e + 1]; ++k) {
      const Index t = b2.indices[k];
      const double inc = orient[t] * b2.data[k];
      if (flux_id[e] >= 0) {
        if (t > 0) a(flux_id[e], ni + t - 1) += inc;  // momentum row, pressure term
        if (t > 0) a(ni + t - 1, flux_id[e]) += inc;  // conservation row, flux term
      } else if (t > 0) {
        rhs[ni + t - 1] -= inc * psi[e];  // known boundary flux
      }
    }
  }
  for (Index j = 0; j < ni; ++j)
    a(j, j) = -(mu / kappa) * star1[interior[j]];

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw SolverError("darcy: saddle system is singular");
  const DenseVector x = lu.solve(rhs);

  out.flux = psi;
  for (Index j = 0; j < ni; ++j) out.flux[interior[j]] = x[j];
  out.pressure = DenseVector::Zero(n2);
  for (Index t = 1; t < n2; ++t) out.pressure[t] = x[ni + t - 1];
  out.pressure.array() -= out.pressure.mean();

  const Eigen::MatrixXd w =
      whitney_interpolate_at_barycenters(c, {1, true, out.flux});
  out.velocity.resize(n2, 2);
  out.velocity.col(0) = w.col(1);
  out.velocity.col(1) = -w.col(0);
  return out;
}

CohomologyResult cohomology_solve(const Eigen::MatrixXd& vertices,
                                  const SimplexArray& elements,
                                  unsigned long long seed) {
  if (elements.p != 2)
    throw InputError("cohomology: mesh must consist of triangles");
  CohomologyResult out;
  out.mesh = build_complex(vertices, elements);
  SimplicialComplex& c = out.mesh;
  attach_geometry(c);
  const DenseVector star1 = dec_hodge_star(c, 1).diagonal;

  const Index n1 = c.count(1);
  const IndexMatrix& edges = c.levels[1].cells.rows;
  UnionFind uf(c.count(0));
  for (Index e = 0; e < n1; ++e) uf.unite(edges(e, 0), edges(e, 1));
  const Index b0 = uf.components();
  const Index chi = c.count(0) - n1 + c.count(2);
  out.expected_betti1 = b0 - chi;

  if (out.expected_betti1 <= 0) {
    out.harmonics.resize(n1, 0);
    return out;
  }

  const SparseMatrixd d0 = coboundary(c, 0);
  const SparseMatrixd d1 = coboundary(c, 1);
  SeededRng rng(seed);
  Eigen::MatrixXd trials(n1, 2 * out.expected_betti1);
  for (Index k = 0; k < trials.cols(); ++k) {
    const Cochain omega{1, true, rng.vector(n1)};
    const HodgeDecomposition dec = hodge_decompose(omega, &d0, &d1, star1, 1e-12);
    if (!dec.converged)
      throw SolverError("cohomology: Hodge decomposition did not converge");
    trials.col(k) = dec.harmonic.values;
  }

  out.harmonics = star_gram_schmidt(trials, star1, 1e-8);
  out.rank = out.harmonics.cols();
  out.deficient = out.rank != out.expected_betti1;
  householder_localize(out.harmonics);
  return out;
}

SensorResult sensor_solve(const Eigen::MatrixXd& points, double radius,
                          unsigned long long seed) {
  if (radius <= 0.0) throw InputError("sensor: radius must be positive");
  SensorResult out;
  out.rips = build_rips(points, radius, 2);
  if (out.rips.dim() < 1)
    throw InputError("sensor: no edges within the given radius");

  const Index n1 = out.rips.skeleton(1).count();
  const SparseMatrixd d0 = transpose(out.rips.boundary(1));
  const SparseMatrixd d1 = out.rips.dim() >= 2
                               ? transpose(out.rips.boundary(2))
                               : SparseMatrixd::zero(0, n1);

  SeededRng rng(seed);
  const Cochain omega{1, true, rng.vector(n1)};
  const DenseVector ones = DenseVector::Ones(n1);
  const HodgeDecomposition dec = hodge_decompose(omega, &d0, &d1, ones, 1e-12);
  if (!dec.converged)
    throw SolverError("sensor: Hodge decomposition did not converge");

  const DenseVector& h = dec.harmonic.values;
  const double hn = h.norm();
  out.harmonic_ratio = hn / omega.values.norm();
  out.harmonic = hn > 1e-300 ? DenseVector(h / hn) : DenseVector::Zero(n1);
  out.magnitudes = out.harmonic.cwiseAbs();
  return out;
}

RankResult rank_solve(const EdgeList& edges) {
  SimplexArray s1;
  s1.p = 1;
  s1.rows = edges.edges;
  const AbstractComplex ac = build_abstract({s1});
  const SparseMatrixd a = transpose(ac.levels[1].boundary);  // rows: games

  const SolveResult sol = least_squares(a, edges.values);
  if (!sol.converged) throw SolverError("rank: least squares did not converge");

  RankResult out;
  const IndexMatrix& teams = ac.levels[0].cells.rows;
  const Index n0 = teams.rows();
  out.labels.resize(n0);
  for (Index i = 0; i < n0; ++i) out.labels[i] = teams(i, 0);

  UnionFind uf(n0);
  for (Index e = 0; e < a.rows; ++e) {
    const Index first = a.indices[a.ptr[e]];
    for (Index k = a.ptr[e] + 1; k < a.ptr[e + 1]; ++k)
      uf.unite(first, a.indices[k]);
  }
  out.components = uf.components();

  out.alpha = sol.x;
  std::vector<double> low(n0, std::numeric_limits<double>::infinity());
  for (Index i = 0; i < n0; ++i) {
    const Index root = uf.find(i);
    low[root] = std::min(low[root], out.alpha[i]);
  }
  for (Index i = 0; i < n0; ++i) out.alpha[i] -= low[uf.find(i)];

  out.residual = (matvec(a, out.alpha) - edges.values).norm();
  return out;
}

int cmd_cavity(const RunConfig& cfg) {
  require_input(!cfg.mesh.vertices.empty(), "cavity: --vertices is required");
  require_input(!cfg.mesh.elements.empty(), "cavity: --elements is required");
  const auto [vertices, elements] = load_mesh(cfg.mesh);
  const CavityResult r = cavity_solve(vertices, elements, cfg.eigs);

  write_vector(out_path(cfg, "eigenvalues.txt"), r.eigenvalues);
  for (std::size_t i = 0; i < r.modes.size(); ++i) {
    const std::string tag = std::to_string(i + 1);
    write_vector(out_path(cfg, "mode_" + tag + ".txt"), r.modes[i].values);
    write_matrix(out_path(cfg, "mode_" + tag + "_field.txt"),
                 whitney_interpolate_at_barycenters(r.mesh, r.modes[i]));
  }

  std::cout << "cavity: " << r.mesh.count(1) << " edges, "
            << r.interior_edges.size() << " interior, " << r.zero_modes
            << " zero modes\n";
  std::cout << "cavity: first nonzero eigenvalues:";
  for (Index i = r.zero_modes;
       i < std::min<Index>(r.zero_modes + cfg.eigs, r.eigenvalues.size()); ++i)
    std::cout << ' ' << format_value(r.eigenvalues[i]);
  std::cout << '\n';
  return 0;
}

int cmd_darcy(const RunConfig& cfg) {
  require_input(!cfg.mesh.vertices.empty(), "darcy: --vertices is required");
  require_input(!cfg.mesh.elements.empty(), "darcy: --elements is required");
  const auto [vertices, elements] = load_mesh(cfg.mesh);
  const DarcyResult r = darcy_solve(vertices, elements, cfg.kappa, cfg.mu);

  write_vector(out_path(cfg, "flux.txt"), r.flux);
  write_vector(out_path(cfg, "pressure.txt"), r.pressure);
  write_matrix(out_path(cfg, "velocity.txt"), r.velocity);

  std::cout << "darcy: flux on " << r.flux.size() << " edges, pressure on "
            << r.pressure.size() << " triangles\n";
  std::cout << "darcy: pressure range [" << format_value(r.pressure.minCoeff())
            << ", " << format_value(r.pressure.maxCoeff()) << "]\n";
  return 0;
}

int cmd_cohomology(const RunConfig& cfg) {
  require_input(!cfg.mesh.vertices.empty(), "cohomology: --vertices is required");
  require_input(!cfg.mesh.elements.empty(), "cohomology: --elements is required");
  const auto [vertices, elements] = load_mesh(cfg.mesh);
  const CohomologyResult r = cohomology_solve(vertices, elements, cfg.seed);

  for (Index i = 0; i < r.rank; ++i) {
    const std::string tag = std::to_string(i + 1);
    const Cochain h{1, true, r.harmonics.col(i)};
    write_vector(out_path(cfg, "harmonic_" + tag + ".txt"), h.values);
    write_matrix(out_path(cfg, "harmonic_" + tag + "_field.txt"),
                 whitney_interpolate_at_barycenters(r.mesh, h));
  }

  std::cout << "cohomology: expected Betti_1 " << r.expected_betti1
            << ", harmonic rank " << r.rank << "\n";
  if (r.deficient)
    std::cerr << "warning: harmonic rank " << r.rank
              << " differs from the expected " << r.expected_betti1 << "\n";
  return 0;
}

int cmd_sensor(const RunConfig& cfg) {
  require_input(!cfg.points_path.empty(), "sensor: --points is required");
  require_input(cfg.radius > 0.0, "sensor: --radius must be positive");
  const Eigen::MatrixXd points = load_points(cfg.points_path);
  const SensorResult r = sensor_solve(points, cfg.radius, cfg.seed);

  write_vector(out_path(cfg, "harmonic.txt"), r.harmonic);
  write_vector(out_path(cfg, "magnitudes.txt"), r.magnitudes);
  write_edge_rows(out_path(cfg, "edges.txt"), r.rips.skeleton(1).rows);

  const Index triangles = r.rips.dim() >= 2 ? r.rips.skeleton(2).count() : 0;
  std::cout << "sensor: " << points.rows() << " points, "
            << r.rips.skeleton(1).count() << " edges, " << triangles
            << " triangles\n";
  std::cout << "sensor: harmonic ratio " << format_value(r.harmonic_ratio) << "\n";
  return 0;
}

int cmd_rank(const RunConfig& cfg) {
  require_input(!cfg.edges_path.empty(), "rank: --edges is required");
  const EdgeList edges = load_edges(cfg.edges_path);
  const RankResult r = rank_solve(edges);

  std::ofstream scores(out_path(cfg, "scores.txt"));
  if (!scores) throw std::runtime_error("scores.txt: cannot open for writing");
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    scores << r.labels[i] << ' ' << format_value(r.alpha[i]) << '\n';
    std::cout << "team " << r.labels[i] << ": " << format_value(r.alpha[i]) << "\n";
  }
  std::cout << "rank: residual " << format_value(r.residual) << "\n";
  if (r.components > 1)
    std::cerr << "warning: " << r.components
              << " disconnected groups; scores are independent per group\n";
  return 0;
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.subcommand == "cavity") return cmd_cavity(cfg);
    if (cfg.subcommand == "darcy") return cmd_darcy(cfg);
    if (cfg.subcommand == "cohomology") return cmd_cohomology(cfg);
    if (cfg.subcommand == "sensor") return cmd_sensor(cfg);
    if (cfg.subcommand == "rank") return cmd_rank(cfg);
    std::cerr << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace deckit
