#ifndef DECKIT_APPS_HPP
#define DECKIT_APPS_HPP

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "deckit/dec.hpp"
#include "deckit/io.hpp"
#include "deckit/rips.hpp"

namespace deckit {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  MeshFiles mesh;
  std::string points_path;
  std::string edges_path;
  double radius = 0.0;
  unsigned long long seed = 42;
  std::string out_dir = ".";
  Index eigs = 5;
  double kappa = 1.0;
  double mu = 1.0;
};

/// Seedable generator with a fixed output mapping, so runs are reproducible
/// across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(unsigned long long seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  DenseVector vector(Index n, double lo = -1.0, double hi = 1.0) {
    DenseVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

/// Columns orthonormalized under the weighted inner product x^T diag(w) y;
/// columns below rank_tol relative to their original norm are dropped.
Eigen::MatrixXd star_gram_schmidt(const Eigen::MatrixXd& columns,
                                  const DenseVector& weight, double rank_tol = 1e-8);

/// Localization pass: for column i, find the row of maximum magnitude and
/// apply a Householder reflection to the trailing columns to zero them at
/// that row. Preserves orthonormality.
void householder_localize(Eigen::MatrixXd& columns);

struct CavityResult {
  SimplicialComplex mesh;
  std::vector<Index> interior_edges;  // kept edge ids after BC elimination
  DenseVector eigenvalues;            // ascending, zero modes included
  Index zero_modes = 0;
  std::vector<Cochain> modes;         // first `count` nonzero modes, full edge length
};

CavityResult cavity_solve(const Eigen::MatrixXd& vertices, const SimplexArray& elements,
                          Index count);

struct DarcyResult {
  SimplicialComplex mesh;
  DenseVector flux;          // primal 1-cochain
  DenseVector pressure;      // dual 0-cochain, one value per triangle
  Eigen::MatrixXd velocity;  // per-triangle interpolated vectors
};

DarcyResult darcy_solve(const Eigen::MatrixXd& vertices, const SimplexArray& elements,
                        double kappa, double mu);

struct CohomologyResult {
  SimplicialComplex mesh;
  Index expected_betti1 = 0;
  Index rank = 0;
  bool deficient = false;
  Eigen::MatrixXd harmonics;  // one orthonormal localized column per class
};

CohomologyResult cohomology_solve(const Eigen::MatrixXd& vertices,
                                  const SimplexArray& elements,
                                  unsigned long long seed);

struct SensorResult {
  RipsComplex rips;
  DenseVector harmonic;    // normalized harmonic 1-cochain
  DenseVector magnitudes;  // |h| per edge
  double harmonic_ratio = 0.0;  // ||h|| / ||x|| before normalization
};

SensorResult sensor_solve(const Eigen::MatrixXd& points, double radius,
                          unsigned long long seed);

struct RankResult {
  std::vector<Index> labels;  // team label per score slot
  DenseVector alpha;          // shifted so each component's minimum is 0
  double residual = 0.0;
  Index components = 1;
};

RankResult rank_solve(const EdgeList& edges);

int cmd_cavity(const RunConfig& cfg);
int cmd_darcy(const RunConfig& cfg);
int cmd_cohomology(const RunConfig& cfg);
int cmd_sensor(const RunConfig& cfg);
int cmd_rank(const RunConfig& cfg);

/// Dispatch; maps input errors to exit code 1 and solver failures to 2.
int run(const RunConfig& cfg);

}  // namespace deckit

#endif  // DECKIT_APPS_HPP
