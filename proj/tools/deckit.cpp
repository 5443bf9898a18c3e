#include <string>

#include "CLI11.hpp"
#include "deckit/apps.hpp"

namespace {

void add_mesh_options(CLI::App* cmd, deckit::RunConfig& cfg) {
  cmd->add_option("--vertices", cfg.mesh.vertices, "vertex coordinate file");
  cmd->add_option("--elements", cfg.mesh.elements, "top-simplex index file");
}

void add_common_options(CLI::App* cmd, deckit::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete exterior calculus toolkit"};
  app.require_subcommand(1);
  deckit::RunConfig cfg;

  CLI::App* cavity = app.add_subcommand("cavity", "resonant cavity eigenmodes");
  add_mesh_options(cavity, cfg);
  add_common_options(cavity, cfg);
  cavity->add_option("--eigs", cfg.eigs, "number of nonzero modes to write");

  CLI::App* darcy = app.add_subcommand("darcy", "mixed Darcy flow");
  add_mesh_options(darcy, cfg);
  add_common_options(darcy, cfg);
  darcy->add_option("--kappa", cfg.kappa, "permeability");
  darcy->add_option("--mu", cfg.mu, "viscosity");

  CLI::App* cohomology =
      app.add_subcommand("cohomology", "harmonic cochain basis of a mesh");
  add_mesh_options(cohomology, cfg);
  add_common_options(cohomology, cfg);

  CLI::App* sensor = app.add_subcommand("sensor", "Rips coverage check");
  sensor->add_option("--points", cfg.points_path, "point coordinate file");
  sensor->add_option("--radius", cfg.radius, "Rips radius");
  add_common_options(sensor, cfg);

  CLI::App* rank = app.add_subcommand("rank", "least-squares ranking");
  rank->add_option("--edges", cfg.edges_path, "edge list file: i j value");
  add_common_options(rank, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (CLI::App* cmd : {cavity, darcy, cohomology, sensor, rank})
    if (cmd->parsed()) cfg.subcommand = cmd->get_name();
  return deckit::run(cfg);
}
