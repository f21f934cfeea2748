#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "hodgehx/experiments.hpp"
#include "hodgehx/mesh_io.hpp"

using namespace hodgehx;

namespace {

struct CliOptions {
  std::string surface = "torus";
  std::string problem = "curl";
  std::string inner;  // empty: pick per surface dimension
  int levels = 5;
  double c = 1.0;
  double tol = 1e-6;
  int maxit = 500;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CliOptions* opt, bool with_c) {
  cmd->add_option("--surface", opt->surface, "Surface: torus or s3")
      ->check(CLI::IsMember({"torus", "s3"}));
  cmd->add_option("--levels", opt->levels, "Number of refinement levels, level 0 included")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--inner", opt->inner,
                  "Scalar solver inside the preconditioner (default: direct on the torus, "
                  "amg on s3)")
      ->check(CLI::IsMember({"direct", "amg", "pcg"}));
  cmd->add_option("--tol", opt->tol, "Relative stopping tolerance");
  cmd->add_option("--maxit", opt->maxit, "Iteration cap per solve");
  cmd->add_option("--seed", opt->seed, "Random seed for sampled right-hand sides");
  cmd->add_option("--out", opt->out, "Output directory for CSV/mesh/VTK files");
  if (with_c) cmd->add_option("--c", opt->c, "Zeroth-order coefficient");
}

ExperimentConfig to_config(const CliOptions& opt, Problem problem) {
  ExperimentConfig cfg;
  cfg.surface = opt.surface == "torus" ? SurfaceKind::Torus2 : SurfaceKind::Sphere3;
  cfg.problem = problem;
  cfg.levels = opt.levels;
  cfg.c = opt.c;
  cfg.tol = opt.tol;
  cfg.maxit = opt.maxit;
  cfg.seed = opt.seed;
  cfg.output_dir = opt.out;
  const int element_dim = cfg.surface == SurfaceKind::Torus2 ? 2 : 3;
  cfg.inner = default_inner(element_dim);
  if (opt.inner == "direct") cfg.inner.kind = InnerKind::DirectCholesky;
  if (opt.inner == "amg") cfg.inner.kind = InnerKind::AmgVcycle;
  if (opt.inner == "pcg") cfg.inner.kind = InnerKind::PcgAmg;
  return cfg;
}

int run_mesh(const CliOptions& opt) {
  const ExperimentConfig cfg = to_config(opt, Problem::Curl);
  const ImplicitSurface surface = make_surface(cfg.surface);
  SurfaceMesh mesh = initial_mesh(surface);
  std::printf("level,N,vertices,edges,h_max,quasi_uniformity,normal_deviation\n");
  for (int level = 0; level < cfg.levels; ++level) {
    if (level > 0) mesh = refine_mesh(mesh, surface);
    const MeshQualityReport q = quality(mesh, surface);
    std::printf("%d,%d,%d,%d,%.6g,%.6g,%.6g\n", level, mesh.n_elements(), mesh.n_vertices(),
                mesh.n_edges(), q.h_max, q.quasi_uniformity, q.max_normal_deviation);
    if (!cfg.output_dir.empty()) {
      std::filesystem::create_directories(cfg.output_dir);
      write_mesh(mesh, cfg.output_dir + "/mesh_level" + std::to_string(level) + ".txt");
    }
  }
  return 0;
}

int run_and_print(const ExperimentConfig& cfg) {
  const TableResult table = run_table(cfg);
  std::fputs(table.csv.c_str(), stdout);
  return table.all_converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auxiliary-space preconditioned solvers on triangulated closed surfaces"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* mesh_cmd = app.add_subcommand("mesh", "Generate and report the mesh hierarchy");
  add_common_flags(mesh_cmd, &opt, false);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Preconditioned CG iteration table");
  add_common_flags(solve_cmd, &opt, true);
  solve_cmd->add_option("--problem", opt.problem, "curl or div")
      ->check(CLI::IsMember({"curl", "div"}));

  CLI::App* harmonic_cmd =
      app.add_subcommand("harmonic", "Orthonormal harmonic fields via singular MINRES");
  add_common_flags(harmonic_cmd, &opt, false);

  CLI::App* conv_cmd =
      app.add_subcommand("convergence", "Manufactured-solution errors on the 3-sphere");
  add_common_flags(conv_cmd, &opt, true);

  CLI::App* export_cmd = app.add_subcommand("export", "Write mesh and field files");
  add_common_flags(export_cmd, &opt, false);
  export_cmd->add_option("--problem", opt.problem, "harmonic attaches the computed fields")
      ->check(CLI::IsMember({"curl", "div", "harmonic"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_cmd->parsed()) return run_mesh(opt);
    if (solve_cmd->parsed())
      return run_and_print(
          to_config(opt, opt.problem == "div" ? Problem::Div : Problem::Curl));
    if (harmonic_cmd->parsed()) return run_and_print(to_config(opt, Problem::Harmonic));
    if (conv_cmd->parsed()) {
      if (opt.surface != "s3") {
        std::fprintf(stderr, "convergence mode needs --surface s3\n");
        return 2;
      }
      return run_and_print(to_config(opt, Problem::Convergence));
    }
    if (export_cmd->parsed()) {
      Problem p = Problem::Curl;
      if (opt.problem == "harmonic") p = Problem::Harmonic;
      if (opt.problem == "div") p = Problem::Div;
      ExperimentConfig cfg = to_config(opt, p);
      if (cfg.output_dir.empty()) cfg.output_dir = ".";
      for (const std::string& path : run_export(cfg)) std::printf("%s\n", path.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
