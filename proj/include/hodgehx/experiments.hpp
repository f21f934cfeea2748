#ifndef HODGEHX_EXPERIMENTS_HPP
#define HODGEHX_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "hodgehx/fespace.hpp"
#include "hodgehx/geometry.hpp"
#include "hodgehx/inner_solver.hpp"
#include "hodgehx/mesh.hpp"
#include "hodgehx/rng.hpp"

namespace hodgehx {

enum class Problem { Curl, Div, Harmonic, Convergence };

struct ExperimentConfig {
  SurfaceKind surface = SurfaceKind::Torus2;
  Problem problem = Problem::Curl;
  int levels = 5;       // level 0 is the initial mesh
  double c = 1.0;
  InnerOptions inner;   // scalar solver inside the preconditioners
  double tol = 1e-6;
  int maxit = 500;
  std::uint64_t seed = kDefaultSeed;
  std::string output_dir;  // empty: no files written
};

const char* surface_name(SurfaceKind s);
const char* problem_name(Problem p);
const char* inner_name(InnerKind k);

ImplicitSurface make_surface(SurfaceKind kind);
SurfaceMesh initial_mesh(const ImplicitSurface& surface);
SurfaceMesh refine_mesh(const SurfaceMesh& mesh, const ImplicitSurface& surface);

// Tangential projection at the closest sphere point of the exact field
// grad(x1+x2+x3+x4); the exact solution of both manufactured problems.
Vec sphere_exact_solution(const Vec& x);

// Finite-difference spot checks of the two identities behind the
// manufactured right-hand sides: the surface Laplacian of each coordinate is
// -3 times the coordinate, and the exact solution has zero surface curl.
// Throws Error if either fails.
void verify_sphere_identities(std::uint64_t seed = kDefaultSeed);

// L2 distance between a discrete field and the tangential projection of an
// exact ambient field, by elementwise midpoint-family quadrature.
double l2_field_error(const FeSpace& space, const std::vector<double>& coeffs,
                      const std::function<Vec(const Vec&)>& exact);

struct TableResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // one row per level; blanks are NaN
  std::string csv;                        // comment header + column row + data
  bool all_converged = true;
};

// One experiment table, one CSV row per refinement level. Solve modes report
// elements, unknowns, PCG iterations and the final criterion; harmonic mode
// reports the worst of the per-slot singular solves; convergence mode runs
// both field families against the manufactured sphere solution and reports
// errors, orders, and iteration counts.
TableResult run_table(const ExperimentConfig& config);

// Mesh (and for triangle meshes VTK) files for every level; harmonic mode
// attaches the computed fields to the finest level as cell vectors.
// Returns the written paths.
std::vector<std::string> run_export(const ExperimentConfig& config);

}  // namespace hodgehx

#endif
