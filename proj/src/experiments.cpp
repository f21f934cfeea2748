#include "hodgehx/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hodgehx/errors.hpp"
#include "hodgehx/harmonic.hpp"
#include "hodgehx/krylov.hpp"
#include "hodgehx/mesh_io.hpp"
#include "hodgehx/precond.hpp"
#include "hodgehx/quadrature.hpp"

namespace hodgehx {

const char* surface_name(SurfaceKind s) {
  return s == SurfaceKind::Torus2 ? "torus" : "s3";
}

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::Curl: return "curl";
    case Problem::Div: return "div";
    case Problem::Harmonic: return "harmonic";
    case Problem::Convergence: return "convergence";
  }
  return "?";
}

const char* inner_name(InnerKind k) {
  switch (k) {
    case InnerKind::DirectCholesky: return "direct";
    case InnerKind::AmgVcycle: return "amg";
    case InnerKind::PcgAmg: return "pcg";
  }
  return "?";
}

ImplicitSurface make_surface(SurfaceKind kind) {
  return kind == SurfaceKind::Torus2 ? ImplicitSurface::torus2() : ImplicitSurface::sphere3();
}

SurfaceMesh initial_mesh(const ImplicitSurface& surface) {
  if (surface.kind() == SurfaceKind::Torus2) return build_torus_initial(12, 8, surface);
  return build_s3_initial();
}

SurfaceMesh refine_mesh(const SurfaceMesh& mesh, const ImplicitSurface& surface) {
  return mesh.element_dim == 2 ? refine_quad(mesh, surface) : refine_red(mesh, surface);
}

Vec sphere_exact_solution(const Vec& x) {
  const double r = norm(x);
  if (r < ImplicitSurface::medial_tol) throw MedialAxisError("sphere projection at the origin");
  Vec a = x * (1.0 / r);
  const double phi = a[0] + a[1] + a[2] + a[3];
  return vec4(1.0 - phi * a[0], 1.0 - phi * a[1], 1.0 - phi * a[2], 1.0 - phi * a[3]);
}

namespace {

// Degree-0 homogeneous extension of the restriction of x_i to the sphere.
double coordinate_extension(const Vec& y, int i) { return y[i] / norm(y); }

Vec unit_axis(int j) {
  Vec e = vec4(0, 0, 0, 0);
  e[j] = 1.0;
  return e;
}

int levi_civita4(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

Vec random_unit4(Rng& rng) {
  for (;;) {
    Vec v = vec4(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0,
                 2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    const double n = norm(v);
    if (n > 0.1 && n < 1.0) return v * (1.0 / n);
  }
}

}  // namespace

void verify_sphere_identities(std::uint64_t seed) {
  Rng rng(seed);
  const double h = 1e-3;
  const double tol = 1e-4;
  for (int trial = 0; trial < 8; ++trial) {
    const Vec p = random_unit4(rng);

    // Ambient Laplacian of the degree-0 extension equals the surface
    // Laplacian on the sphere; each coordinate must give -3 times itself.
    for (int i = 0; i < 4; ++i) {
      double lap = 0.0;
      for (int j = 0; j < 4; ++j) {
        const Vec e = unit_axis(j);
        lap += coordinate_extension(p + e * h, i) - 2.0 * coordinate_extension(p, i) +
               coordinate_extension(p - e * h, i);
      }
      lap /= h * h;
      if (std::abs(lap + 3.0 * p[i]) > tol)
        throw Error("surface Laplacian spot check failed for a coordinate function");
    }

    // The exact solution is a surface gradient, so its surface curl
    // (the wedge against the normal) must vanish.
    double jac[4][4];
    for (int j = 0; j < 4; ++j) {
      const Vec e = unit_axis(j);
      const Vec up = sphere_exact_solution(p + e * h);
      const Vec um = sphere_exact_solution(p - e * h);
      for (int k = 0; k < 4; ++k) jac[j][k] = (up[k] - um[k]) / (2.0 * h);
    }
    for (int m = 0; m < 4; ++m) {
      double curl_m = 0.0;
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            const int s = levi_civita4(m, j, k, l);
            if (s != 0) curl_m += s * jac[j][k] * p[l];
          }
      if (std::abs(curl_m) > tol)
        throw Error("surface curl spot check failed for the manufactured solution");
    }
  }
}

double l2_field_error(const FeSpace& space, const std::vector<double>& coeffs,
                      const std::function<Vec(const Vec&)>& exact) {
  const SurfaceMesh& mesh = space.mesh();
  const QuadratureRule rule = simplex_rule(mesh.element_dim, 2);
  double total = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementFrame frame = element_frame(mesh, e);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const double* bary = rule.points[q].data();
      Vec x = vec4(0, 0, 0, 0);
      for (int v = 0; v <= mesh.element_dim; ++v)
        x = x + mesh.vertices[mesh.element_vertex(e, v)] * bary[v];
      const Vec uh = eval_field(space, coeffs, e, bary, frame);
      Vec ue = exact(x);
      ue = ue - frame.normal * dot(ue, frame.normal);
      const Vec diff = uh - ue;
      total += rule.weights[q] * frame.measure * dot(diff, diff);
    }
  }
  return std::sqrt(total);
}

namespace {

constexpr double kBlank = std::numeric_limits<double>::quiet_NaN();

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
  else
    std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string config_header(const ExperimentConfig& cfg) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "# surface=%s problem=%s levels=%d c=%.12g inner=%s tol=%.12g seed=%llu",
                surface_name(cfg.surface), problem_name(cfg.problem), cfg.levels, cfg.c,
                inner_name(cfg.inner.kind), cfg.tol,
                static_cast<unsigned long long>(cfg.seed));
  return buf;
}

std::string render_csv(const ExperimentConfig& cfg, const TableResult& table) {
  std::string out = config_header(cfg);
  out += '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.levels < 1) throw Error("levels must be at least 1");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw Error("tolerance must lie in (0,1)");
  if (cfg.problem != Problem::Harmonic && !(cfg.c > 0.0))
    throw InvalidCError("the zeroth-order coefficient must be positive");
  if (cfg.problem == Problem::Convergence && cfg.surface != SurfaceKind::Sphere3)
    throw Error("the manufactured solution lives on the 3-sphere");
}

std::function<Vec(const Vec&)> solve_rhs(const ExperimentConfig& cfg, Family family) {
  if (cfg.surface == SurfaceKind::Torus2)
    return [](const Vec&) { return vec3(1.0, 1.0, 1.0); };
  const double scale = family == Family::N0 ? cfg.c : 3.0 + cfg.c;
  return [scale](const Vec& x) { return sphere_exact_solution(x) * scale; };
}

struct LevelSolve {
  int iterations = 0;
  double criterion = 0.0;
  bool converged = false;
  std::vector<double> x;
  int n_dofs = 0;
  SolveReport report;
};

LevelSolve solve_level(const SurfaceMesh& mesh, Family family, const ExperimentConfig& cfg) {
  AssembledOperator op = assemble_whitney(mesh, family, cfg.c);
  HxPreconditioner hx(mesh, op, cfg.inner);
  const std::vector<double> rhs = l2_project_rhs(mesh, family, solve_rhs(cfg, family));
  LevelSolve out;
  out.n_dofs = op.matrix.rows();
  CsrOperator a_op(std::move(op.matrix));
  PcgResult res = pcg(a_op, hx, rhs, cfg.tol, cfg.maxit);
  out.iterations = res.report.iterations;
  out.criterion = res.report.stop_criterion_value;
  out.converged = res.report.converged;
  out.x = std::move(res.x);
  out.report = std::move(res.report);
  return out;
}

void maybe_write_history(const ExperimentConfig& cfg, const std::string& stem,
                         const SolveReport& report) {
  if (cfg.output_dir.empty()) return;
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/" + stem + ".csv");
  write_history_csv(report, out);
}

}  // namespace

TableResult run_table(const ExperimentConfig& cfg) {
  validate(cfg);
  const ImplicitSurface surface = make_surface(cfg.surface);
  if (cfg.surface == SurfaceKind::Sphere3 &&
      (cfg.problem == Problem::Convergence || cfg.problem == Problem::Curl ||
       cfg.problem == Problem::Div))
    verify_sphere_identities(cfg.seed);

  TableResult table;
  switch (cfg.problem) {
    case Problem::Curl:
    case Problem::Div:
      table.columns = {"N", "dofs", "iterations", "criterion"};
      break;
    case Problem::Harmonic:
      table.columns = {"N", "dofs", "fields", "iterations", "criterion"};
      break;
    case Problem::Convergence:
      table.columns = {"N",      "err_n0",  "order_n0", "it_n0",
                       "err_rt0", "order_rt0", "it_rt0"};
      break;
  }

  SurfaceMesh mesh = initial_mesh(surface);
  double prev_err_n0 = kBlank, prev_err_rt0 = kBlank;
  for (int level = 0; level < cfg.levels; ++level) {
    if (level > 0) mesh = refine_mesh(mesh, surface);
    const double n_elems = mesh.n_elements();

    if (cfg.problem == Problem::Curl || cfg.problem == Problem::Div) {
      const Family family = cfg.problem == Problem::Curl ? Family::N0 : Family::RT0;
      LevelSolve s = solve_level(mesh, family, cfg);
      table.all_converged = table.all_converged && s.converged;
      table.rows.push_back({n_elems, static_cast<double>(s.n_dofs),
                            static_cast<double>(s.iterations), s.criterion});
      maybe_write_history(cfg, std::string("history_") + problem_name(cfg.problem) +
                                   "_level" + std::to_string(level),
                          s.report);
    } else if (cfg.problem == Problem::Harmonic) {
      HodgeSaddleSystem sys = assemble_hodge_saddle(mesh, Family::N0);
      BlockHodgePreconditioner block(mesh, Family::N0, cfg.inner);
      HarmonicBasis basis = compute_harmonic_basis(sys, block, mesh.first_betti(), cfg.tol,
                                                   cfg.seed, cfg.maxit);
      int worst_it = 0;
      double worst_crit = 0.0;
      for (const auto& rep : basis.reports) {
        worst_it = std::max(worst_it, rep.iterations);
        worst_crit = std::max(worst_crit, rep.stop_criterion_value);
        table.all_converged = table.all_converged && rep.converged;
      }
      table.rows.push_back({n_elems, static_cast<double>(sys.matrix.rows()),
                            static_cast<double>(basis.fields.size()),
                            static_cast<double>(worst_it), worst_crit});
    } else {
      LevelSolve sn = solve_level(mesh, Family::N0, cfg);
      LevelSolve sr = solve_level(mesh, Family::RT0, cfg);
      table.all_converged = table.all_converged && sn.converged && sr.converged;
      FeSpace space_n(mesh, Family::N0);
      FeSpace space_r(mesh, Family::RT0);
      const double err_n = l2_field_error(space_n, sn.x, sphere_exact_solution);
      const double err_r = l2_field_error(space_r, sr.x, sphere_exact_solution);
      const double ord_n = std::isnan(prev_err_n0) ? kBlank : std::log2(prev_err_n0 / err_n);
      const double ord_r = std::isnan(prev_err_rt0) ? kBlank : std::log2(prev_err_rt0 / err_r);
      prev_err_n0 = err_n;
      prev_err_rt0 = err_r;
      table.rows.push_back({n_elems, err_n, ord_n, static_cast<double>(sn.iterations),
                            err_r, ord_r, static_cast<double>(sr.iterations)});
    }
  }

  table.csv = render_csv(cfg, table);
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir + "/" + std::string(problem_name(cfg.problem)) + "_" +
                      surface_name(cfg.surface) + ".csv");
    out << table.csv;
  }
  return table;
}

std::vector<std::string> run_export(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.output_dir.empty()) throw Error("export needs an output directory");
  std::filesystem::create_directories(cfg.output_dir);
  const ImplicitSurface surface = make_surface(cfg.surface);

  std::vector<std::string> written;
  SurfaceMesh mesh = initial_mesh(surface);
  for (int level = 0; level < cfg.levels; ++level) {
    if (level > 0) mesh = refine_mesh(mesh, surface);
    const std::string stem = cfg.output_dir + "/mesh_level" + std::to_string(level);
    write_mesh(mesh, stem + ".txt");
    written.push_back(stem + ".txt");
    if (mesh.element_dim != 2) continue;

    std::vector<CellVectorField> fields;
    if (cfg.problem == Problem::Harmonic && level == cfg.levels - 1) {
      HodgeSaddleSystem sys = assemble_hodge_saddle(mesh, Family::N0);
      BlockHodgePreconditioner block(mesh, Family::N0, cfg.inner);
      HarmonicBasis basis = compute_harmonic_basis(sys, block, mesh.first_betti(), cfg.tol,
                                                   cfg.seed, cfg.maxit);
      FeSpace space(mesh, Family::N0);
      const double center[4] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0};
      for (std::size_t f = 0; f < basis.fields.size(); ++f) {
        std::vector<Vec> cell_values(mesh.n_elements());
        for (int e = 0; e < mesh.n_elements(); ++e) {
          const ElementFrame frame = element_frame(mesh, e);
          cell_values[e] = eval_field(space, basis.fields[f], e, center, frame);
        }
        fields.push_back({"harmonic_" + std::to_string(f + 1), std::move(cell_values)});
      }
    }
    write_vtk(mesh, stem + ".vtk", fields);
    written.push_back(stem + ".vtk");
  }
  return written;
}

}  // namespace hodgehx
