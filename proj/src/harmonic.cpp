#include "hodgehx/harmonic.hpp"

#include <cmath>
#include <string>

#include "hodgehx/errors.hpp"

namespace hodgehx {

HodgeSaddleSystem assemble_hodge_saddle(const SurfaceMesh& mesh, Family family) {
  if (family == Family::P1)
    throw UnsupportedFamilyError("the mixed system is posed on a field space");
  if (family == Family::RT0 && mesh.element_dim == 3)
    throw IncompatibleFamiliesError(
        "the facet family on tet meshes has no scalar potential block");

  HodgeSaddleSystem sys;
  sys.family = family;
  sys.n_scalar = mesh.n_vertices();
  sys.mass_scalar = p1_mass(mesh);
  sys.mass_field = whitney_mass(mesh, family);
  sys.stiffness = whitney_stiffness(mesh, family);
  sys.dminus = incidence_dminus(mesh, family);
  sys.n_field = sys.mass_field.rows();
  sys.gram = add(sys.mass_field, sys.stiffness, 1.0, 1.0);

  CsrMatrix coupling = sys.mass_field.multiply(sys.dminus);  // M1 G, field x scalar
  const int ns = sys.n_scalar;
  std::vector<Triplet> trips;
  trips.reserve(sys.mass_scalar.nnz() + 2 * coupling.nnz() + sys.stiffness.nnz());
  for (int i = 0; i < sys.mass_scalar.rows(); ++i)
    for (int k = sys.mass_scalar.row_ptr()[i]; k < sys.mass_scalar.row_ptr()[i + 1]; ++k)
      trips.push_back({i, sys.mass_scalar.col_idx()[k], sys.mass_scalar.values()[k]});
  for (int j = 0; j < coupling.rows(); ++j)
    for (int k = coupling.row_ptr()[j]; k < coupling.row_ptr()[j + 1]; ++k) {
      const int i = coupling.col_idx()[k];
      const double v = coupling.values()[k];
      trips.push_back({i, ns + j, v});
      trips.push_back({ns + j, i, v});
    }
  for (int i = 0; i < sys.stiffness.rows(); ++i)
    for (int k = sys.stiffness.row_ptr()[i]; k < sys.stiffness.row_ptr()[i + 1]; ++k)
      trips.push_back({ns + i, ns + sys.stiffness.col_idx()[k], -sys.stiffness.values()[k]});
  sys.matrix = CsrMatrix::from_triplets(ns + sys.n_field, ns + sys.n_field, trips);
  return sys;
}

HarmonicBasis compute_harmonic_basis(const HodgeSaddleSystem& sys,
                                     const LinearOperator& precond, int n_fields,
                                     double tol, std::uint64_t seed, int max_iterations) {
  const int n = sys.matrix.rows();
  if (precond.rows() != n)
    throw DimensionMismatchError("preconditioner does not match the saddle operator");
  CsrOperator a_op(sys.matrix);
  const int ns = sys.n_scalar;

  HarmonicBasis out;
  constexpr int kMaxAttempts = 5;
  for (int slot = 0; slot < n_fields; ++slot) {
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      ++out.attempts;
      Rng rng(seed + 1000 * static_cast<std::uint64_t>(slot) + static_cast<std::uint64_t>(attempt));
      std::vector<double> rhs = rng.uniform_vector(n);
      MinresResult result = minres_singular(a_op, precond, rhs, tol, max_iterations);
      if (!result.report.converged) continue;

      // One defect-correction solve: the sampled kernel vector carries
      // non-kernel contamination of the order of the solver tolerance, which
      // would drown both the harmonicity residuals and the dependence test.
      // Solving once more against A w and subtracting squares it away.
      std::vector<double> w = std::move(result.kernel_vector);
      MinresResult polish =
          minres_singular(a_op, precond, sys.matrix.multiply_vector(w), tol, max_iterations);
      if (!polish.report.converged) continue;
      axpy(-1.0, polish.x, w);
      SolveReport report = result.report;
      if (polish.report.iterations > report.iterations) report = polish.report;

      std::vector<double> u(w.begin() + ns, w.end());
      std::vector<double> sigma(w.begin(), w.begin() + ns);
      const double un = norm2(u);
      if (un <= 0.0 || norm2(sigma) > 0.1 * un) continue;

      std::vector<double> gu = sys.gram.multiply_vector(u);
      const double norm_before = std::sqrt(dot(u, gu));
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : out.fields) {
          const double coef = dot(q, gu);
          axpy(-coef, q, u);
        }
        gu = sys.gram.multiply_vector(u);
      }
      const double norm_after = std::sqrt(dot(u, gu));
      if (!(norm_after > 1e-8 * norm_before)) continue;

      for (double& v : u) v /= norm_after;
      out.fields.push_back(std::move(u));
      out.reports.push_back(report);
      accepted = true;
    }
    if (!accepted)
      throw RankDeficientSamplingError("no independent kernel sample for slot " +
                                       std::to_string(slot) + " after " +
                                       std::to_string(kMaxAttempts) + " attempts");
  }
  return out;
}

}  // namespace hodgehx
