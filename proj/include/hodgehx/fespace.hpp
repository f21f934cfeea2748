#ifndef HODGEHX_FESPACE_HPP
#define HODGEHX_FESPACE_HPP

#include <array>
#include <functional>
#include <vector>

#include "hodgehx/csr.hpp"
#include "hodgehx/mesh.hpp"

namespace hodgehx {

// Lowest-order spaces on a triangulated hypersurface:
//   P1   continuous piecewise-linear scalars (vertex DOFs)
//   N0   tangential edge elements (edge circulation DOFs)
//   RT0  facet elements (facet flux DOFs against the plus-side conormal)
enum class Family { P1, N0, RT0 };

// Per-element geometric data shared by assembly and evaluation.
struct ElementFrame {
  std::array<Vec, 4> grad;  // tangential gradients of the barycentric functions
  Vec normal;               // unit element normal from vertex order
  double measure;
};

ElementFrame element_frame(const SurfaceMesh& mesh, int elem);
// Tangential gradients of the barycentric coordinate functions.
std::vector<Vec> element_gradients(const SurfaceMesh& mesh, int elem);

// DOF table: global ids, orientation/normalization coefficients, and the
// local vertex tuples backing each basis function. Tuples are ordered by
// ascending global vertex id, so the tabulated Whitney formulas produce the
// globally oriented basis directly.
class FeSpace {
 public:
  FeSpace(const SurfaceMesh& mesh, Family family);

  const SurfaceMesh& mesh() const { return *mesh_; }
  Family family() const { return family_; }
  int n_dofs() const { return n_dofs_; }
  int dofs_per_element() const { return dofs_per_element_; }

  int dof(int elem, int l) const { return dof_ids_[elem * dofs_per_element_ + l]; }
  double coeff(int elem, int l) const { return coeffs_[elem * dofs_per_element_ + l]; }
  const std::array<int, 3>& local_vertices(int elem, int l) const {
    return locals_[elem * dofs_per_element_ + l];
  }

  // Basis function l of element elem at a barycentric point (N0/RT0).
  Vec eval_basis(int elem, int l, const double* bary, const ElementFrame& frame) const;
  // Element-constant differential of basis l. Scalar-valued cases (curl on
  // triangles, div) return the scalar in component 0; the curl of an edge
  // function on a tet mesh fills all four components.
  Vec eval_d(int elem, int l, const ElementFrame& frame) const;

 private:
  const SurfaceMesh* mesh_;
  Family family_;
  int n_dofs_ = 0;
  int dofs_per_element_ = 0;
  std::vector<int> dof_ids_;
  std::vector<double> coeffs_;
  std::vector<std::array<int, 3>> locals_;
};

// Whitney field with the given coefficient vector, evaluated at a
// barycentric point of one element.
Vec eval_field(const FeSpace& space, const std::vector<double>& coeffs, int elem,
               const double* bary, const ElementFrame& frame);

struct AssembledOperator {
  CsrMatrix matrix;  // stiffness + c * mass
  Family family;
  double c;
};

CsrMatrix p1_mass(const SurfaceMesh& mesh);
CsrMatrix p1_stiffness(const SurfaceMesh& mesh);
CsrMatrix whitney_mass(const SurfaceMesh& mesh, Family family);
CsrMatrix whitney_stiffness(const SurfaceMesh& mesh, Family family);

// (grad u, grad v) + c (u, v) on P1.
AssembledOperator assemble_p1(const SurfaceMesh& mesh, double c);
// (d u, d v) + c (u, v) on N0 or RT0, d the family's surface differential.
AssembledOperator assemble_whitney(const SurfaceMesh& mesh, Family family, double c);

// Matrix of the differential mapping the preceding space into `target`,
// acting on coefficient vectors: P1 -> N0 is the tangential gradient,
// P1 -> RT0 on triangle meshes the rotated gradient, N0 -> RT0 on tet
// meshes the surface curl. Entries are exactly -1, 0, +1.
CsrMatrix incidence_dminus(const SurfaceMesh& mesh, Family target);

// DOF interpolation of componentwise-P1 vector fields into N0 or RT0.
// Columns are component-major: column l * n_vertices + v.
CsrMatrix transfer_matrix(const SurfaceMesh& mesh, Family family);

// Load vector (g, basis) by degree-2 quadrature; only the tangential part
// of g contributes.
std::vector<double> l2_project_rhs(const SurfaceMesh& mesh, Family family,
                                   const std::function<Vec(const Vec&)>& g);

}  // namespace hodgehx

#endif
