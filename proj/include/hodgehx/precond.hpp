#ifndef HODGEHX_PRECOND_HPP
#define HODGEHX_PRECOND_HPP

#include <memory>

#include "hodgehx/fespace.hpp"
#include "hodgehx/inner_solver.hpp"
#include "hodgehx/operators.hpp"

namespace hodgehx {

// Nodal auxiliary-space preconditioner for the Whitney operator
// (d u, d v) + c (u, v): a Jacobi smoother, a componentwise-scalar solve
// pulled back through the vector transfer, and a scalar solve through the
// potential map, all built from the one scalar operator
// (grad p, grad q) + c (p, q).
//
// On tet meshes the facet family has no scalar potential; the third term
// instead wraps the edge-family smoother and transfer in the curl map.
class HxPreconditioner final : public LinearOperator {
 public:
  HxPreconditioner(const SurfaceMesh& mesh, const AssembledOperator& op,
                   const InnerOptions& inner);

  int rows() const override { return n_; }
  int cols() const override { return n_; }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;

  // The additive parts, for spectral diagnostics: 0 smoother, 1 auxiliary
  // vector space, 2 potential space.
  static constexpr int n_terms = 3;
  void apply_term(int term, const std::vector<double>& x, std::vector<double>& y) const;

 private:
  void scalar_block_solve(const std::vector<double>& rhs, std::vector<double>& sol) const;

  int n_ = 0;
  int n_vertices_ = 0;
  int ambient_dim_ = 0;
  Family family_;
  double c_ = 0.0;
  bool nested_curl_ = false;  // tet-mesh facet family
  std::vector<double> inv_diag_;
  CsrMatrix transfer_;
  CsrMatrix transfer_t_;
  CsrMatrix dminus_;    // incidence into the preconditioned space
  CsrMatrix dminus_t_;
  std::unique_ptr<LinearOperator> scalar_solver_;
  // Nested edge-space pieces (tet facet family only).
  std::vector<double> edge_inv_diag_;
  CsrMatrix edge_transfer_;
  CsrMatrix edge_transfer_t_;
};

// Block-diagonal preconditioner for the mixed saddle operator
// [[M0, (M1 G)^T], [M1 G, -K]]: the exact (or inner-approximated) scalar
// solve on the potential block and the auxiliary-space preconditioner at
// c = 1 on the field block.
class BlockHodgePreconditioner final : public LinearOperator {
 public:
  BlockHodgePreconditioner(const SurfaceMesh& mesh, Family family,
                           const InnerOptions& inner);

  int rows() const override { return n_scalar_ + n_field_; }
  int cols() const override { return rows(); }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;

  int scalar_size() const { return n_scalar_; }
  int field_size() const { return n_field_; }

 private:
  int n_scalar_ = 0;
  int n_field_ = 0;
  std::unique_ptr<LinearOperator> scalar_solver_;
  std::unique_ptr<HxPreconditioner> field_precond_;
};

}  // namespace hodgehx

#endif
