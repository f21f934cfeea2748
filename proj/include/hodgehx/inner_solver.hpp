#ifndef HODGEHX_INNER_SOLVER_HPP
#define HODGEHX_INNER_SOLVER_HPP

#include <memory>

#include "hodgehx/amg.hpp"
#include "hodgehx/operators.hpp"

namespace hodgehx {

enum class InnerKind {
  DirectCholesky,  // exact sparse solve
  AmgVcycle,       // fixed number of V-cycles; stays a linear SPD operator
  PcgAmg,          // AMG-preconditioned CG to a fixed tolerance
};

struct InnerOptions {
  InnerKind kind = InnerKind::DirectCholesky;
  AmgOptions amg;
  double pcg_tol = 1e-8;  // PcgAmg only
  int pcg_maxit = 200;
};

// Default inner solve per surface dimension: direct factorization for the
// small scalar problems on triangle meshes, one V-cycle on tet meshes.
InnerOptions default_inner(int element_dim);

// Approximate inverse of the SPD matrix a.
std::unique_ptr<LinearOperator> make_inner_solver(const CsrMatrix& a,
                                                  const InnerOptions& options);

}  // namespace hodgehx

#endif
