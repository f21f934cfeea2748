#ifndef HODGEHX_KRYLOV_HPP
#define HODGEHX_KRYLOV_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hodgehx/operators.hpp"
#include "hodgehx/rng.hpp"

namespace hodgehx {

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // stopping criterion per iteration, entry 0 at start
  bool converged = false;
  double stop_criterion_value = 0.0;
  double wall_time = 0.0;                // seconds
  bool lanczos_breakdown = false;        // MINRES only: Krylov space exhausted early
};

void write_history_csv(const SolveReport& report, std::ostream& out);

struct PcgResult {
  std::vector<double> x;
  SolveReport report;
};

// Preconditioned conjugate gradients for SPD A with SPD preconditioner B.
// Starts from x = 0 and stops when |B r_k| / |b| <= tol. Nonpositive
// curvature or a nonpositive preconditioned inner product raises
// BreakdownIndefiniteError.
PcgResult pcg(const LinearOperator& a, const LinearOperator& b,
              const std::vector<double>& rhs, double tol = 1e-6, int maxit = 500);

struct MinresResult {
  std::vector<double> x;
  std::vector<double> kernel_vector;  // B (b - A x) at the final iterate
  SolveReport report;
};

// Preconditioned MINRES for symmetric, possibly singular A with SPD B.
// Minimizes |b - A x| in the B-norm over the Krylov space and stops when
// |A B (b - A x_k)| / |b| <= tol, so it converges for consistent and
// inconsistent right-hand sides alike. For b with a component in the
// kernel of A, the returned kernel_vector approximates that kernel part.
MinresResult minres_singular(const LinearOperator& a, const LinearOperator& b,
                             const std::vector<double>& rhs, double tol = 1e-6,
                             int maxit = 500);

struct ConditionEstimate {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool converged = false;  // Ritz residuals of both extremes small
};

// Extreme eigenvalue estimates of B A via Lanczos in the B inner product
// with full reorthogonalization.
ConditionEstimate estimate_condition(const LinearOperator& a, const LinearOperator& b,
                                     int n_steps, std::uint64_t seed = kDefaultSeed);

}  // namespace hodgehx

#endif
