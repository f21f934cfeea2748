#ifndef HODGEHX_AMG_HPP
#define HODGEHX_AMG_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "hodgehx/cholesky.hpp"
#include "hodgehx/csr.hpp"
#include "hodgehx/operators.hpp"

namespace hodgehx {

struct AmgOptions {
  double strength_threshold = 0.08;  // |a_ij| > theta * sqrt(a_ii a_jj)
  int pre_smooth = 1;                // forward Gauss-Seidel sweeps
  int post_smooth = 1;               // backward Gauss-Seidel sweeps
  int n_cycles = 1;                  // V-cycles per apply
  int coarse_size = 200;             // direct solve at or below this size
  int max_levels = 25;
  std::uint64_t seed = 20240101;     // power-iteration start vector
};

// Smoothed-aggregation multigrid for SPD matrices. apply() runs a fixed
// number of V-cycles from a zero initial guess, which makes the map b -> x
// a fixed symmetric positive definite linear operator.
class AmgSolver final : public LinearOperator {
 public:
  explicit AmgSolver(const CsrMatrix& a, AmgOptions options = {});

  int rows() const override { return n_; }
  int cols() const override { return n_; }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;

  int n_levels() const { return static_cast<int>(levels_.size()) + 1; }
  // Fine-level operator complexity: sum of nnz over all levels / nnz(A).
  double operator_complexity() const;

 private:
  struct Level {
    CsrMatrix a;
    CsrMatrix p;
    CsrMatrix r;
    std::vector<double> diag;
  };

  void vcycle(int level, const std::vector<double>& b, std::vector<double>& x) const;

  int n_ = 0;
  AmgOptions options_;
  std::vector<Level> levels_;        // all but the coarsest
  CsrMatrix coarse_a_;
  std::unique_ptr<CholeskySolver> coarse_solver_;
};

}  // namespace hodgehx

#endif
