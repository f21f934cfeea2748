#include "hodgehx/inner_solver.hpp"

#include "hodgehx/cholesky.hpp"
#include "hodgehx/errors.hpp"
#include "hodgehx/krylov.hpp"

namespace hodgehx {

namespace {

class PcgAmgSolver final : public LinearOperator {
 public:
  PcgAmgSolver(const CsrMatrix& a, const InnerOptions& options)
      : op_(a), amg_(a, options.amg), tol_(options.pcg_tol), maxit_(options.pcg_maxit) {}

  int rows() const override { return op_.rows(); }
  int cols() const override { return op_.cols(); }
  void apply(const std::vector<double>& x, std::vector<double>& y) const override {
    y = pcg(op_, amg_, x, tol_, maxit_).x;
  }

 private:
  CsrOperator op_;
  AmgSolver amg_;
  double tol_;
  int maxit_;
};

}  // namespace

InnerOptions default_inner(int element_dim) {
  InnerOptions options;
  options.kind = element_dim == 2 ? InnerKind::DirectCholesky : InnerKind::AmgVcycle;
  // Two V-cycles keep the outer iteration counts nearly flat across levels;
  // a single cycle is noticeably weaker on the finer tet meshes.
  options.amg.n_cycles = 2;
  return options;
}

std::unique_ptr<LinearOperator> make_inner_solver(const CsrMatrix& a,
                                                  const InnerOptions& options) {
  switch (options.kind) {
    case InnerKind::DirectCholesky:
      return std::make_unique<CholeskySolver>(a);
    case InnerKind::AmgVcycle:
      return std::make_unique<AmgSolver>(a, options.amg);
    case InnerKind::PcgAmg:
      return std::make_unique<PcgAmgSolver>(a, options);
  }
  throw Error("unknown inner solver kind");
}

}  // namespace hodgehx
