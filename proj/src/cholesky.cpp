#include "hodgehx/cholesky.hpp"

#include <Eigen/Sparse>

#include "hodgehx/errors.hpp"

namespace hodgehx {

struct CholeskySolver::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  int n = 0;
};

CholeskySolver::CholeskySolver(const CsrMatrix& a) : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols())
    throw DimensionMismatchError("Cholesky needs a square matrix");
  impl_->n = a.rows();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nnz());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
      t.emplace_back(r, a.col_idx()[k], a.values()[k]);
  Eigen::SparseMatrix<double> m(a.rows(), a.cols());
  m.setFromTriplets(t.begin(), t.end());
  impl_->llt.compute(m);
  if (impl_->llt.info() != Eigen::Success)
    throw NotSpdError("Cholesky factorization failed: matrix is not SPD");
}

CholeskySolver::~CholeskySolver() = default;

int CholeskySolver::rows() const { return impl_->n; }
int CholeskySolver::cols() const { return impl_->n; }

void CholeskySolver::apply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != impl_->n)
    throw DimensionMismatchError("Cholesky solve: size mismatch");
  Eigen::Map<const Eigen::VectorXd> b(x.data(), impl_->n);
  Eigen::VectorXd sol = impl_->llt.solve(b);
  y.assign(sol.data(), sol.data() + impl_->n);
}

}  // namespace hodgehx
