#ifndef HODGEHX_CHOLESKY_HPP
#define HODGEHX_CHOLESKY_HPP

#include <memory>

#include "hodgehx/operators.hpp"

namespace hodgehx {

// Sparse Cholesky with fill-reducing (approximate minimum degree) ordering.
// apply() solves A x = b. Throws NotSpdError when a pivot fails.
class CholeskySolver final : public LinearOperator {
 public:
  explicit CholeskySolver(const CsrMatrix& a);
  ~CholeskySolver() override;

  int rows() const override;
  int cols() const override;
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hodgehx

#endif
