#include "hodgehx/operators.hpp"

#include "hodgehx/errors.hpp"

namespace hodgehx {

DiagonalOperator jacobi_inverse(const CsrMatrix& a) {
  std::vector<double> d = a.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0)
      throw ZeroDiagonalError("Jacobi smoother needs a positive diagonal");
    d[i] = 1.0 / d[i];
  }
  return DiagonalOperator(std::move(d));
}

}  // namespace hodgehx
