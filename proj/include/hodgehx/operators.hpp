#ifndef HODGEHX_OPERATORS_HPP
#define HODGEHX_OPERATORS_HPP

#include <memory>
#include <vector>

#include "hodgehx/csr.hpp"

namespace hodgehx {

class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual void apply(const std::vector<double>& x, std::vector<double>& y) const = 0;

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(rows());
    apply(x, y);
    return y;
  }
};

class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(CsrMatrix a) : a_(std::make_shared<CsrMatrix>(std::move(a))) {}
  explicit CsrOperator(std::shared_ptr<const CsrMatrix> a) : a_(std::move(a)) {}

  int rows() const override { return a_->rows(); }
  int cols() const override { return a_->cols(); }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override {
    y.resize(a_->rows());
    a_->multiply_vector(x.data(), y.data());
  }
  const CsrMatrix& matrix() const { return *a_; }

 private:
  std::shared_ptr<const CsrMatrix> a_;
};

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(int n) : n_(n) {}
  int rows() const override { return n_; }
  int cols() const override { return n_; }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override {
    y = x;
  }

 private:
  int n_;
};

// Multiplication by a fixed diagonal.
class DiagonalOperator final : public LinearOperator {
 public:
  explicit DiagonalOperator(std::vector<double> d) : d_(std::move(d)) {}
  int rows() const override { return static_cast<int>(d_.size()); }
  int cols() const override { return static_cast<int>(d_.size()); }
  using LinearOperator::apply;
  void apply(const std::vector<double>& x, std::vector<double>& y) const override {
    y.resize(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) y[i] = d_[i] * x[i];
  }

 private:
  std::vector<double> d_;
};

// D^{-1} for the diagonal of A; the Jacobi smoother as an operator.
// Requires a strictly positive diagonal.
DiagonalOperator jacobi_inverse(const CsrMatrix& a);

}  // namespace hodgehx

#endif
