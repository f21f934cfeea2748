#include "hodgehx/precond.hpp"

#include <cassert>

#include "hodgehx/errors.hpp"

namespace hodgehx {

namespace {

std::vector<double> inverted_diagonal(const CsrMatrix& a) {
  std::vector<double> d = a.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0)
      throw ZeroDiagonalError("nonpositive diagonal entry at row " + std::to_string(i));
    d[i] = 1.0 / d[i];
  }
  return d;
}

}  // namespace

HxPreconditioner::HxPreconditioner(const SurfaceMesh& mesh, const AssembledOperator& op,
                                   const InnerOptions& inner) {
  if (op.family != Family::N0 && op.family != Family::RT0)
    throw UnsupportedFamilyError("auxiliary-space preconditioner needs an edge or facet operator");
  family_ = op.family;
  c_ = op.c;
  n_ = op.matrix.rows();
  n_vertices_ = mesh.n_vertices();
  ambient_dim_ = mesh.ambient_dim;
  nested_curl_ = (family_ == Family::RT0 && mesh.element_dim == 3);

  inv_diag_ = inverted_diagonal(op.matrix);
  transfer_ = transfer_matrix(mesh, family_);
  transfer_t_ = transfer_.transpose();

  AssembledOperator scalar = assemble_p1(mesh, c_);
  scalar_solver_ = make_inner_solver(scalar.matrix, inner);

  if (nested_curl_) {
    dminus_ = incidence_dminus(mesh, Family::RT0);
    AssembledOperator edge_op = assemble_whitney(mesh, Family::N0, c_);
    edge_inv_diag_ = inverted_diagonal(edge_op.matrix);
    edge_transfer_ = transfer_matrix(mesh, Family::N0);
    edge_transfer_t_ = edge_transfer_.transpose();
  } else {
    dminus_ = incidence_dminus(mesh, family_);
  }
  dminus_t_ = dminus_.transpose();
}

void HxPreconditioner::scalar_block_solve(const std::vector<double>& rhs,
                                          std::vector<double>& sol) const {
  const int nv = n_vertices_;
  sol.assign(rhs.size(), 0.0);
  std::vector<double> comp(nv), out(nv);
  for (int l = 0; l < ambient_dim_; ++l) {
    std::copy(rhs.begin() + static_cast<std::ptrdiff_t>(l) * nv,
              rhs.begin() + static_cast<std::ptrdiff_t>(l + 1) * nv, comp.begin());
    scalar_solver_->apply(comp, out);
    std::copy(out.begin(), out.end(), sol.begin() + static_cast<std::ptrdiff_t>(l) * nv);
  }
}

void HxPreconditioner::apply_term(int term, const std::vector<double>& x,
                                  std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionMismatchError("preconditioner input size mismatch");
  y.assign(x.size(), 0.0);
  switch (term) {
    case 0: {
      for (int i = 0; i < n_; ++i) y[i] = inv_diag_[i] * x[i];
      return;
    }
    case 1: {
      std::vector<double> t = transfer_t_.multiply_vector(x);
      std::vector<double> s;
      scalar_block_solve(t, s);
      y = transfer_.multiply_vector(s);
      return;
    }
    case 2: {
      if (!nested_curl_) {
        std::vector<double> q = dminus_t_.multiply_vector(x);
        std::vector<double> s(q.size());
        scalar_solver_->apply(q, s);
        y = dminus_.multiply_vector(s);
        for (double& v : y) v /= c_;
        return;
      }
      std::vector<double> q = dminus_t_.multiply_vector(x);
      std::vector<double> w(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) w[i] = edge_inv_diag_[i] * q[i];
      std::vector<double> t = edge_transfer_t_.multiply_vector(q);
      std::vector<double> s;
      scalar_block_solve(t, s);
      std::vector<double> aux = edge_transfer_.multiply_vector(s);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += aux[i];
      y = dminus_.multiply_vector(w);
      for (double& v : y) v /= c_;
      return;
    }
    default:
      throw Error("unknown preconditioner term");
  }
}

void HxPreconditioner::apply(const std::vector<double>& x, std::vector<double>& y) const {
  std::vector<double> part;
  apply_term(0, x, y);
  apply_term(1, x, part);
  for (int i = 0; i < n_; ++i) y[i] += part[i];
  apply_term(2, x, part);
  for (int i = 0; i < n_; ++i) y[i] += part[i];
}

BlockHodgePreconditioner::BlockHodgePreconditioner(const SurfaceMesh& mesh, Family family,
                                                   const InnerOptions& inner) {
  n_scalar_ = mesh.n_vertices();
  AssembledOperator scalar = assemble_p1(mesh, 1.0);
  scalar_solver_ = make_inner_solver(scalar.matrix, inner);
  AssembledOperator field = assemble_whitney(mesh, family, 1.0);
  n_field_ = field.matrix.rows();
  field_precond_ = std::make_unique<HxPreconditioner>(mesh, field, inner);
}

void BlockHodgePreconditioner::apply(const std::vector<double>& x,
                                     std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_scalar_ + n_field_)
    throw DimensionMismatchError("saddle preconditioner input size mismatch");
  y.assign(x.size(), 0.0);
  std::vector<double> xs(x.begin(), x.begin() + n_scalar_);
  std::vector<double> ys(n_scalar_);
  scalar_solver_->apply(xs, ys);
  std::copy(ys.begin(), ys.end(), y.begin());
  std::vector<double> xf(x.begin() + n_scalar_, x.end());
  std::vector<double> yf(n_field_);
  field_precond_->apply(xf, yf);
  std::copy(yf.begin(), yf.end(), y.begin() + n_scalar_);
}

}  // namespace hodgehx
