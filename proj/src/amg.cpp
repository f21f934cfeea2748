#include "hodgehx/amg.hpp"

#include <algorithm>
#include <cmath>

#include "hodgehx/errors.hpp"
#include "hodgehx/rng.hpp"

namespace hodgehx {

namespace {

// Strong connections: |a_ij| > theta sqrt(a_ii a_jj), as adjacency lists.
std::vector<std::vector<int>> strength_graph(const CsrMatrix& a, double theta) {
  std::vector<double> d = a.diagonal();
  std::vector<std::vector<int>> s(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      int j = a.col_idx()[k];
      if (j == i) continue;
      double bound = theta * std::sqrt(std::abs(d[i] * d[j]));
      if (std::abs(a.values()[k]) > bound) s[i].push_back(j);
    }
  }
  return s;
}

// Greedy aggregation. Returns the aggregate id per node and the count.
int aggregate(const std::vector<std::vector<int>>& s, std::vector<int>& agg) {
  int n = static_cast<int>(s.size());
  agg.assign(n, -1);
  std::vector<bool> root_agg;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0) continue;
    bool free = std::all_of(s[i].begin(), s[i].end(),
                            [&](int j) { return agg[j] < 0; });
    if (!free) continue;
    agg[i] = count;
    for (int j : s[i]) agg[j] = count;
    root_agg.push_back(true);
    ++count;
  }
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0) continue;
    for (int j : s[i]) {
      if (agg[j] >= 0 && root_agg[agg[j]]) {
        agg[i] = agg[j];
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0) continue;
    agg[i] = count;
    root_agg.push_back(false);
    ++count;
    for (int j : s[i])
      if (agg[j] < 0) agg[j] = agg[i];
  }
  return count;
}

double spectral_radius_dinv_a(const CsrMatrix& a, const std::vector<double>& d,
                              std::uint64_t seed) {
  Rng rng(seed);
  int n = a.rows();
  std::vector<double> v = rng.uniform_vector(n), w(n);
  double rho = 1.0;
  for (int it = 0; it < 15; ++it) {
    a.multiply_vector(v.data(), w.data());
    for (int i = 0; i < n; ++i) w[i] /= d[i];
    double nw = norm2(w);
    if (nw == 0.0) return 1.0;
    rho = nw / norm2(v);
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return rho;
}

void gauss_seidel_forward(const CsrMatrix& a, const std::vector<double>& d,
                          const std::vector<double>& b, std::vector<double>& x) {
  for (int i = 0; i < a.rows(); ++i) {
    double s = b[i];
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
      s -= a.values()[k] * x[a.col_idx()[k]];
    x[i] += s / d[i];
  }
}

void gauss_seidel_backward(const CsrMatrix& a, const std::vector<double>& d,
                           const std::vector<double>& b, std::vector<double>& x) {
  for (int i = a.rows() - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
      s -= a.values()[k] * x[a.col_idx()[k]];
    x[i] += s / d[i];
  }
}

}  // namespace

AmgSolver::AmgSolver(const CsrMatrix& a, AmgOptions options)
    : n_(a.rows()), options_(options) {
  if (a.rows() != a.cols()) throw DimensionMismatchError("multigrid needs a square matrix");
  CsrMatrix current = a;
  while (current.rows() > options_.coarse_size &&
         static_cast<int>(levels_.size()) + 1 < options_.max_levels) {
    std::vector<double> d = current.diagonal();
    for (double v : d)
      if (v <= 0.0) throw ZeroDiagonalError("multigrid needs a positive diagonal");
    auto s = strength_graph(current, options_.strength_threshold);
    std::vector<int> agg;
    int n_agg = aggregate(s, agg);
    if (n_agg >= current.rows()) break;  // no coarsening possible

    // Tentative prolongation smoothed by one weighted Jacobi step:
    // P = (I - 4/(3 rho) D^{-1} A) P0.
    double rho = spectral_radius_dinv_a(current, d, options_.seed);
    double omega = 4.0 / (3.0 * rho);
    std::vector<Triplet> pt;
    pt.reserve(current.nnz());
    for (int i = 0; i < current.rows(); ++i) {
      for (int k = current.row_ptr()[i]; k < current.row_ptr()[i + 1]; ++k) {
        int j = current.col_idx()[k];
        double v = -omega * current.values()[k] / d[i];
        if (i == j) v += 1.0;
        if (v != 0.0) pt.push_back({i, agg[j], v});
      }
    }
    Level level;
    level.p = CsrMatrix::from_triplets(current.rows(), n_agg, std::move(pt));
    level.r = level.p.transpose();
    level.a = std::move(current);
    level.diag = std::move(d);
    current = level.r.multiply(level.a.multiply(level.p));
    levels_.push_back(std::move(level));
  }
  coarse_a_ = std::move(current);
  coarse_solver_ = std::make_unique<CholeskySolver>(coarse_a_);
}

double AmgSolver::operator_complexity() const {
  if (levels_.empty()) return 1.0;
  double total = static_cast<double>(coarse_a_.nnz());
  for (const Level& l : levels_) total += static_cast<double>(l.a.nnz());
  return total / static_cast<double>(levels_.front().a.nnz());
}

void AmgSolver::vcycle(int level, const std::vector<double>& b,
                       std::vector<double>& x) const {
  if (level == static_cast<int>(levels_.size())) {
    coarse_solver_->apply(b, x);
    return;
  }
  const Level& l = levels_[level];
  x.assign(l.a.rows(), 0.0);
  for (int s = 0; s < options_.pre_smooth; ++s) gauss_seidel_forward(l.a, l.diag, b, x);
  std::vector<double> r(l.a.rows());
  l.a.multiply_vector(x.data(), r.data());
  for (int i = 0; i < l.a.rows(); ++i) r[i] = b[i] - r[i];
  std::vector<double> rc = l.r.multiply_vector(r);
  std::vector<double> xc;
  vcycle(level + 1, rc, xc);
  std::vector<double> corr = l.p.multiply_vector(xc);
  axpy(1.0, corr, x);
  for (int s = 0; s < options_.post_smooth; ++s) gauss_seidel_backward(l.a, l.diag, b, x);
}

void AmgSolver::apply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionMismatchError("multigrid apply: size mismatch");
  vcycle(0, x, y);
  if (options_.n_cycles > 1) {
    const CsrMatrix& a = levels_.empty() ? coarse_a_ : levels_.front().a;
    std::vector<double> r(n_), dx(n_);
    for (int c = 1; c < options_.n_cycles; ++c) {
      a.multiply_vector(y.data(), r.data());
      for (int i = 0; i < n_; ++i) r[i] = x[i] - r[i];
      vcycle(0, r, dx);
      axpy(1.0, dx, y);
    }
  }
}

}  // namespace hodgehx
