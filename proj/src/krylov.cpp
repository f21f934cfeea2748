#include "hodgehx/krylov.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hodgehx/errors.hpp"

namespace hodgehx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_square_pair(const LinearOperator& a, const LinearOperator& b,
                       const std::vector<double>& rhs) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatchError("solver needs square A and B of equal size");
  if (static_cast<int>(rhs.size()) != a.rows())
    throw DimensionMismatchError("right-hand side size mismatch");
}

}  // namespace

void write_history_csv(const SolveReport& report, std::ostream& out) {
  out << "iteration,criterion\n";
  char buf[48];
  for (std::size_t k = 0; k < report.residual_history.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12e\n", k, report.residual_history[k]);
    out << buf;
  }
}

PcgResult pcg(const LinearOperator& a, const LinearOperator& b,
              const std::vector<double>& rhs, double tol, int maxit) {
  check_square_pair(a, b, rhs);
  auto t0 = Clock::now();
  int n = a.rows();
  PcgResult res;
  res.x.assign(n, 0.0);
  double norm_b = norm2(rhs);
  if (norm_b == 0.0) {
    res.report.converged = true;
    res.report.residual_history = {0.0};
    res.report.wall_time = seconds_since(t0);
    return res;
  }
  std::vector<double> r = rhs;
  std::vector<double> z(n), q(n);
  b.apply(r, z);
  double rz = dot(r, z);
  double crit = norm2(z) / norm_b;
  res.report.residual_history.push_back(crit);
  if (crit <= tol) {
    res.report.converged = true;
    res.report.stop_criterion_value = crit;
    res.report.wall_time = seconds_since(t0);
    return res;
  }
  if (rz <= 0.0)
    throw BreakdownIndefiniteError("preconditioner is not positive definite");
  std::vector<double> p = z;
  for (int it = 1; it <= maxit; ++it) {
    a.apply(p, q);
    double pq = dot(p, q);
    if (pq <= 0.0)
      throw BreakdownIndefiniteError("operator curvature is not positive");
    double alpha = rz / pq;
    axpy(alpha, p, res.x);
    axpy(-alpha, q, r);
    b.apply(r, z);
    crit = norm2(z) / norm_b;
    res.report.residual_history.push_back(crit);
    res.report.iterations = it;
    if (crit <= tol) {
      res.report.converged = true;
      break;
    }
    double rz_new = dot(r, z);
    if (rz_new <= 0.0)
      throw BreakdownIndefiniteError("preconditioner is not positive definite");
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  res.report.stop_criterion_value = crit;
  res.report.wall_time = seconds_since(t0);
  return res;
}

// Lanczos vectors u_j are orthonormal in the B inner product; w_j = B u_j.
// The tridiagonal QR uses Givens reflections [[c, s], [s, -c]], under which
// the rotated residual direction satisfies t_k = s_k t_{k-1} - c_k e_{k+1}
// and B r_k = phibar_{k+1} * mu_k with mu_k = s_k mu_{k-1} - c_k w_{k+1}.
MinresResult minres_singular(const LinearOperator& a, const LinearOperator& b,
                             const std::vector<double>& rhs, double tol, int maxit) {
  check_square_pair(a, b, rhs);
  auto t0 = Clock::now();
  int n = a.rows();
  MinresResult res;
  res.x.assign(n, 0.0);
  res.kernel_vector.assign(n, 0.0);
  double norm_b = norm2(rhs);
  if (norm_b == 0.0) {
    res.report.converged = true;
    res.report.residual_history = {0.0};
    res.report.wall_time = seconds_since(t0);
    return res;
  }

  std::vector<double> w = b.apply(rhs);
  double beta = std::sqrt(dot(rhs, w));
  if (!(beta > 0.0))
    throw BreakdownIndefiniteError("preconditioner is not positive definite");
  std::vector<double> u = rhs, u_prev(n, 0.0);
  for (int i = 0; i < n; ++i) {
    u[i] /= beta;
    w[i] /= beta;
  }
  std::vector<double> mu = w;
  std::vector<double> d(n, 0.0), d_prev(n, 0.0), d_prev2(n, 0.0);
  std::vector<double> p(n), z(n), au(n);
  double phibar = beta;
  double c_prev = -1.0, s_prev = 0.0, c_prev2 = -1.0, s_prev2 = 0.0;
  double breakdown_scale = beta;

  a.apply(mu, au);
  double crit = norm2(au) / norm_b;
  res.report.residual_history.push_back(crit);
  if (crit <= tol) res.report.converged = true;

  for (int it = 1; it <= maxit && !res.report.converged; ++it) {
    a.apply(w, p);
    double alpha = dot(w, p);
    for (int i = 0; i < n; ++i) p[i] -= alpha * u[i] + beta * u_prev[i];
    b.apply(p, z);
    double beta_next = std::sqrt(std::max(0.0, dot(p, z)));
    breakdown_scale = std::max({breakdown_scale, std::abs(alpha), beta_next});

    double eps_j = s_prev2 * beta;
    double dbar = -c_prev2 * beta;
    double delta = c_prev * dbar + s_prev * alpha;
    double gbar = s_prev * dbar - c_prev * alpha;
    double gamma = std::hypot(gbar, beta_next);
    res.report.iterations = it;
    if (gamma == 0.0) {
      // A vanishes on the remaining Krylov space; x cannot improve.
      res.report.lanczos_breakdown = true;
      break;
    }
    double c = gbar / gamma;
    double s = beta_next / gamma;
    for (int i = 0; i < n; ++i)
      d[i] = (w[i] - delta * d_prev[i] - eps_j * d_prev2[i]) / gamma;
    axpy(c * phibar, d, res.x);
    phibar *= s;

    if (beta_next <= 1e-14 * breakdown_scale) {
      res.report.lanczos_breakdown = true;
      break;
    }
    for (int i = 0; i < n; ++i) {
      double un = p[i] / beta_next, wn = z[i] / beta_next;
      u_prev[i] = u[i];
      u[i] = un;
      w[i] = wn;
      mu[i] = s * mu[i] - c * wn;
    }
    a.apply(mu, au);
    crit = std::abs(phibar) * norm2(au) / norm_b;
    res.report.residual_history.push_back(crit);
    if (crit <= tol) res.report.converged = true;

    beta = beta_next;
    std::swap(d_prev2, d_prev);
    std::swap(d_prev, d);
    c_prev2 = c_prev;
    s_prev2 = s_prev;
    c_prev = c;
    s_prev = s;
  }

  // Recompute the kernel vector and criterion from the final iterate. The
  // in-loop recursion only decides when to stop; the directly evaluated
  // criterion is authoritative, so a run whose recursion drifted out of sync
  // with the true residual is reported honestly.
  a.apply(res.x, p);
  for (int i = 0; i < n; ++i) p[i] = rhs[i] - p[i];
  b.apply(p, res.kernel_vector);
  a.apply(res.kernel_vector, au);
  res.report.stop_criterion_value = norm2(au) / norm_b;
  res.report.converged = res.report.stop_criterion_value <= tol;
  if (res.report.lanczos_breakdown)
    res.report.residual_history.push_back(res.report.stop_criterion_value);
  res.report.wall_time = seconds_since(t0);
  return res;
}

ConditionEstimate estimate_condition(const LinearOperator& a, const LinearOperator& b,
                                     int n_steps, std::uint64_t seed) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatchError("condition estimate needs square A and B");
  int n = a.rows();
  int steps = std::min(n_steps, n);
  Rng rng(seed);
  std::vector<double> v = rng.uniform_vector(n);
  std::vector<double> w = b.apply(v);
  double beta = std::sqrt(dot(v, w));
  std::vector<std::vector<double>> us, ws;
  std::vector<double> alphas, betas;
  for (int i = 0; i < n; ++i) {
    v[i] /= beta;
    w[i] /= beta;
  }
  us.push_back(v);
  ws.push_back(w);
  std::vector<double> p(n), z(n);
  double last_beta = 0.0;
  for (int j = 0; j < steps; ++j) {
    a.apply(ws[j], p);
    double alpha = dot(ws[j], p);
    alphas.push_back(alpha);
    for (int i = 0; i < n; ++i)
      p[i] -= alpha * us[j][i] + (j ? betas[j - 1] * us[j - 1][i] : 0.0);
    b.apply(p, z);
    // Full reorthogonalization in the B inner product.
    for (std::size_t m = 0; m < us.size(); ++m) {
      double cm = dot(z, us[m]);
      axpy(-cm, us[m], p);
      axpy(-cm, ws[m], z);
    }
    double bn = std::sqrt(std::max(0.0, dot(p, z)));
    last_beta = bn;
    if (j + 1 == steps || bn <= 1e-12 * std::abs(alpha)) {
      if (bn <= 1e-12 * std::abs(alpha)) last_beta = 0.0;
      break;
    }
    betas.push_back(bn);
    for (int i = 0; i < n; ++i) {
      p[i] /= bn;
      z[i] /= bn;
    }
    us.push_back(p);
    ws.push_back(z);
  }
  int k = static_cast<int>(alphas.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    t(i, i) = alphas[i];
    if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = betas[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  ConditionEstimate est;
  est.lambda_min = es.eigenvalues()(0);
  est.lambda_max = es.eigenvalues()(k - 1);
  double res_min = last_beta * std::abs(es.eigenvectors()(k - 1, 0));
  double res_max = last_beta * std::abs(es.eigenvectors()(k - 1, k - 1));
  double scale = std::max(std::abs(est.lambda_min), std::abs(est.lambda_max));
  est.converged = scale > 0.0 && res_min <= 1e-4 * scale && res_max <= 1e-4 * scale;
  return est;
}

}  // namespace hodgehx
