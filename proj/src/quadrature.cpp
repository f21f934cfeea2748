#include "hodgehx/quadrature.hpp"

#include <cmath>

#include "hodgehx/errors.hpp"

namespace hodgehx {

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 + t);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

QuadratureRule make_triangle_midpoint() {
  QuadratureRule r;
  r.points = {{0.5, 0.5, 0.0, 0.0}, {0.5, 0.0, 0.5, 0.0}, {0.0, 0.5, 0.5, 0.0}};
  r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return r;
}

QuadratureRule make_triangle_deg5() {
  QuadratureRule r;
  const double a1 = 0.059715871789769820;
  const double b1 = 0.470142064105115090;
  const double w1 = (155.0 + std::sqrt(15.0)) / 1200.0;
  const double a2 = 0.797426985353087320;
  const double b2 = 0.101286507323456340;
  const double w2 = (155.0 - std::sqrt(15.0)) / 1200.0;
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});
  r.weights.push_back(9.0 / 40.0);
  const double g1[3] = {a1, b1, b1};
  const double g2[3] = {a2, b2, b2};
  for (int s = 0; s < 3; ++s) {
    r.points.push_back({g1[s % 3], g1[(s + 1) % 3], g1[(s + 2) % 3], 0.0});
    r.weights.push_back(w1);
    r.points.push_back({g2[s % 3], g2[(s + 1) % 3], g2[(s + 2) % 3], 0.0});
    r.weights.push_back(w2);
  }
  return r;
}

QuadratureRule make_tet_deg2() {
  QuadratureRule r;
  const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
  const double b = (5.0 - std::sqrt(5.0)) / 20.0;
  for (int s = 0; s < 4; ++s) {
    std::array<double, 4> p = {b, b, b, b};
    p[s] = a;
    r.points.push_back(p);
    r.weights.push_back(0.25);
  }
  return r;
}

// Duffy-type collapse of a Gauss product rule from the cube onto the
// tetrahedron: lam1 = u, lam2 = v(1-u), lam3 = w(1-u)(1-v),
// Jacobian (1-u)^2 (1-v). Exact for polynomial degree 2n-3 per axis.
QuadratureRule make_tet_collapsed(int n) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  QuadratureRule r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double u = gx[i], v = gx[j], w = gx[k];
        double l1 = u;
        double l2 = v * (1.0 - u);
        double l3 = w * (1.0 - u) * (1.0 - v);
        double l0 = 1.0 - l1 - l2 - l3;
        double jac = (1.0 - u) * (1.0 - u) * (1.0 - v);
        r.points.push_back({l0, l1, l2, l3});
        // Factor 6 rescales from the reference volume 1/6 to unit weight sum.
        r.weights.push_back(6.0 * gw[i] * gw[j] * gw[k] * jac);
      }
  // Normalize so weights sum to exactly 1.
  double s = 0.0;
  for (double wq : r.weights) s += wq;
  for (double& wq : r.weights) wq /= s;
  return r;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
  static const QuadratureRule deg2 = make_triangle_midpoint();
  static const QuadratureRule deg5 = make_triangle_deg5();
  if (degree <= 2) return deg2;
  if (degree <= 5) return deg5;
  throw UnsupportedFamilyError("no triangle rule beyond degree 5");
}

const QuadratureRule& tetrahedron_rule(int degree) {
  static const QuadratureRule deg2 = make_tet_deg2();
  static const QuadratureRule deg5 = make_tet_collapsed(4);
  if (degree <= 2) return deg2;
  if (degree <= 5) return deg5;
  throw UnsupportedFamilyError("no tetrahedron rule beyond degree 5");
}

const QuadratureRule& simplex_rule(int element_dim, int degree) {
  if (element_dim == 2) return triangle_rule(degree);
  if (element_dim == 3) return tetrahedron_rule(degree);
  throw DimensionMismatchError("quadrature only for element dimensions 2 and 3");
}

}  // namespace hodgehx
