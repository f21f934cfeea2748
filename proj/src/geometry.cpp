#include "hodgehx/geometry.hpp"

#include <cmath>

#include "hodgehx/errors.hpp"

namespace hodgehx {

ImplicitSurface ImplicitSurface::torus2(double major_radius, double minor_radius) {
  if (!(major_radius > 0.0) || !(minor_radius > 0.0) || !(minor_radius < major_radius))
    throw InvalidResolutionError("torus radii must satisfy 0 < r < R");
  return ImplicitSurface(SurfaceKind::Torus2, major_radius, minor_radius);
}

ImplicitSurface ImplicitSurface::sphere3(double radius) {
  if (!(radius > 0.0)) throw InvalidResolutionError("sphere radius must be positive");
  return ImplicitSurface(SurfaceKind::Sphere3, 0.0, radius);
}

double ImplicitSurface::distance(const Vec& x) const {
  if (kind_ == SurfaceKind::Torus2) {
    double rho = std::hypot(x[0], x[1]);
    double s = std::hypot(rho - major_, x[2]);
    return s - minor_;
  }
  return norm(x) - minor_;
}

Vec ImplicitSurface::normal(const Vec& x) const {
  if (kind_ == SurfaceKind::Torus2) {
    double rho = std::hypot(x[0], x[1]);
    if (rho < medial_tol)
      throw MedialAxisError("point on the torus axis of revolution");
    double s = std::hypot(rho - major_, x[2]);
    if (s < medial_tol)
      throw MedialAxisError("point on the torus core circle");
    double t = (rho - major_) / (s * rho);
    return {t * x[0], t * x[1], x[2] / s, 0.0};
  }
  double r = norm(x);
  if (r < medial_tol) throw MedialAxisError("point at the sphere center");
  return {x[0] / r, x[1] / r, x[2] / r, x[3] / r};
}

Vec ImplicitSurface::project(const Vec& x) const {
  Vec nu = normal(x);  // also rejects medial-axis points
  double d = distance(x);
  return x - d * nu;
}

}  // namespace hodgehx
