#ifndef HODGEHX_GEOMETRY_HPP
#define HODGEHX_GEOMETRY_HPP

#include "hodgehx/vec.hpp"

namespace hodgehx {

enum class SurfaceKind {
  Torus2,   // torus of revolution about the z axis, embedded in R^3
  Sphere3,  // round 3-sphere centered at the origin, embedded in R^4
};

// Closed hypersurface given by a signed distance function. Distance, unit
// normal (gradient of the distance), and closest-point projection are all
// closed form; points within `medial_tol` of the medial axis are rejected
// because the closest point is not unique there.
class ImplicitSurface {
 public:
  static ImplicitSurface torus2(double major_radius = 2.0, double minor_radius = 0.5);
  static ImplicitSurface sphere3(double radius = 1.0);

  SurfaceKind kind() const { return kind_; }
  int ambient_dim() const { return kind_ == SurfaceKind::Torus2 ? 3 : 4; }
  int element_dim() const { return ambient_dim() - 1; }
  double major_radius() const { return major_; }
  double minor_radius() const { return minor_; }
  double radius() const { return minor_; }

  double distance(const Vec& x) const;
  Vec normal(const Vec& x) const;
  Vec project(const Vec& x) const;

  static constexpr double medial_tol = 1e-8;

 private:
  ImplicitSurface(SurfaceKind kind, double major, double minor)
      : kind_(kind), major_(major), minor_(minor) {}

  SurfaceKind kind_;
  double major_;
  double minor_;
};

}  // namespace hodgehx

#endif
