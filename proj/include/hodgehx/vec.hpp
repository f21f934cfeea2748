#ifndef HODGEHX_VEC_HPP
#define HODGEHX_VEC_HPP

#include <array>
#include <cmath>

namespace hodgehx {

// Ambient-space vector. Meshes live in R^3 or R^4; unused trailing
// components stay at zero, so dot products and norms can run full width
// regardless of the ambient dimension.
using Vec = std::array<double, 4>;

inline constexpr Vec vec3(double x, double y, double z) { return {x, y, z, 0.0}; }
inline constexpr Vec vec4(double x, double y, double z, double w) { return {x, y, z, w}; }

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec operator-(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec operator*(double s, const Vec& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

inline Vec operator*(const Vec& a, double s) { return s * a; }

inline Vec& operator+=(Vec& a, const Vec& b) {
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

inline Vec& operator-=(Vec& a, const Vec& b) {
  for (int i = 0; i < 4; ++i) a[i] -= b[i];
  return a;
}

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n, a[3] / n};
}

inline Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0], 0.0};
}

inline double det3(double a0, double a1, double a2,
                   double b0, double b1, double b2,
                   double c0, double c1, double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
         a2 * (b0 * c1 - b1 * c0);
}

// Determinant of the 4x4 matrix with rows a, b, c, d.
inline double det4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  double m0 = det3(b[1], b[2], b[3], c[1], c[2], c[3], d[1], d[2], d[3]);
  double m1 = det3(b[0], b[2], b[3], c[0], c[2], c[3], d[0], d[2], d[3]);
  double m2 = det3(b[0], b[1], b[3], c[0], c[1], c[3], d[0], d[1], d[3]);
  double m3 = det3(b[0], b[1], b[2], c[0], c[1], c[2], d[0], d[1], d[2]);
  return a[0] * m0 - a[1] * m1 + a[2] * m2 - a[3] * m3;
}

// Generalized cross product in R^4: the unique vector with
// dot(cross4(a,b,c), u) == det4(u, a, b, c) for every u.
inline Vec cross4(const Vec& a, const Vec& b, const Vec& c) {
  return {+det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]),
          -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]),
          +det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]),
          -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2])};
}

}  // namespace hodgehx

#endif
