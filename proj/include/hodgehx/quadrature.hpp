#ifndef HODGEHX_QUADRATURE_HPP
#define HODGEHX_QUADRATURE_HPP

#include <array>
#include <vector>

namespace hodgehx {

// Barycentric quadrature rule on the reference d-simplex. Weights sum to 1
// and are applied as w * measure(element).
struct QuadratureRule {
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;
  int n_points() const { return static_cast<int>(points.size()); }
};

// degree <= 2: 3-point edge-midpoint rule; degree <= 5: classical 7-point rule.
const QuadratureRule& triangle_rule(int degree);

// degree <= 2: symmetric 4-point rule; degree <= 5: a collapsed-coordinate
// Gauss product rule (64 points).
const QuadratureRule& tetrahedron_rule(int degree);

const QuadratureRule& simplex_rule(int element_dim, int degree);

}  // namespace hodgehx

#endif
