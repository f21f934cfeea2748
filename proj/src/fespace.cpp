#include "hodgehx/fespace.hpp"

#include <algorithm>
#include <cmath>

#include "hodgehx/errors.hpp"
#include "hodgehx/parallel.hpp"
#include "hodgehx/quadrature.hpp"

namespace hodgehx {

namespace {

double simplex_measure(const SurfaceMesh& mesh, int elem) {
  const int* el = mesh.element(elem);
  const Vec& z0 = mesh.vertices[el[0]];
  if (mesh.element_dim == 2)
    return 0.5 * norm(cross3(mesh.vertices[el[1]] - z0, mesh.vertices[el[2]] - z0));
  return norm(cross4(mesh.vertices[el[1]] - z0, mesh.vertices[el[2]] - z0,
                     mesh.vertices[el[3]] - z0)) /
         6.0;
}

// Outward unit conormal of local facet data, fixed by pointing away from
// the opposite vertex.
Vec outward_conormal_3d(const Vec& za, const Vec& zb, const Vec& zc, const Vec& zopp,
                        const Vec& normal) {
  Vec dir = normalized(cross4(zb - za, zc - za, normal));
  Vec w = (1.0 / 3.0) * (za + zb + zc) - zopp;
  return dot(dir, w) >= 0.0 ? dir : -1.0 * dir;
}

}  // namespace

ElementFrame element_frame(const SurfaceMesh& mesh, int elem) {
  ElementFrame frame;
  int d = mesh.element_dim;
  const int* el = mesh.element(elem);
  const Vec& z0 = mesh.vertices[el[0]];
  Vec e[3];
  for (int k = 0; k < d; ++k) e[k] = mesh.vertices[el[k + 1]] - z0;

  frame.measure = simplex_measure(mesh, elem);
  double h = mesh.element_diameter(elem);
  if (frame.measure < 1e-14 * std::pow(h, d))
    throw DegenerateElementError("element is degenerate");

  // grad lambda_k for k >= 1 are the columns of E (E^T E)^{-1}; the edge
  // matrix E has full rank by the measure check above.
  double g[3][3] = {};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g[i][j] = dot(e[i], e[j]);
  double inv[3][3];
  if (d == 2) {
    double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    inv[0][0] = g[1][1] / det;
    inv[1][1] = g[0][0] / det;
    inv[0][1] = -g[0][1] / det;
    inv[1][0] = -g[1][0] / det;
  } else {
    double det = det3(g[0][0], g[0][1], g[0][2], g[1][0], g[1][1], g[1][2], g[2][0],
                      g[2][1], g[2][2]);
    inv[0][0] = (g[1][1] * g[2][2] - g[1][2] * g[2][1]) / det;
    inv[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) / det;
    inv[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) / det;
    inv[1][0] = (g[1][2] * g[2][0] - g[1][0] * g[2][2]) / det;
    inv[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) / det;
    inv[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) / det;
    inv[2][0] = (g[1][0] * g[2][1] - g[1][1] * g[2][0]) / det;
    inv[2][1] = (g[0][1] * g[2][0] - g[0][0] * g[2][1]) / det;
    inv[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / det;
  }
  frame.grad[0] = {0, 0, 0, 0};
  for (int k = 1; k <= d; ++k) {
    Vec gk = {0, 0, 0, 0};
    for (int i = 0; i < d; ++i) gk += inv[i][k - 1] * e[i];
    frame.grad[k] = gk;
    frame.grad[0] -= gk;
  }
  if (d == 2) frame.grad[3] = {0, 0, 0, 0};
  frame.normal = mesh.element_normals[elem];
  return frame;
}

std::vector<Vec> element_gradients(const SurfaceMesh& mesh, int elem) {
  ElementFrame frame = element_frame(mesh, elem);
  std::vector<Vec> g(mesh.element_dim + 1);
  for (int k = 0; k <= mesh.element_dim; ++k) g[k] = frame.grad[k];
  return g;
}

FeSpace::FeSpace(const SurfaceMesh& mesh, Family family) : mesh_(&mesh), family_(family) {
  int ne = mesh.n_elements();
  int d = mesh.element_dim;
  if (family == Family::P1) {
    n_dofs_ = mesh.n_vertices();
    dofs_per_element_ = d + 1;
    dof_ids_.resize(static_cast<std::size_t>(ne) * dofs_per_element_);
    coeffs_.assign(dof_ids_.size(), 1.0);
    locals_.resize(dof_ids_.size());
    for (int e = 0; e < ne; ++e)
      for (int k = 0; k <= d; ++k) {
        dof_ids_[e * dofs_per_element_ + k] = mesh.element_vertex(e, k);
        locals_[e * dofs_per_element_ + k] = {k, -1, -1};
      }
    return;
  }
  if (family == Family::N0 || (family == Family::RT0 && d == 2)) {
    n_dofs_ = mesh.n_edges();
    dofs_per_element_ = mesh.edges_per_element();
  } else if (family == Family::RT0) {
    n_dofs_ = mesh.n_faces();
    dofs_per_element_ = 4;
  } else {
    throw UnsupportedFamilyError("unknown finite element family");
  }
  dof_ids_.resize(static_cast<std::size_t>(ne) * dofs_per_element_);
  coeffs_.assign(dof_ids_.size(), 1.0);
  locals_.resize(dof_ids_.size());

  const std::array<int, 2>* le = SurfaceMesh::local_edges(d);
  for (int e = 0; e < ne; ++e) {
    const int* el = mesh.element(e);
    if (family == Family::N0 || d == 2) {
      ElementFrame frame;
      if (family == Family::RT0) frame = element_frame(mesh, e);
      for (int k = 0; k < dofs_per_element_; ++k) {
        int i = le[k][0], j = le[k][1];
        if (el[i] > el[j]) std::swap(i, j);
        std::size_t slot = e * dofs_per_element_ + k;
        dof_ids_[slot] = mesh.element_edge(e, k);
        locals_[slot] = {i, j, -1};
        if (family == Family::RT0) {
          // Flux of the rotated edge function against the facet tangent is
          // exactly one; flip to unit outward flux, then to the plus side.
          int f = mesh.element_edge(e, k);
          const Vec& za = mesh.vertices[el[i]];
          const Vec& zb = mesh.vertices[el[j]];
          int opp = el[0] ^ el[1] ^ el[2] ^ el[i] ^ el[j];
          double s = dot(cross3(zb - za, frame.normal),
                         0.5 * (za + zb) - mesh.vertices[opp]) >= 0.0
                         ? 1.0
                         : -1.0;
          double delta = mesh.facet_elements[f][0] == e ? 1.0 : -1.0;
          coeffs_[slot] = delta * s;
        }
      }
    } else {
      // RT0 on a tet mesh: normalize the cyclic wedge function to unit
      // outward flux, then orient to the plus side of the face.
      ElementFrame frame = element_frame(mesh, e);
      for (int k = 0; k < 4; ++k) {
        auto lf = SurfaceMesh::local_face(k);
        std::array<int, 3> loc = {lf[0], lf[1], lf[2]};
        std::sort(loc.begin(), loc.end(),
                  [&](int a, int b) { return el[a] < el[b]; });
        int f = mesh.element_faces[4 * e + k];
        std::size_t slot = e * 4 + k;
        dof_ids_[slot] = f;
        locals_[slot] = loc;
        Vec wsum = cross4(frame.grad[loc[1]], frame.grad[loc[2]], frame.normal) +
                   cross4(frame.grad[loc[2]], frame.grad[loc[0]], frame.normal) +
                   cross4(frame.grad[loc[0]], frame.grad[loc[1]], frame.normal);
        Vec nu = outward_conormal_3d(mesh.vertices[el[loc[0]]], mesh.vertices[el[loc[1]]],
                                     mesh.vertices[el[loc[2]]], mesh.vertices[el[k]],
                                     frame.normal);
        double flux = mesh.facet_measure(f) / 3.0 * dot(wsum, nu);
        double delta = mesh.facet_elements[f][0] == e ? 1.0 : -1.0;
        coeffs_[slot] = delta / flux;
      }
    }
  }
}

Vec FeSpace::eval_basis(int elem, int l, const double* bary,
                        const ElementFrame& frame) const {
  double c = coeff(elem, l);
  const std::array<int, 3>& loc = local_vertices(elem, l);
  switch (family_) {
    case Family::N0:
      return c * (bary[loc[0]] * frame.grad[loc[1]] - bary[loc[1]] * frame.grad[loc[0]]);
    case Family::RT0:
      if (mesh_->element_dim == 2) {
        Vec ra = cross3(frame.grad[loc[0]], frame.normal);
        Vec rb = cross3(frame.grad[loc[1]], frame.normal);
        return c * (bary[loc[0]] * rb - bary[loc[1]] * ra);
      } else {
        Vec v = bary[loc[0]] * cross4(frame.grad[loc[1]], frame.grad[loc[2]], frame.normal);
        v += bary[loc[1]] * cross4(frame.grad[loc[2]], frame.grad[loc[0]], frame.normal);
        v += bary[loc[2]] * cross4(frame.grad[loc[0]], frame.grad[loc[1]], frame.normal);
        return c * v;
      }
    default:
      throw UnsupportedFamilyError("vector basis evaluation needs N0 or RT0");
  }
}

Vec FeSpace::eval_d(int elem, int l, const ElementFrame& frame) const {
  double c = coeff(elem, l);
  const std::array<int, 3>& loc = local_vertices(elem, l);
  switch (family_) {
    case Family::N0:
      if (mesh_->element_dim == 2) {
        double s = 2.0 * dot(cross3(frame.grad[loc[0]], frame.grad[loc[1]]), frame.normal);
        return {c * s, 0, 0, 0};
      }
      return (2.0 * c) * cross4(frame.grad[loc[0]], frame.grad[loc[1]], frame.normal);
    case Family::RT0:
      if (mesh_->element_dim == 2) {
        double s = 2.0 * dot(cross3(frame.grad[loc[0]], frame.grad[loc[1]]), frame.normal);
        return {c * s, 0, 0, 0};
      } else {
        double s = 3.0 * det4(frame.grad[loc[0]], frame.grad[loc[1]], frame.grad[loc[2]],
                              frame.normal);
        return {c * s, 0, 0, 0};
      }
    default:
      throw UnsupportedFamilyError("differential evaluation needs N0 or RT0");
  }
}

Vec eval_field(const FeSpace& space, const std::vector<double>& coeffs, int elem,
               const double* bary, const ElementFrame& frame) {
  Vec v = {0, 0, 0, 0};
  for (int l = 0; l < space.dofs_per_element(); ++l)
    v += coeffs[space.dof(elem, l)] * space.eval_basis(elem, l, bary, frame);
  return v;
}

namespace {

// Element loops write into preassigned triplet slots, so assembly is
// deterministic for any thread count.
CsrMatrix assemble_elementwise(
    const SurfaceMesh& mesh, int n_dofs, int dpe,
    const std::function<void(int, const ElementFrame&, Triplet*)>& element_kernel) {
  int ne = mesh.n_elements();
  std::vector<Triplet> triplets(static_cast<std::size_t>(ne) * dpe * dpe);
  parallel_for(ne, [&](int begin, int end) {
    for (int e = begin; e < end; ++e) {
      ElementFrame frame = element_frame(mesh, e);
      element_kernel(e, frame, triplets.data() + static_cast<std::size_t>(e) * dpe * dpe);
    }
  });
  return CsrMatrix::from_triplets(n_dofs, n_dofs, std::move(triplets));
}

enum class Part { Mass, Stiffness };

CsrMatrix p1_matrix(const SurfaceMesh& mesh, Part part) {
  int d = mesh.element_dim;
  int dpe = d + 1;
  // Exact integrals of barycentric products: lam_i lam_j integrates to
  // measure/12 (i != j) and measure/6 on a triangle, /20 and /10 on a tet.
  double off = d == 2 ? 1.0 / 12.0 : 1.0 / 20.0;
  double diag = 2.0 * off;
  return assemble_elementwise(
      mesh, mesh.n_vertices(), dpe, [&](int e, const ElementFrame& frame, Triplet* out) {
        const int* el = mesh.element(e);
        for (int i = 0; i < dpe; ++i)
          for (int j = 0; j < dpe; ++j) {
            double v = part == Part::Mass
                           ? frame.measure * (i == j ? diag : off)
                           : frame.measure * dot(frame.grad[i], frame.grad[j]);
            out[i * dpe + j] = {el[i], el[j], v};
          }
      });
}

CsrMatrix whitney_matrix(const SurfaceMesh& mesh, Family family, Part part) {
  if (family == Family::P1)
    throw UnsupportedFamilyError("use the P1 assembly for scalar operators");
  FeSpace space(mesh, family);
  const QuadratureRule& rule = simplex_rule(mesh.element_dim, 2);
  int dpe = space.dofs_per_element();
  return assemble_elementwise(
      mesh, space.n_dofs(), dpe, [&](int e, const ElementFrame& frame, Triplet* out) {
        double local[6][6] = {};
        if (part == Part::Mass) {
          for (int q = 0; q < rule.n_points(); ++q) {
            Vec phi[6];
            for (int l = 0; l < dpe; ++l)
              phi[l] = space.eval_basis(e, l, rule.points[q].data(), frame);
            double wq = rule.weights[q] * frame.measure;
            for (int i = 0; i < dpe; ++i)
              for (int j = 0; j < dpe; ++j) local[i][j] += wq * dot(phi[i], phi[j]);
          }
        } else {
          Vec dphi[6];
          for (int l = 0; l < dpe; ++l) dphi[l] = space.eval_d(e, l, frame);
          for (int i = 0; i < dpe; ++i)
            for (int j = 0; j < dpe; ++j)
              local[i][j] = frame.measure * dot(dphi[i], dphi[j]);
        }
        for (int i = 0; i < dpe; ++i)
          for (int j = 0; j < dpe; ++j)
            out[i * dpe + j] = {space.dof(e, i), space.dof(e, j), local[i][j]};
      });
}

}  // namespace

CsrMatrix p1_mass(const SurfaceMesh& mesh) { return p1_matrix(mesh, Part::Mass); }
CsrMatrix p1_stiffness(const SurfaceMesh& mesh) { return p1_matrix(mesh, Part::Stiffness); }

CsrMatrix whitney_mass(const SurfaceMesh& mesh, Family family) {
  return whitney_matrix(mesh, family, Part::Mass);
}

CsrMatrix whitney_stiffness(const SurfaceMesh& mesh, Family family) {
  return whitney_matrix(mesh, family, Part::Stiffness);
}

AssembledOperator assemble_p1(const SurfaceMesh& mesh, double c) {
  if (!(c > 0.0)) throw InvalidCError("reaction coefficient must be positive");
  return {add(p1_stiffness(mesh), p1_mass(mesh), 1.0, c), Family::P1, c};
}

AssembledOperator assemble_whitney(const SurfaceMesh& mesh, Family family, double c) {
  if (!(c > 0.0)) throw InvalidCError("reaction coefficient must be positive");
  return {add(whitney_stiffness(mesh, family), whitney_mass(mesh, family), 1.0, c),
          family, c};
}

CsrMatrix incidence_dminus(const SurfaceMesh& mesh, Family target) {
  std::vector<Triplet> t;
  if (target == Family::N0 || (target == Family::RT0 && mesh.element_dim == 2)) {
    t.reserve(static_cast<std::size_t>(mesh.n_edges()) * 2);
    for (int f = 0; f < mesh.n_edges(); ++f) {
      int a = mesh.edges[f][0], b = mesh.edges[f][1];
      double sign = 1.0;
      if (target == Family::RT0) {
        // Rotated gradient flux through the edge, measured on the plus side.
        int e = mesh.facet_elements[f][0];
        Vec conormal = mesh.facet_conormal(f, e);
        Vec rot = cross3(mesh.vertices[b] - mesh.vertices[a], mesh.element_normals[e]);
        sign = dot(rot, conormal) >= 0.0 ? 1.0 : -1.0;
      }
      t.push_back({f, a, -sign});
      t.push_back({f, b, sign});
    }
    return CsrMatrix::from_triplets(mesh.n_edges(), mesh.n_vertices(), std::move(t));
  }
  if (target == Family::RT0) {
    // Surface curl N0 -> RT0: circulation of each edge around the face
    // boundary, traversed positively about the plus-side conormal.
    t.reserve(static_cast<std::size_t>(mesh.n_faces()) * 3);
    for (int f = 0; f < mesh.n_faces(); ++f) {
      int a = mesh.faces[f][0], b = mesh.faces[f][1], c = mesh.faces[f][2];
      int e = mesh.facet_elements[f][0];
      Vec conormal = mesh.facet_conormal(f, e);
      double o = det4(conormal, mesh.vertices[b] - mesh.vertices[a],
                      mesh.vertices[c] - mesh.vertices[a], mesh.element_normals[e]) >= 0.0
                     ? 1.0
                     : -1.0;
      auto edge_id = [&](int u, int v) {
        std::array<int, 2> key = {std::min(u, v), std::max(u, v)};
        auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
        return static_cast<int>(it - mesh.edges.begin());
      };
      t.push_back({f, edge_id(a, b), o});
      t.push_back({f, edge_id(b, c), o});
      t.push_back({f, edge_id(a, c), -o});
    }
    return CsrMatrix::from_triplets(mesh.n_faces(), mesh.n_edges(), std::move(t));
  }
  throw IncompatibleFamiliesError("no differential maps into this family");
}

CsrMatrix transfer_matrix(const SurfaceMesh& mesh, Family family) {
  int nv = mesh.n_vertices();
  int adim = mesh.ambient_dim;
  std::vector<Triplet> t;
  if (family == Family::N0) {
    t.reserve(static_cast<std::size_t>(mesh.n_edges()) * 2 * adim);
    for (int f = 0; f < mesh.n_edges(); ++f) {
      int a = mesh.edges[f][0], b = mesh.edges[f][1];
      Vec half_t = 0.5 * (mesh.vertices[b] - mesh.vertices[a]);
      for (int l = 0; l < adim; ++l) {
        t.push_back({f, l * nv + a, half_t[l]});
        t.push_back({f, l * nv + b, half_t[l]});
      }
    }
    return CsrMatrix::from_triplets(mesh.n_edges(), adim * nv, std::move(t));
  }
  if (family != Family::RT0)
    throw UnsupportedFamilyError("transfer interpolates into N0 or RT0");
  int nf = mesh.n_facets();
  int per_facet = mesh.element_dim;  // vertices per facet
  t.reserve(static_cast<std::size_t>(nf) * per_facet * adim);
  for (int f = 0; f < nf; ++f) {
    int plus = mesh.facet_elements[f][0];
    Vec conormal = mesh.facet_conormal(f, plus);
    double scale = mesh.facet_measure(f) / per_facet;
    for (int k = 0; k < per_facet; ++k) {
      int v = mesh.element_dim == 2 ? mesh.edges[f][k] : mesh.faces[f][k];
      for (int l = 0; l < adim; ++l)
        t.push_back({f, l * nv + v, scale * conormal[l]});
    }
  }
  return CsrMatrix::from_triplets(nf, adim * nv, std::move(t));
}

std::vector<double> l2_project_rhs(const SurfaceMesh& mesh, Family family,
                                   const std::function<Vec(const Vec&)>& g) {
  FeSpace space(mesh, family);
  const QuadratureRule& rule = simplex_rule(mesh.element_dim, 2);
  std::vector<double> rhs(space.n_dofs(), 0.0);
  int dpe = space.dofs_per_element();
  int vpe = mesh.element_dim + 1;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    ElementFrame frame = element_frame(mesh, e);
    for (int q = 0; q < rule.n_points(); ++q) {
      Vec x = {0, 0, 0, 0};
      for (int k = 0; k < vpe; ++k)
        x += rule.points[q][k] * mesh.vertices[mesh.element_vertex(e, k)];
      Vec gx = g(x);
      double wq = rule.weights[q] * frame.measure;
      for (int l = 0; l < dpe; ++l)
        rhs[space.dof(e, l)] +=
            wq * dot(gx, space.eval_basis(e, l, rule.points[q].data(), frame));
    }
  }
  return rhs;
}

}  // namespace hodgehx
