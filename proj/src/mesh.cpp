#include "hodgehx/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hodgehx/errors.hpp"

namespace hodgehx {

namespace {

const std::array<int, 2> kTriEdges[3] = {{0, 1}, {0, 2}, {1, 2}};
const std::array<int, 2> kTetEdges[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// Flip elements whose vertex-order normal disagrees with the analytic
// outward normal at the barycenter.
void orient_outward(SurfaceMesh& mesh, const ImplicitSurface& surface) {
  int vpe = mesh.element_dim + 1;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    int* el = mesh.elements.data() + e * vpe;
    const Vec& z0 = mesh.vertices[el[0]];
    Vec nh;
    if (mesh.element_dim == 2)
      nh = cross3(mesh.vertices[el[1]] - z0, mesh.vertices[el[2]] - z0);
    else
      nh = cross4(mesh.vertices[el[1]] - z0, mesh.vertices[el[2]] - z0,
                  mesh.vertices[el[3]] - z0);
    Vec bary = {0, 0, 0, 0};
    for (int k = 0; k < vpe; ++k) bary += mesh.vertices[el[k]];
    bary = (1.0 / vpe) * bary;
    if (dot(nh, surface.normal(bary)) < 0.0) std::swap(el[vpe - 2], el[vpe - 1]);
  }
}

}  // namespace

const std::array<int, 2>* SurfaceMesh::local_edges(int element_dim) {
  return element_dim == 2 ? kTriEdges : kTetEdges;
}

std::array<int, 3> SurfaceMesh::local_face(int k) {
  std::array<int, 3> f;
  int m = 0;
  for (int i = 0; i < 4; ++i)
    if (i != k) f[m++] = i;
  return f;
}

Vec SurfaceMesh::barycenter(int e) const {
  int vpe = element_dim + 1;
  Vec b = {0, 0, 0, 0};
  for (int k = 0; k < vpe; ++k) b += vertices[element_vertex(e, k)];
  return (1.0 / vpe) * b;
}

double SurfaceMesh::element_diameter(int e) const {
  int vpe = element_dim + 1;
  double h = 0.0;
  for (int i = 0; i < vpe; ++i)
    for (int j = i + 1; j < vpe; ++j)
      h = std::max(h, norm(vertices[element_vertex(e, i)] - vertices[element_vertex(e, j)]));
  return h;
}

double SurfaceMesh::facet_measure(int f) const {
  if (element_dim == 2) {
    return norm(vertices[edges[f][1]] - vertices[edges[f][0]]);
  }
  Vec u = vertices[faces[f][1]] - vertices[faces[f][0]];
  Vec v = vertices[faces[f][2]] - vertices[faces[f][0]];
  double g = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
  return 0.5 * std::sqrt(std::max(0.0, g));
}

Vec SurfaceMesh::facet_barycenter(int f) const {
  if (element_dim == 2)
    return 0.5 * (vertices[edges[f][0]] + vertices[edges[f][1]]);
  return (1.0 / 3.0) *
         (vertices[faces[f][0]] + vertices[faces[f][1]] + vertices[faces[f][2]]);
}

Vec SurfaceMesh::facet_conormal(int f, int e) const {
  const Vec& nh = element_normals[e];
  Vec dir;
  int opposite = -1;
  if (element_dim == 2) {
    int a = edges[f][0], b = edges[f][1];
    for (int k = 0; k < 3; ++k) {
      int v = element_vertex(e, k);
      if (v != a && v != b) opposite = v;
    }
    Vec t = normalized(vertices[b] - vertices[a]);
    dir = cross3(t, nh);
  } else {
    int a = faces[f][0], b = faces[f][1], c = faces[f][2];
    for (int k = 0; k < 4; ++k) {
      int v = element_vertex(e, k);
      if (v != a && v != b && v != c) opposite = v;
    }
    dir = normalized(cross4(vertices[b] - vertices[a], vertices[c] - vertices[a], nh));
  }
  Vec w = facet_barycenter(f) - vertices[opposite];
  return dot(dir, w) >= 0.0 ? dir : -1.0 * dir;
}

void SurfaceMesh::finalize() {
  int ne = n_elements();
  int epe = edges_per_element();
  const std::array<int, 2>* le = local_edges(element_dim);

  // Edge table: all sorted pairs, lexicographic order.
  std::vector<std::array<int, 2>> pairs;
  pairs.reserve(static_cast<std::size_t>(ne) * epe);
  for (int e = 0; e < ne; ++e) {
    const int* el = element(e);
    for (int k = 0; k < epe; ++k) {
      int a = el[le[k][0]], b = el[le[k][1]];
      pairs.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  edges = pairs;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  element_edges.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto it = std::lower_bound(edges.begin(), edges.end(), pairs[i]);
    element_edges[i] = static_cast<int>(it - edges.begin());
  }

  if (element_dim == 3) {
    std::vector<std::array<int, 3>> triples;
    triples.reserve(static_cast<std::size_t>(ne) * 4);
    for (int e = 0; e < ne; ++e) {
      const int* el = element(e);
      for (int k = 0; k < 4; ++k) {
        auto lf = local_face(k);
        std::array<int, 3> t = {el[lf[0]], el[lf[1]], el[lf[2]]};
        std::sort(t.begin(), t.end());
        triples.push_back(t);
      }
    }
    faces = triples;
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    element_faces.resize(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
      auto it = std::lower_bound(faces.begin(), faces.end(), triples[i]);
      element_faces[i] = static_cast<int>(it - faces.begin());
    }
  } else {
    faces.clear();
    element_faces.clear();
  }

  // Plus/minus elements per facet; element loop order makes the smaller
  // element index land in slot 0.
  int nf = n_facets();
  facet_elements.assign(nf, {-1, -1});
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < facets_per_element(); ++k) {
      int f = element_facet(e, k);
      if (facet_elements[f][0] < 0)
        facet_elements[f][0] = e;
      else if (facet_elements[f][1] < 0)
        facet_elements[f][1] = e;
      else
        throw Error("mesh facet shared by more than two elements");
    }
  }
  for (int f = 0; f < nf; ++f)
    if (facet_elements[f][1] < 0)
      throw Error("mesh is not closed: facet with a single element");

  element_normals.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const int* el = element(e);
    const Vec& z0 = vertices[el[0]];
    Vec nh;
    if (element_dim == 2)
      nh = cross3(vertices[el[1]] - z0, vertices[el[2]] - z0);
    else
      nh = cross4(vertices[el[1]] - z0, vertices[el[2]] - z0, vertices[el[3]] - z0);
    double m = norm(nh);
    if (m == 0.0) throw DegenerateElementError("element with zero measure");
    element_normals[e] = (1.0 / m) * nh;
  }
}

int SurfaceMesh::euler_characteristic() const {
  if (element_dim == 2) return n_vertices() - n_edges() + n_elements();
  return n_vertices() - n_edges() + n_faces() - n_elements();
}

int SurfaceMesh::first_betti() const {
  if (element_dim == 2) return 2 - euler_characteristic();
  // The only tetrahedral surfaces built here triangulate the 3-sphere.
  return 0;
}

SurfaceMesh build_torus_initial(int n_major, int n_minor, const ImplicitSurface& surface) {
  if (n_major < 3 || n_minor < 3)
    throw InvalidResolutionError("torus grid needs at least 3 segments per direction");
  SurfaceMesh mesh;
  mesh.ambient_dim = 3;
  mesh.element_dim = 2;
  double R = surface.major_radius(), r = surface.minor_radius();
  mesh.vertices.reserve(static_cast<std::size_t>(n_major) * n_minor);
  for (int i = 0; i < n_major; ++i) {
    double th = 2.0 * M_PI * i / n_major;
    for (int j = 0; j < n_minor; ++j) {
      double ph = 2.0 * M_PI * j / n_minor;
      double rho = R + r * std::cos(ph);
      mesh.vertices.push_back(vec3(rho * std::cos(th), rho * std::sin(th), r * std::sin(ph)));
    }
  }
  auto vid = [&](int i, int j) { return (i % n_major) * n_minor + (j % n_minor); };
  for (int i = 0; i < n_major; ++i)
    for (int j = 0; j < n_minor; ++j) {
      int v00 = vid(i, j), v10 = vid(i + 1, j), v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      mesh.elements.insert(mesh.elements.end(), {v00, v10, v11});
      mesh.elements.insert(mesh.elements.end(), {v00, v11, v01});
    }
  orient_outward(mesh, surface);
  mesh.finalize();
  return mesh;
}

SurfaceMesh build_s3_initial() {
  SurfaceMesh mesh;
  mesh.ambient_dim = 4;
  mesh.element_dim = 3;
  mesh.vertices = {vec4(1, 0, 0, 0),  vec4(0, 1, 0, 0),  vec4(-1, 0, 0, 0),
                   vec4(0, -1, 0, 0), vec4(0, 0, 1, 0),  vec4(0, 0, -1, 0),
                   vec4(0, 0, 0, 1),  vec4(0, 0, 0, -1)};
  // One tet per octant: each choice of signs for the four coordinate axes.
  const int tets[16][4] = {{0, 1, 4, 6}, {2, 4, 1, 6}, {2, 3, 4, 6}, {0, 4, 3, 6},
                           {0, 5, 1, 6}, {2, 1, 5, 6}, {2, 5, 3, 6}, {0, 3, 5, 6},
                           {7, 0, 1, 4}, {7, 2, 4, 1}, {7, 2, 3, 4}, {7, 0, 4, 3},
                           {7, 0, 5, 1}, {7, 2, 1, 5}, {7, 2, 5, 3}, {7, 0, 3, 5}};
  for (auto& t : tets) mesh.elements.insert(mesh.elements.end(), {t[0], t[1], t[2], t[3]});
  orient_outward(mesh, ImplicitSurface::sphere3());
  mesh.finalize();
  return mesh;
}

SurfaceMesh refine_quad(const SurfaceMesh& mesh, const ImplicitSurface& surface) {
  if (mesh.element_dim != 2)
    throw DimensionMismatchError("quadrisection applies to triangle meshes");
  SurfaceMesh fine;
  fine.ambient_dim = mesh.ambient_dim;
  fine.element_dim = 2;
  fine.vertices = mesh.vertices;
  fine.vertices.reserve(mesh.n_vertices() + mesh.n_edges());
  for (int f = 0; f < mesh.n_edges(); ++f)
    fine.vertices.push_back(surface.project(mesh.facet_barycenter(f)));
  int nv = mesh.n_vertices();
  fine.elements.reserve(static_cast<std::size_t>(mesh.n_elements()) * 12);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const int* el = mesh.element(e);
    // Local edges (0,1), (0,2), (1,2) hold the opposite midpoints.
    int m01 = nv + mesh.element_edge(e, 0);
    int m02 = nv + mesh.element_edge(e, 1);
    int m12 = nv + mesh.element_edge(e, 2);
    fine.elements.insert(fine.elements.end(), {el[0], m01, m02});
    fine.elements.insert(fine.elements.end(), {m01, el[1], m12});
    fine.elements.insert(fine.elements.end(), {m02, m12, el[2]});
    fine.elements.insert(fine.elements.end(), {m01, m12, m02});
  }
  orient_outward(fine, surface);
  fine.finalize();
  return fine;
}

SurfaceMesh refine_red(const SurfaceMesh& mesh, const ImplicitSurface& surface) {
  if (mesh.element_dim != 3)
    throw DimensionMismatchError("red refinement applies to tetrahedral meshes");
  SurfaceMesh fine;
  fine.ambient_dim = mesh.ambient_dim;
  fine.element_dim = 3;
  fine.vertices = mesh.vertices;
  fine.vertices.reserve(mesh.n_vertices() + mesh.n_edges());
  for (int f = 0; f < mesh.n_edges(); ++f) {
    Vec mid = 0.5 * (mesh.vertices[mesh.edges[f][0]] + mesh.vertices[mesh.edges[f][1]]);
    fine.vertices.push_back(surface.project(mid));
  }
  int nv = mesh.n_vertices();
  fine.elements.reserve(static_cast<std::size_t>(mesh.n_elements()) * 32);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const int* el = mesh.element(e);
    // Midpoint ids in local edge order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
    int m[4][4];
    const std::array<int, 2>* le = SurfaceMesh::local_edges(3);
    for (int k = 0; k < 6; ++k) {
      int id = nv + mesh.element_edge(e, k);
      m[le[k][0]][le[k][1]] = id;
      m[le[k][1]][le[k][0]] = id;
    }
    for (int k = 0; k < 4; ++k) {
      int child[4];
      for (int i = 0; i < 4; ++i) child[i] = i == k ? el[k] : m[k][i];
      fine.elements.insert(fine.elements.end(), {child[0], child[1], child[2], child[3]});
    }
    // Interior octahedron: split along the shortest of its three diagonals,
    // ties resolved by the lowest midpoint vertex index.
    const int diag[3][2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    int best = -1;
    double best_len = 0.0;
    std::array<int, 2> best_ids = {0, 0};
    for (int d = 0; d < 3; ++d) {
      int p = m[diag[d][0][0]][diag[d][0][1]];
      int q = m[diag[d][1][0]][diag[d][1][1]];
      double len = norm(fine.vertices[p] - fine.vertices[q]);
      std::array<int, 2> ids = {std::min(p, q), std::max(p, q)};
      if (best < 0 || len < best_len || (len == best_len && ids < best_ids)) {
        best = d;
        best_len = len;
        best_ids = ids;
      }
    }
    int p = m[diag[best][0][0]][diag[best][0][1]];
    int q = m[diag[best][1][0]][diag[best][1][1]];
    // The four remaining midpoints form a cycle around the diagonal; two are
    // adjacent exactly when their defining edges share a parent vertex.
    std::array<std::array<int, 2>, 4> rest;
    int nrest = 0;
    for (int d = 0; d < 3; ++d) {
      if (d == best) continue;
      rest[nrest++] = {diag[d][0][0], diag[d][0][1]};
      rest[nrest++] = {diag[d][1][0], diag[d][1][1]};
    }
    auto shares = [](const std::array<int, 2>& a, const std::array<int, 2>& b) {
      return a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1];
    };
    std::array<int, 4> cyc = {0, -1, -1, -1};
    std::array<bool, 4> used = {true, false, false, false};
    for (int pos = 1; pos < 4; ++pos)
      for (int j = 1; j < 4; ++j)
        if (!used[j] && shares(rest[cyc[pos - 1]], rest[j])) {
          cyc[pos] = j;
          used[j] = true;
          break;
        }
    for (int pos = 0; pos < 4; ++pos) {
      auto& ra = rest[cyc[pos]];
      auto& rb = rest[cyc[(pos + 1) % 4]];
      fine.elements.insert(fine.elements.end(),
                           {p, q, m[ra[0]][ra[1]], m[rb[0]][rb[1]]});
    }
  }
  orient_outward(fine, surface);
  fine.finalize();
  return fine;
}

MeshQualityReport quality(const SurfaceMesh& mesh, const ImplicitSurface& surface) {
  MeshQualityReport rep;
  rep.h_min = 1e300;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    double h = mesh.element_diameter(e);
    rep.h_max = std::max(rep.h_max, h);
    rep.h_min = std::min(rep.h_min, h);
    Vec nu = surface.normal(mesh.barycenter(e));
    rep.max_normal_deviation =
        std::max(rep.max_normal_deviation, norm(nu - mesh.element_normals[e]));
  }
  rep.quasi_uniformity = rep.h_max / rep.h_min;
  for (int f = 0; f < mesh.n_facets(); ++f) {
    int ep = mesh.facet_elements[f][0], em = mesh.facet_elements[f][1];
    double jump = norm(mesh.facet_conormal(f, ep) + mesh.facet_conormal(f, em));
    double hf = mesh.element_dim == 2 ? mesh.facet_measure(f)
                                      : std::sqrt(mesh.facet_measure(f));
    rep.max_conormal_jump = std::max(rep.max_conormal_jump, jump / hf);
  }
  return rep;
}

bool consistently_oriented(const SurfaceMesh& mesh) {
  if (mesh.element_dim != 2) return true;
  std::vector<int> sum(mesh.n_edges(), 0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const int* el = mesh.element(e);
    for (int k = 0; k < 3; ++k) {
      int a = el[k], b = el[(k + 1) % 3];
      std::array<int, 2> key = {std::min(a, b), std::max(a, b)};
      auto it = std::lower_bound(mesh.edges.begin(), mesh.edges.end(), key);
      sum[it - mesh.edges.begin()] += a < b ? 1 : -1;
    }
  }
  return std::all_of(sum.begin(), sum.end(), [](int s) { return s == 0; });
}

}  // namespace hodgehx
