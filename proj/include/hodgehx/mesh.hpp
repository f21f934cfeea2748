#ifndef HODGEHX_MESH_HPP
#define HODGEHX_MESH_HPP

#include <array>
#include <vector>

#include "hodgehx/geometry.hpp"
#include "hodgehx/vec.hpp"

namespace hodgehx {

// Triangulated closed hypersurface: triangles in R^3 or tetrahedra in R^4.
// Vertex order of each element encodes its orientation; finalize() checks
// that every codimension-1 facet is shared by exactly two elements and
// derives edge / face / facet tables.
//
// Conventions baked into the tables:
//  * edges and faces store vertex ids sorted ascending,
//  * edge lists are sorted lexicographically, faces likewise,
//  * of the two elements at a facet, the one with the smaller element
//    index is the plus side (facet_elements[f][0]).
struct SurfaceMesh {
  int ambient_dim = 3;
  int element_dim = 2;
  std::vector<Vec> vertices;
  std::vector<int> elements;  // flattened, stride = element_dim + 1

  // Derived topology, filled by finalize().
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;             // tetrahedral meshes only
  std::vector<int> element_edges;                    // stride = edges_per_element()
  std::vector<int> element_faces;                    // stride = 4, tetrahedral only
  std::vector<std::array<int, 2>> facet_elements;    // {plus, minus} per facet
  std::vector<Vec> element_normals;                  // unit normal from vertex order

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const {
    return static_cast<int>(elements.size()) / (element_dim + 1);
  }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  // Codimension-1 facets: edges of a triangle mesh, faces of a tet mesh.
  int n_facets() const { return element_dim == 2 ? n_edges() : n_faces(); }

  int vertices_per_element() const { return element_dim + 1; }
  int edges_per_element() const { return element_dim == 2 ? 3 : 6; }
  int facets_per_element() const { return element_dim + 1; }

  const int* element(int e) const { return elements.data() + e * (element_dim + 1); }
  int element_vertex(int e, int k) const { return element(e)[k]; }
  int element_edge(int e, int k) const { return element_edges[e * edges_per_element() + k]; }
  int element_facet(int e, int k) const {
    return element_dim == 2 ? element_edge(e, k) : element_faces[4 * e + k];
  }

  Vec barycenter(int e) const;
  double element_diameter(int e) const;
  double facet_measure(int f) const;
  Vec facet_barycenter(int f) const;
  // Outward unit conormal of facet f within element e: tangent to e,
  // orthogonal to f, pointing away from the opposite vertex.
  Vec facet_conormal(int f, int e) const;

  // Local vertex pairs of the element edges, ordered lexicographically.
  static const std::array<int, 2>* local_edges(int element_dim);
  // Local vertex triple of tet face k (the face opposite local vertex k).
  static std::array<int, 3> local_face(int k);

  void finalize();

  int euler_characteristic() const;
  // First Betti number of a closed orientable surface, 2 - chi.
  int first_betti() const;
};

struct MeshQualityReport {
  double h_max = 0.0;
  double h_min = 0.0;
  double quasi_uniformity = 0.0;          // h_max / h_min
  double max_normal_deviation = 0.0;      // max |nu(a(bary)) - nu_h| over elements
  double max_conormal_jump = 0.0;         // max |nu_f^+ + nu_f^-| / h_f over facets
};

// Structured torus grid, n_major x n_minor quads split into two triangles
// each, vertices on the torus. Elements are oriented so the vertex-order
// normal points outward.
SurfaceMesh build_torus_initial(int n_major, int n_minor,
                                const ImplicitSurface& surface = ImplicitSurface::torus2());

// 16-cell triangulation of the unit 3-sphere on the vertices +-e_i.
SurfaceMesh build_s3_initial();

// Quadrisection of a triangle mesh; edge midpoints are projected to the surface.
SurfaceMesh refine_quad(const SurfaceMesh& mesh, const ImplicitSurface& surface);

// Red refinement of a tet mesh into 8 children. The interior octahedron is
// split along its shortest diagonal (ties by lowest vertex index).
SurfaceMesh refine_red(const SurfaceMesh& mesh, const ImplicitSurface& surface);

MeshQualityReport quality(const SurfaceMesh& mesh, const ImplicitSurface& surface);

// True if every interior facet is traversed in opposite directions by its
// two elements (triangle meshes).
bool consistently_oriented(const SurfaceMesh& mesh);

}  // namespace hodgehx

#endif
