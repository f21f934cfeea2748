#include <sstream>

#include "doctest.h"
#include "hodgehx/errors.hpp"
#include "hodgehx/mesh.hpp"
#include "hodgehx/mesh_io.hpp"

using namespace hodgehx;

TEST_SUITE("mesh") {
  TEST_CASE("torus initial mesh counts and topology") {
    const ImplicitSurface s = ImplicitSurface::torus2();
    const SurfaceMesh mesh = build_torus_initial(12, 8, s);
    CHECK(mesh.n_vertices() == 96);
    CHECK(mesh.n_edges() == 288);
    CHECK(mesh.n_elements() == 192);
    CHECK(mesh.euler_characteristic() == 0);
    CHECK(mesh.first_betti() == 2);
    CHECK(consistently_oriented(mesh));
    for (int v = 0; v < mesh.n_vertices(); ++v)
      CHECK(std::abs(s.distance(mesh.vertices[v])) < 1e-13);
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const Vec nh = mesh.element_normals[e];
      const Vec ns = s.normal(mesh.barycenter(e));
      CHECK(dot(nh, ns) > 0.5);  // vertex order gives the outward normal
    }
  }

  TEST_CASE("quad refinement scales counts and stays on the surface") {
    const ImplicitSurface s = ImplicitSurface::torus2();
    SurfaceMesh mesh = build_torus_initial(12, 8, s);
    const MeshQualityReport q0 = quality(mesh, s);
    mesh = refine_quad(mesh, s);
    CHECK(mesh.n_vertices() == 384);
    CHECK(mesh.n_edges() == 1152);
    CHECK(mesh.n_elements() == 768);
    CHECK(mesh.first_betti() == 2);
    CHECK(consistently_oriented(mesh));
    for (int v = 0; v < mesh.n_vertices(); ++v)
      CHECK(std::abs(s.distance(mesh.vertices[v])) < 1e-13);
    const MeshQualityReport q1 = quality(mesh, s);
    CHECK(q1.h_max < 0.62 * q0.h_max);
    CHECK(q1.h_max > 0.35 * q0.h_max);
    CHECK(q1.max_normal_deviation < 0.75 * q0.max_normal_deviation);
    CHECK(q1.quasi_uniformity < 2.0);
  }

  TEST_CASE("torus grid needs at least three cells around") {
    CHECK_THROWS_AS(build_torus_initial(2, 8), InvalidResolutionError);
    CHECK_THROWS_AS(build_torus_initial(12, 2), InvalidResolutionError);
  }

  TEST_CASE("sphere initial mesh is the sixteen cell complex") {
    const SurfaceMesh mesh = build_s3_initial();
    CHECK(mesh.n_vertices() == 8);
    CHECK(mesh.n_edges() == 24);
    CHECK(mesh.n_faces() == 32);
    CHECK(mesh.n_elements() == 16);
    CHECK(mesh.euler_characteristic() == 0);
    CHECK(mesh.first_betti() == 0);
    for (int v = 0; v < mesh.n_vertices(); ++v)
      CHECK(norm(mesh.vertices[v]) == doctest::Approx(1.0).epsilon(1e-15));
    const ImplicitSurface s = ImplicitSurface::sphere3();
    for (int e = 0; e < mesh.n_elements(); ++e)
      CHECK(dot(mesh.element_normals[e], s.normal(mesh.barycenter(e))) > 0.5);
  }

  TEST_CASE("red refinement of the sphere mesh") {
    const ImplicitSurface s = ImplicitSurface::sphere3();
    SurfaceMesh mesh = build_s3_initial();
    mesh = refine_red(mesh, s);
    CHECK(mesh.n_elements() == 128);
    CHECK(mesh.n_vertices() == 32);
    CHECK(mesh.n_edges() == 160);
    CHECK(mesh.n_faces() == 256);
    CHECK(mesh.euler_characteristic() == 0);
    for (int v = 0; v < mesh.n_vertices(); ++v)
      CHECK(norm(mesh.vertices[v]) == doctest::Approx(1.0).epsilon(1e-14));

    // shape regularity holds under repeated refinement
    double qu_prev = quality(mesh, s).quasi_uniformity;
    for (int level = 2; level <= 3; ++level) {
      mesh = refine_red(mesh, s);
      const MeshQualityReport q = quality(mesh, s);
      CHECK(q.quasi_uniformity < 3.0);
      CHECK(q.quasi_uniformity < 1.6 * qu_prev);
      qu_prev = q.quasi_uniformity;
    }
    CHECK(mesh.n_elements() == 8192);
  }

  TEST_CASE("facets pair exactly two elements") {
    SurfaceMesh open;
    open.ambient_dim = 3;
    open.element_dim = 2;
    open.vertices = {vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0)};
    open.elements = {0, 1, 2};
    CHECK_THROWS_AS(open.finalize(), Error);
  }

  TEST_CASE("mesh io round trip is exact") {
    const SurfaceMesh mesh = build_torus_initial(4, 3);
    std::stringstream buf;
    write_mesh(mesh, buf);
    const SurfaceMesh back = read_mesh(buf);
    REQUIRE(back.n_vertices() == mesh.n_vertices());
    REQUIRE(back.n_elements() == mesh.n_elements());
    for (int v = 0; v < mesh.n_vertices(); ++v)
      for (int i = 0; i < 3; ++i) CHECK(back.vertices[v][i] == mesh.vertices[v][i]);
    CHECK(back.elements == mesh.elements);
    CHECK(back.edges == mesh.edges);
  }

  TEST_CASE("mesh io rejects malformed input") {
    std::stringstream empty("");
    CHECK_THROWS_AS(read_mesh(empty), Error);
    std::stringstream bad_ids("3 2 3 1\n0 0 0\n1 0 0\n0 1 0\n0 1 7\n");
    CHECK_THROWS_AS(read_mesh(bad_ids), Error);
  }

  TEST_CASE("vtk export lists the cells") {
    const SurfaceMesh mesh = build_torus_initial(4, 3);
    std::stringstream buf;
    write_vtk(mesh, buf);
    const std::string text = buf.str();
    CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("CELLS 24 ") != std::string::npos);
    CHECK(text.find("POINTS 12 double") != std::string::npos);
  }

  TEST_CASE("conormals point away from the opposite vertex") {
    for (const SurfaceMesh& mesh : {build_torus_initial(4, 3), build_s3_initial()}) {
      for (int f = 0; f < mesh.n_facets(); ++f) {
        for (int side = 0; side < 2; ++side) {
          const int e = mesh.facet_elements[f][side];
          const Vec n = mesh.facet_conormal(f, e);
          CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-12));
          const Vec w = mesh.facet_barycenter(f) - mesh.barycenter(e);
          CHECK(dot(n, w) > 0.0);
          // tangent to the element
          CHECK(std::abs(dot(n, mesh.element_normals[e])) < 1e-12);
        }
      }
    }
  }
}
