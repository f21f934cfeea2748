#include "hodgehx/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hodgehx/errors.hpp"

namespace hodgehx {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_mesh(const SurfaceMesh& mesh, std::ostream& out) {
  out << mesh.ambient_dim << ' ' << mesh.element_dim << ' ' << mesh.n_vertices()
      << ' ' << mesh.n_elements() << '\n';
  for (const Vec& v : mesh.vertices) {
    for (int d = 0; d < mesh.ambient_dim; ++d) out << (d ? " " : "") << fmt17(v[d]);
    out << '\n';
  }
  int vpe = mesh.element_dim + 1;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int k = 0; k < vpe; ++k) out << (k ? " " : "") << mesh.element_vertex(e, k);
    out << '\n';
  }
}

void write_mesh(const SurfaceMesh& mesh, const std::string& path) {
  auto out = open_out(path);
  write_mesh(mesh, out);
}

SurfaceMesh read_mesh(std::istream& in) {
  SurfaceMesh mesh;
  int nv = 0, ne = 0;
  if (!(in >> mesh.ambient_dim >> mesh.element_dim >> nv >> ne))
    throw Error("mesh header: expected 4 integers");
  if ((mesh.ambient_dim != 3 || mesh.element_dim != 2) &&
      (mesh.ambient_dim != 4 || mesh.element_dim != 3))
    throw DimensionMismatchError("mesh must be 2-d in R^3 or 3-d in R^4");
  mesh.vertices.resize(nv, {0, 0, 0, 0});
  for (int i = 0; i < nv; ++i)
    for (int d = 0; d < mesh.ambient_dim; ++d)
      if (!(in >> mesh.vertices[i][d])) throw Error("mesh file: truncated vertex data");
  int vpe = mesh.element_dim + 1;
  mesh.elements.resize(static_cast<std::size_t>(ne) * vpe);
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    if (!(in >> mesh.elements[i])) throw Error("mesh file: truncated element data");
    if (mesh.elements[i] < 0 || mesh.elements[i] >= nv)
      throw Error("mesh file: vertex id out of range");
  }
  mesh.finalize();
  return mesh;
}

SurfaceMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  return read_mesh(in);
}

void write_vtk(const SurfaceMesh& mesh, std::ostream& out,
               const std::vector<CellVectorField>& fields) {
  if (mesh.element_dim != 2)
    throw DimensionMismatchError("VTK export supports triangle meshes");
  out << "# vtk DataFile Version 3.0\n";
  out << "surface mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Vec& v : mesh.vertices)
    out << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
  int ne = mesh.n_elements();
  out << "CELLS " << ne << ' ' << 4 * ne << '\n';
  for (int e = 0; e < ne; ++e)
    out << "3 " << mesh.element_vertex(e, 0) << ' ' << mesh.element_vertex(e, 1)
        << ' ' << mesh.element_vertex(e, 2) << '\n';
  out << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) out << "5\n";
  if (!fields.empty()) {
    out << "CELL_DATA " << ne << '\n';
    for (const auto& [name, values] : fields) {
      if (static_cast<int>(values.size()) != ne)
        throw DimensionMismatchError("cell field size mismatch: " + name);
      out << "VECTORS " << name << " double\n";
      for (const Vec& v : values)
        out << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
    }
  }
}

void write_vtk(const SurfaceMesh& mesh, const std::string& path,
               const std::vector<CellVectorField>& fields) {
  auto out = open_out(path);
  write_vtk(mesh, out, fields);
}

}  // namespace hodgehx
