#ifndef HODGEHX_MESH_IO_HPP
#define HODGEHX_MESH_IO_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hodgehx/mesh.hpp"

namespace hodgehx {

// Plain-text mesh format:
//   ambient_dim element_dim n_vertices n_elements
//   <n_vertices lines of ambient_dim coordinates>
//   <n_elements lines of element_dim+1 vertex ids>
// Coordinates are written with 17 significant digits so a write/read cycle
// reproduces the mesh bit for bit.
void write_mesh(const SurfaceMesh& mesh, std::ostream& out);
void write_mesh(const SurfaceMesh& mesh, const std::string& path);
SurfaceMesh read_mesh(std::istream& in);
SurfaceMesh read_mesh(const std::string& path);

// Legacy-VTK ASCII export of a triangle mesh, with optional per-element
// vector fields attached as CELL_DATA.
using CellVectorField = std::pair<std::string, std::vector<Vec>>;
void write_vtk(const SurfaceMesh& mesh, std::ostream& out,
               const std::vector<CellVectorField>& fields = {});
void write_vtk(const SurfaceMesh& mesh, const std::string& path,
               const std::vector<CellVectorField>& fields = {});

}  // namespace hodgehx

#endif
