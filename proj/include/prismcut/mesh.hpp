#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "prismcut/errors.hpp"
#include "prismcut/math.hpp"

namespace prismcut {

// Indexed triangle mesh with per-vertex unit normals.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> normals;  // one per vertex, unit length

  bool empty() const { return triangles.empty(); }

  Vec3 triangle_vertex(int tri, int corner) const { return vertices[triangles[tri][corner]]; }

  double triangle_area(int tri) const {
    const auto& t = triangles[tri];
    return 0.5 * norm(cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]));
  }

  // Unit geometric normal of one face (zero vector for degenerate faces).
  Vec3 face_normal(int tri) const {
    const auto& t = triangles[tri];
    return normalized(cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]));
  }

  Aabb bounds() const {
    Aabb box;
    for (const auto& v : vertices) box.expand(v);
    return box;
  }

  double surface_area() const {
    double a = 0;
    for (std::size_t i = 0; i < triangles.size(); ++i) a += triangle_area(static_cast<int>(i));
    return a;
  }
};

// Area-weighted vertex normals from face geometry.
inline void compute_vertex_normals(Mesh& mesh) {
  mesh.normals.assign(mesh.vertices.size(), Vec3{0, 0, 0});
  for (const auto& t : mesh.triangles) {
    Vec3 n = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                   mesh.vertices[t[2]] - mesh.vertices[t[0]]);  // length = 2*area
    for (int c = 0; c < 3; ++c) mesh.normals[t[c]] = mesh.normals[t[c]] + n;
  }
  for (auto& n : mesh.normals) {
    Vec3 u = normalized(n);
    n = (norm(u) > 0) ? u : Vec3{0, 0, 1};
  }
}

// Removes zero-area faces; keeps vertex list untouched.
inline void drop_degenerate_triangles(Mesh& mesh) {
  std::vector<std::array<int, 3>> keep;
  keep.reserve(mesh.triangles.size());
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
    if (mesh.triangle_area(static_cast<int>(i)) > 0) keep.push_back(mesh.triangles[i]);
  mesh.triangles = std::move(keep);
}

inline void validate_mesh(const Mesh& mesh) {
  int n = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles)
    for (int c = 0; c < 3; ++c)
      if (t[c] < 0 || t[c] >= n) fail(ErrorCode::MalformedFile, "triangle index out of range");
  if (mesh.normals.size() != mesh.vertices.size())
    fail(ErrorCode::MalformedFile, "normal count does not match vertex count");
}

}  // namespace prismcut
