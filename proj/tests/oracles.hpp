#pragma once

// Independent reference implementations used to pin expected values.
// Everything here must stay decoupled from the library code paths it checks.

#include <cmath>
#include <limits>
#include <vector>

#include "prismcut/bvh.hpp"
#include "prismcut/mesh.hpp"

namespace oracles {

using prismcut::Mesh;
using prismcut::Vec3;

// All-triangle segment occlusion with the same endpoint tolerance semantics
// as the acceleration structure, but no spatial pruning.
inline bool brute_segment_occluded(const Mesh& mesh, const Vec3& a, const Vec3& b, double eps) {
  double len = prismcut::norm(b - a);
  double t0 = eps / len, t1 = 1.0 - eps / len;
  if (t0 > t1) return false;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    int tri = static_cast<int>(i);
    if (prismcut::segment_hits_triangle(a, b, mesh.triangle_vertex(tri, 0),
                                        mesh.triangle_vertex(tri, 1), mesh.triangle_vertex(tri, 2),
                                        t0, t1))
      return true;
  }
  return false;
}

inline bool brute_ray_hits(const Mesh& mesh, const Vec3& origin, const Vec3& dir,
                           double t_min = 0.0) {
  Vec3 b = origin + dir;
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    int tri = static_cast<int>(i);
    if (prismcut::segment_hits_triangle(origin, b, mesh.triangle_vertex(tri, 0),
                                        mesh.triangle_vertex(tri, 1), mesh.triangle_vertex(tri, 2),
                                        t_min, inf))
      return true;
  }
  return false;
}

}  // namespace oracles
