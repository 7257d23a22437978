#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "prismcut/errors.hpp"
#include "prismcut/transform.hpp"

namespace prismcut {

namespace detail {

// Area-weighted mode of one normal distribution, treated as axes (n and -n
// are the same horizontal structure). Seeds on a spherical Fibonacci
// hemisphere, refined by mean shift with a shrinking cone. Returns (axis,
// fraction of total area inside the final 17-degree cone around it).
inline std::pair<Vec3, double> axis_cluster(const std::vector<Vec3>& axes,
                                            const std::vector<double>& areas, double total_area) {
  auto cone_mean = [&](const Vec3& axis, double cos_tol) -> std::pair<Vec3, double> {
    Vec3 sum{0, 0, 0};
    double covered = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      double d = dot(axes[i], axis);
      if (std::abs(d) < cos_tol) continue;
      sum = sum + axes[i] * (d < 0 ? -areas[i] : areas[i]);  // fold sign
      covered += areas[i];
    }
    if (covered == 0) return {axis, 0};
    return {normalized(sum), covered};
  };

  constexpr int kSeeds = 64;
  const double cones[] = {std::cos(25 * M_PI / 180), std::cos(17 * M_PI / 180)};
  Vec3 best_axis{0, 0, 1};
  double best_area = -1;
  const double golden = M_PI * (3 - std::sqrt(5.0));
  for (int s = 0; s < kSeeds; ++s) {
    double z = (s + 0.5) / kSeeds;  // hemisphere is enough: axes are sign-folded
    double r = std::sqrt(std::max(0.0, 1 - z * z));
    double phi = golden * s;
    Vec3 axis{r * std::cos(phi), r * std::sin(phi), z};
    double covered = 0;
    for (double cone : cones) {
      for (int it = 0; it < 20; ++it) {
        auto [next, cov] = cone_mean(axis, cone);
        covered = cov;
        if (cov == 0) break;
        double step = norm(next - axis);
        axis = next;
        if (step < 1e-9) break;
      }
    }
    if (covered > best_area) {
      best_area = covered;
      best_axis = axis;
    }
  }

  return {best_axis, best_area / total_area};
}

// Dominant axis over two normal fields: raw face normals (crisp on clean
// meshes) and vertex-normal-smoothed face directions (survive heavy jitter
// on finely tessellated meshes). The input whose winning cluster carries
// more area decides.
inline std::pair<Vec3, double> dominant_normal_axis(const Mesh& mesh) {
  std::vector<Vec3> raw, smoothed;
  std::vector<double> areas;
  double total_area = 0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    int tri = static_cast<int>(i);
    double a = mesh.triangle_area(tri);
    if (a <= 0) continue;
    raw.push_back(mesh.face_normal(tri));
    const auto& t = mesh.triangles[i];
    Vec3 s = mesh.normals[t[0]] + mesh.normals[t[1]] + mesh.normals[t[2]];
    smoothed.push_back(norm(s) > 0 ? normalized(s) : raw.back());
    areas.push_back(a);
    total_area += a;
  }
  if (raw.empty()) fail(ErrorCode::AlignmentFailed, "mesh has no non-degenerate faces");

  auto a = axis_cluster(raw, areas, total_area);
  auto b = axis_cluster(smoothed, areas, total_area);
  return b.second > a.second ? b : a;
}

inline double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  std::size_t idx = static_cast<std::size_t>(q * (values.size() - 1));
  return values[idx];
}

}  // namespace detail

struct AlignmentResult {
  Mesh mesh;
  CameraSet cameras;
  RigidTransform transform;
};

// Rotates the scene so the dominant horizontal-structure normal becomes +z
// and shifts it so the ground plane (1st percentile of vertex heights) sits
// at z = 0. Fails when the largest normal cluster covers < 5% of face area.
inline AlignmentResult align_to_reference(const Mesh& mesh, const CameraSet& cameras) {
  if (mesh.vertices.size() < 3) fail(ErrorCode::AlignmentFailed, "mesh has fewer than 3 vertices");

  auto [axis, fraction] = detail::dominant_normal_axis(mesh);
  if (fraction < 0.05)
    fail(ErrorCode::AlignmentFailed,
         "no dominant plane: largest normal cluster covers " +
             std::to_string(fraction * 100) + "% of face area");

  // The axis is sign-ambiguous; take the direction closer to current +z.
  if (dot(axis, Vec3{0, 0, 1}) < 0) axis = -axis;

  Mat3 rot = rotation_between(axis, Vec3{0, 0, 1});
  std::vector<double> heights;
  heights.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) heights.push_back((rot * v).z);
  double ground = detail::percentile(std::move(heights), 0.01);

  RigidTransform xf{rot, Vec3{0, 0, -ground}};
  return {transformed(mesh, xf), transformed(cameras, xf), xf};
}

}  // namespace prismcut
