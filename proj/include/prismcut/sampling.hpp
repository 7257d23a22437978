#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "prismcut/errors.hpp"
#include "prismcut/mesh.hpp"

namespace prismcut {

struct PointSample {
  Vec3 position;
  int triangle = -1;  // source face
};

// Area-uniform surface sampling. Each face gets floor(density*area) samples
// plus one Bernoulli(frac) sample, so the expected count per face is exactly
// density*area and faces with area >= 1/density always get at least one.
// Deterministic for a fixed seed.
inline std::vector<PointSample> sample_surface(const Mesh& mesh, double samples_per_area,
                                               uint64_t seed = 1) {
  if (samples_per_area <= 0) fail(ErrorCode::BadConfig, "sample density must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<PointSample> out;
  out.reserve(static_cast<std::size_t>(samples_per_area * mesh.surface_area()) + 16);
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    int tri = static_cast<int>(i);
    double expected = samples_per_area * mesh.triangle_area(tri);
    auto count = static_cast<std::size_t>(expected);
    if (uni(rng) < expected - static_cast<double>(count)) ++count;
    Vec3 a = mesh.triangle_vertex(tri, 0);
    Vec3 b = mesh.triangle_vertex(tri, 1);
    Vec3 c = mesh.triangle_vertex(tri, 2);
    for (std::size_t k = 0; k < count; ++k) {
      double r1 = std::sqrt(uni(rng));
      double r2 = uni(rng);
      Vec3 p = a * (1 - r1) + b * (r1 * (1 - r2)) + c * (r1 * r2);
      out.push_back({p, tri});
    }
  }
  return out;
}

// Default pipeline density: 200 samples per patch of (1% of scene diagonal)^2.
inline double default_sample_density(double scene_diagonal) {
  double patch = 0.01 * scene_diagonal;
  return 200.0 / (patch * patch);
}

}  // namespace prismcut
