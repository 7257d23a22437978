#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "prismcut/camera.hpp"
#include "prismcut/mesh.hpp"
#include "prismcut/synthetic.hpp"

namespace fixtures {

using prismcut::Camera;
using prismcut::CameraSet;
using prismcut::Mesh;
using prismcut::Vec2;
using prismcut::Vec3;

// Closed axis-aligned box, outward winding, 12 triangles.
inline Mesh box_mesh(const Vec3& lo, const Vec3& hi) {
  Mesh m;
  m.vertices = {{lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z},
                {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z}};
  m.triangles = {
      {0, 2, 1}, {0, 3, 2},  // bottom (-z)
      {4, 5, 6}, {4, 6, 7},  // top (+z)
      {0, 1, 5}, {0, 5, 4},  // -y
      {2, 3, 7}, {2, 7, 6},  // +y
      {1, 2, 6}, {1, 6, 5},  // +x
      {3, 0, 4}, {3, 4, 7},  // -x
  };
  prismcut::compute_vertex_normals(m);
  return m;
}

// Scene of many small boxes, ~12*count triangles.
inline Mesh box_field(int count, uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> size(0.2, 1.5);
  Mesh all;
  for (int i = 0; i < count; ++i) {
    Vec3 lo{pos(rng), pos(rng), pos(rng)};
    Vec3 ext{size(rng), size(rng), size(rng)};
    Mesh b = box_mesh(lo, lo + ext);
    int base = static_cast<int>(all.vertices.size());
    for (const auto& v : b.vertices) all.vertices.push_back(v);
    for (auto t : b.triangles) all.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
  prismcut::compute_vertex_normals(all);
  return all;
}

// Six cameras on the coordinate axes at the given distance from `target`.
inline CameraSet axis_cameras(const Vec3& target, double dist) {
  CameraSet set;
  const Vec3 dirs[] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  int i = 0;
  for (const auto& d : dirs) {
    Camera cam;
    cam.id = "axis_" + std::to_string(i++);
    cam.center = target + d * dist;
    cam.rotation = prismcut::look_at_rotation(cam.center, target);
    cam.focal = 100;
    cam.principal = {64, 64};
    cam.width = 128;
    cam.height = 128;
    set.cameras.push_back(cam);
  }
  return set;
}

inline Mesh uv_sphere(const Vec3& center, double radius, int stacks = 12, int slices = 24) {
  Mesh m;
  for (int i = 0; i <= stacks; ++i) {
    double theta = M_PI * i / stacks;
    for (int j = 0; j < slices; ++j) {
      double phi = 2 * M_PI * j / slices;
      m.vertices.push_back(center + Vec3{radius * std::sin(theta) * std::cos(phi),
                                         radius * std::sin(theta) * std::sin(phi),
                                         radius * std::cos(theta)});
    }
  }
  auto idx = [&](int i, int j) { return i * slices + (j % slices); };
  for (int i = 0; i < stacks; ++i)
    for (int j = 0; j < slices; ++j) {
      m.triangles.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
      m.triangles.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
    }
  prismcut::drop_degenerate_triangles(m);
  prismcut::compute_vertex_normals(m);
  return m;
}

// Two-storey fixture from the evaluation scenes: 10x10 base, 6x6 top, both
// 2.5 high, centered at (5,5).
inline prismcut::SyntheticSceneSpec two_storey_spec(double sigma, uint64_t seed = 42) {
  prismcut::SyntheticSceneSpec spec;
  spec.storeys.push_back({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 2.5});
  spec.storeys.push_back({{{2, 2}, {8, 2}, {8, 8}, {2, 8}}, 2.5});
  spec.noise_sigma = sigma;
  spec.seed = seed;
  return spec;
}

}  // namespace fixtures
