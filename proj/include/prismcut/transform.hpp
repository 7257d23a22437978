#pragma once

#include "prismcut/camera.hpp"
#include "prismcut/math.hpp"
#include "prismcut/mesh.hpp"

namespace prismcut {

// p' = R p + t with det(R) = +1.
struct RigidTransform {
  Mat3 rotation;
  Vec3 translation;

  static RigidTransform identity() { return {Mat3::identity(), Vec3{0, 0, 0}}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_direction(const Vec3& d) const { return rotation * d; }

  RigidTransform inverse() const {
    Mat3 rt = rotation.transposed();
    return {rt, -(rt * translation)};
  }

  // (this ∘ other): apply `other` first.
  RigidTransform compose(const RigidTransform& other) const {
    return {rotation * other.rotation, rotation * other.translation + translation};
  }
};

inline Mesh transformed(const Mesh& mesh, const RigidTransform& xf) {
  Mesh out = mesh;
  for (auto& v : out.vertices) v = xf.apply(v);
  for (auto& n : out.normals) n = xf.apply_direction(n);
  return out;
}

inline Camera transformed(const Camera& cam, const RigidTransform& xf) {
  Camera out = cam;
  out.center = xf.apply(cam.center);
  out.rotation = cam.rotation * xf.rotation.transposed();
  return out;
}

inline CameraSet transformed(const CameraSet& set, const RigidTransform& xf) {
  CameraSet out;
  out.cameras.reserve(set.cameras.size());
  for (const auto& c : set.cameras) out.cameras.push_back(transformed(c, xf));
  return out;
}

}  // namespace prismcut
