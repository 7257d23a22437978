#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prismcut/math.hpp"

namespace prismcut {

// Pinhole camera. `rotation` maps world directions into camera coordinates;
// the camera looks along +z in its own frame.
struct Camera {
  std::string id;
  Vec3 center;
  Mat3 rotation;
  double focal = 1.0;       // pixels
  Vec2 principal{0, 0};     // pixels
  int width = 1, height = 1;

  Vec3 to_camera(const Vec3& p) const { return rotation * (p - center); }

  // Pixel coordinates of a world point, or nullopt when behind the camera.
  std::optional<Vec2> project(const Vec3& p) const {
    Vec3 q = to_camera(p);
    if (q.z <= 0) return std::nullopt;
    return Vec2{focal * q.x / q.z + principal.x, focal * q.y / q.z + principal.y};
  }

  // World-space direction of the ray through a pixel (not normalized).
  Vec3 pixel_ray(double px, double py) const {
    Vec3 d{(px - principal.x) / focal, (py - principal.y) / focal, 1.0};
    return rotation.transposed() * d;
  }
};

struct CameraSet {
  std::vector<Camera> cameras;

  std::size_t size() const { return cameras.size(); }
  bool empty() const { return cameras.empty(); }
};

// World-to-camera rotation for a camera at `center` looking toward `target`,
// with image y kept as close to -z (world up) as the view direction allows.
inline Mat3 look_at_rotation(const Vec3& center, const Vec3& target) {
  Vec3 fwd = normalized(target - center);
  Vec3 up{0, 0, 1};
  if (std::abs(dot(fwd, up)) > 0.999) up = {0, 1, 0};
  Vec3 right = normalized(cross(fwd, up));
  Vec3 down = cross(fwd, right);  // image y grows downward
  return Mat3::from_rows(right, down, fwd);
}

}  // namespace prismcut
