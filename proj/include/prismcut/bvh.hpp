#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "prismcut/errors.hpp"
#include "prismcut/mesh.hpp"

namespace prismcut {

// Moeller-Trumbore with inclusive edge conditions, so segments through shared
// edges register in both incident triangles. Hit accepted for t in
// [t_min, t_max] along a + t*(b-a).
inline bool segment_hits_triangle(const Vec3& a, const Vec3& b, const Vec3& v0, const Vec3& v1,
                                  const Vec3& v2, double t_min, double t_max) {
  Vec3 dir = b - a;
  Vec3 e1 = v1 - v0, e2 = v2 - v0;
  Vec3 p = cross(dir, e2);
  double det = dot(e1, p);
  if (det == 0) return false;  // parallel or degenerate
  double inv = 1.0 / det;
  Vec3 tv = a - v0;
  double u = dot(tv, p) * inv;
  if (u < 0 || u > 1) return false;
  Vec3 q = cross(tv, e1);
  double v = dot(dir, q) * inv;
  if (v < 0 || u + v > 1) return false;
  double t = dot(e2, q) * inv;
  return t >= t_min && t <= t_max;
}

// Bounding volume hierarchy over one mesh. Median split on the longest
// centroid axis, at most 8 triangles per leaf. Correctness contract: query
// results identical to testing every triangle.
class RayAccel {
 public:
  static constexpr int kLeafSize = 8;

  explicit RayAccel(const Mesh& mesh) : mesh_(&mesh) {
    if (mesh.empty()) fail(ErrorCode::EmptyMesh, "cannot build acceleration structure: empty mesh");
    std::size_t n = mesh.triangles.size();
    boxes_.resize(n);
    centroids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Aabb box;
      for (int c = 0; c < 3; ++c) box.expand(mesh.triangle_vertex(static_cast<int>(i), c));
      boxes_[i] = box;
      centroids_[i] = box.center();
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.reserve(2 * n);
    build(0, n);
    scene_bounds_ = nodes_[0].box;
    eps_hit_ = 1e-6 * scene_bounds_.diagonal();
    centroids_.clear();
    centroids_.shrink_to_fit();
  }

  const Mesh& mesh() const { return *mesh_; }
  const Aabb& scene_bounds() const { return scene_bounds_; }
  double epsilon_hit() const { return eps_hit_; }
  std::size_t leaf_count() const { return leaf_count_; }

  // True iff the open segment (a,b) intersects the mesh. Hits within eps of
  // either endpoint are ignored, so points lying exactly on the surface do
  // not occlude themselves.
  bool segment_occluded(const Vec3& a, const Vec3& b) const {
    return segment_occluded(a, b, eps_hit_);
  }

  bool segment_occluded(const Vec3& a, const Vec3& b, double eps) const {
    if (a == b) fail(ErrorCode::InvalidSegment, "segment endpoints coincide");
    double len = norm(b - a);
    double t0 = eps / len, t1 = 1.0 - eps / len;
    if (t0 > t1) return false;
    return hit_query(a, b, t0, t1);
  }

  // True iff the ray a + t*dir, t in [t_min, inf), hits the mesh.
  bool ray_hits(const Vec3& origin, const Vec3& dir, double t_min = 0.0) const {
    return hit_query(origin, origin + dir, t_min, std::numeric_limits<double>::infinity());
  }

 private:
  struct Node {
    Aabb box;
    int left = -1, right = -1;        // internal children
    int first = 0, count = 0;         // leaf triangle range in order_
    bool leaf() const { return count > 0; }
  };

  int build(std::size_t begin, std::size_t end) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Aabb box;
    for (std::size_t i = begin; i < end; ++i) box.expand(boxes_[order_[i]]);
    nodes_[id].box = box;

    std::size_t count = end - begin;
    if (count <= kLeafSize) {
      nodes_[id].first = static_cast<int>(begin);
      nodes_[id].count = static_cast<int>(count);
      ++leaf_count_;
      return id;
    }

    Aabb cbox;
    for (std::size_t i = begin; i < end; ++i) cbox.expand(centroids_[order_[i]]);
    Vec3 ext = cbox.extent();
    int axis = 0;
    if (ext.y > ext.x) axis = 1;
    if (ext.z > ext[axis]) axis = 2;

    std::size_t mid = begin + count / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::size_t lhs, std::size_t rhs) {
                       return centroids_[lhs][axis] < centroids_[rhs][axis];
                     });

    int l = build(begin, mid);
    int r = build(mid, end);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  static bool segment_intersects_box(const Vec3& a, const Vec3& dir, double t0, double t1,
                                     const Aabb& box) {
    for (int axis = 0; axis < 3; ++axis) {
      double o = a[axis], d = dir[axis];
      if (d == 0) {
        if (o < box.lo[axis] || o > box.hi[axis]) return false;
        continue;
      }
      double inv = 1.0 / d;
      double ta = (box.lo[axis] - o) * inv;
      double tb = (box.hi[axis] - o) * inv;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return false;
    }
    return true;
  }

  bool hit_query(const Vec3& a, const Vec3& b, double t0, double t1) const {
    Vec3 dir = b - a;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      if (!segment_intersects_box(a, dir, t0, t1, node.box)) continue;
      if (node.leaf()) {
        for (int i = 0; i < node.count; ++i) {
          std::size_t tri = order_[node.first + i];
          if (segment_hits_triangle(a, b, mesh_->triangle_vertex(static_cast<int>(tri), 0),
                                    mesh_->triangle_vertex(static_cast<int>(tri), 1),
                                    mesh_->triangle_vertex(static_cast<int>(tri), 2), t0, t1))
            return true;
        }
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
    return false;
  }

  const Mesh* mesh_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> order_;
  std::vector<Aabb> boxes_;
  std::vector<Vec3> centroids_;
  Aabb scene_bounds_;
  double eps_hit_ = 0;
  std::size_t leaf_count_ = 0;
};

inline RayAccel build_accel(const Mesh& mesh) { return RayAccel(mesh); }

}  // namespace prismcut
