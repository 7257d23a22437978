#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "prismcut/camera.hpp"
#include "prismcut/errors.hpp"
#include "prismcut/mesh.hpp"

namespace prismcut {

struct StoreySpec {
  std::vector<Vec2> footprint;  // simple polygon, scene units
  double height = 0;
};

struct SyntheticSceneSpec {
  std::vector<StoreySpec> storeys;
  double noise_sigma = 0.0;       // Gaussian vertex jitter, scene units
  uint64_t seed = 1;
  int cameras_per_ring = 12;
  double ring_radius_factor = 2.5;  // times footprint circumradius
  double focal = 180.0;
  int image_width = 256;
  int image_height = 256;
};

struct SceneBundle {
  Mesh ground_truth;
  Mesh noisy;
  CameraSet cameras;
  nlohmann::json provenance;
};

namespace detail {

inline double polygon_signed_area(const std::vector<Vec2>& poly) {
  double a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a += cross(p, q);
  }
  return 0.5 * a;
}

inline bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                        const Vec2& d) {
  auto side = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    double v = cross(q - p, r - p);
    return (v > 0) - (v < 0);
  };
  int s1 = side(a, b, c), s2 = side(a, b, d);
  int s3 = side(c, d, a), s4 = side(c, d, b);
  return s1 * s2 < 0 && s3 * s4 < 0;
}

inline bool polygon_is_simple(const std::vector<Vec2>& poly) {
  std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;  // zero-length edge
    for (std::size_t j = i + 1; j < n; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_properly_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

// O(n^2) ear clipping; input must be a simple CCW polygon.
inline std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly) {
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  auto inside_tri = [](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    double d1 = cross(b - a, p - a);
    double d2 = cross(c - b, p - b);
    double d3 = cross(a - c, p - c);
    return d1 >= 0 && d2 >= 0 && d3 >= 0;
  };
  int guard = 0;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      int ia = idx[(i + idx.size() - 1) % idx.size()];
      int ib = idx[i];
      int ic = idx[(i + 1) % idx.size()];
      const Vec2 &a = poly[ia], &b = poly[ib], &c = poly[ic];
      if (cross(b - a, c - a) <= 0) continue;  // reflex or collinear
      bool blocked = false;
      for (int other : idx) {
        if (other == ia || other == ib || other == ic) continue;
        if (inside_tri(a, b, c, poly[other])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped && ++guard > 2) fail(ErrorCode::BadFootprint, "ear clipping failed");
    if (!clipped) {  // numeric stall: drop an exactly-collinear vertex
      for (std::size_t i = 0; i < idx.size(); ++i) {
        int ia = idx[(i + idx.size() - 1) % idx.size()];
        int ib = idx[i];
        int ic = idx[(i + 1) % idx.size()];
        if (cross(poly[ib] - poly[ia], poly[ic] - poly[ia]) == 0) {
          idx.erase(idx.begin() + static_cast<long>(i));
          break;
        }
      }
    }
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

class MeshBuilder {
 public:
  int vertex(const Vec3& p) {
    auto key = std::array<double, 3>{p.x, p.y, p.z};
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    int id = static_cast<int>(mesh_.vertices.size());
    mesh_.vertices.push_back(p);
    map_.emplace(key, id);
    return id;
  }

  void triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    mesh_.triangles.push_back({vertex(a), vertex(b), vertex(c)});
  }

  Mesh take() {
    drop_degenerate_triangles(mesh_);
    compute_vertex_normals(mesh_);
    return std::move(mesh_);
  }

 private:
  Mesh mesh_;
  std::map<std::array<double, 3>, int> map_;
};

// Conforming refinement until every edge is <= limit. Per pass, every
// over-long edge is marked, each triangle additionally marks its longest
// edge if any of its edges is marked, and marked edges split at their
// midpoints with the matching 1/2/3-edge templates.
inline void subdivide_to_edge_length(Mesh& mesh, double limit) {
  using Edge = std::pair<int, int>;
  auto edge_key = [](int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; };
  for (int pass = 0; pass < 64; ++pass) {
    auto len2 = [&](int a, int b) {
      Vec3 d = mesh.vertices[a] - mesh.vertices[b];
      return dot(d, d);
    };
    std::map<Edge, int> marked;  // edge -> midpoint vertex id (assigned later)
    double lim2 = limit * limit;
    for (const auto& t : mesh.triangles)
      for (int e = 0; e < 3; ++e)
        if (len2(t[e], t[(e + 1) % 3]) > lim2) marked[edge_key(t[e], t[(e + 1) % 3])] = -1;
    if (marked.empty()) return;

    // Closure: a triangle with any marked edge must also mark its longest.
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& t : mesh.triangles) {
        bool any = false;
        int longest = 0;
        double best = -1;
        for (int e = 0; e < 3; ++e) {
          double l = len2(t[e], t[(e + 1) % 3]);
          if (l > best) {
            best = l;
            longest = e;
          }
          if (marked.count(edge_key(t[e], t[(e + 1) % 3]))) any = true;
        }
        if (any && !marked.count(edge_key(t[longest], t[(longest + 1) % 3]))) {
          marked[edge_key(t[longest], t[(longest + 1) % 3])] = -1;
          grew = true;
        }
      }
    }

    for (auto& [edge, mid] : marked) {
      mid = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[edge.first] + mesh.vertices[edge.second]) * 0.5);
    }

    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.triangles.size() * 2);
    for (const auto& t : mesh.triangles) {
      int mids[3];
      int n_marked = 0;
      for (int e = 0; e < 3; ++e) {
        auto it = marked.find(edge_key(t[e], t[(e + 1) % 3]));
        mids[e] = it == marked.end() ? -1 : it->second;
        if (mids[e] >= 0) ++n_marked;
      }
      if (n_marked == 0) {
        next.push_back(t);
        continue;
      }
      if (n_marked == 3) {
        next.push_back({t[0], mids[0], mids[2]});
        next.push_back({mids[0], t[1], mids[1]});
        next.push_back({mids[2], mids[1], t[2]});
        next.push_back({mids[0], mids[1], mids[2]});
        continue;
      }
      // Rotate so the (unique) longest marked edge is (t[0], t[1]).
      int longest = 0;
      double best = -1;
      for (int e = 0; e < 3; ++e) {
        if (mids[e] < 0) continue;
        double l = len2(t[e], t[(e + 1) % 3]);
        if (l > best) {
          best = l;
          longest = e;
        }
      }
      std::array<int, 3> v = {t[longest], t[(longest + 1) % 3], t[(longest + 2) % 3]};
      std::array<int, 3> m = {mids[longest], mids[(longest + 1) % 3], mids[(longest + 2) % 3]};
      if (n_marked == 1) {
        next.push_back({v[0], m[0], v[2]});
        next.push_back({m[0], v[1], v[2]});
      } else {  // longest plus one other
        if (m[1] >= 0) {
          next.push_back({v[0], m[0], v[2]});
          next.push_back({m[0], v[1], m[1]});
          next.push_back({m[0], m[1], v[2]});
        } else {  // m[2] on edge (v2, v0)
          next.push_back({m[0], v[1], v[2]});
          next.push_back({m[0], v[2], m[2]});
          next.push_back({v[0], m[0], m[2]});
        }
      }
    }
    mesh.triangles = std::move(next);
  }
  fail(ErrorCode::BadFootprint, "subdivision did not converge");
}

}  // namespace detail

inline void validate_spec(const SyntheticSceneSpec& spec) {
  if (spec.storeys.empty()) fail(ErrorCode::BadFootprint, "scene needs at least one storey");
  if (spec.noise_sigma < 0) fail(ErrorCode::BadFootprint, "noise sigma must be >= 0");
  for (const auto& s : spec.storeys) {
    if (s.height <= 0) fail(ErrorCode::BadFootprint, "storey heights must be positive");
    if (!detail::polygon_is_simple(s.footprint))
      fail(ErrorCode::BadFootprint, "footprint polygon is not simple");
  }
  if (spec.cameras_per_ring < 1) fail(ErrorCode::BadFootprint, "need at least one camera per ring");
}

// Stacked extruded storeys with camera rings. Ground truth is the clean
// extrusion; the noisy mesh is the same model subdivided to edge length
// <= 2*sigma and jittered per-vertex with N(0, sigma) per axis.
inline SceneBundle generate_synthetic(const SyntheticSceneSpec& spec) {
  validate_spec(spec);

  detail::MeshBuilder gt;
  double z = 0;
  for (const auto& storey : spec.storeys) {
    std::vector<Vec2> poly = storey.footprint;
    if (detail::polygon_signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
    double z0 = z, z1 = z + storey.height;
    auto caps = detail::ear_clip(poly);
    for (const auto& t : caps) {
      Vec3 a{poly[t[0]].x, poly[t[0]].y, z0};
      Vec3 b{poly[t[1]].x, poly[t[1]].y, z0};
      Vec3 c{poly[t[2]].x, poly[t[2]].y, z0};
      gt.triangle(a, c, b);  // bottom cap faces down
      a.z = b.z = c.z = z1;
      gt.triangle(a, b, c);  // top cap faces up
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2& p = poly[i];
      const Vec2& q = poly[(i + 1) % poly.size()];
      Vec3 p0{p.x, p.y, z0}, q0{q.x, q.y, z0}, q1{q.x, q.y, z1}, p1{p.x, p.y, z1};
      // CCW footprint: outward winding seen from outside
      gt.triangle(p0, q0, q1);
      gt.triangle(p0, q1, p1);
    }
    z = z1;
  }
  Mesh ground_truth = gt.take();

  Mesh noisy = ground_truth;
  if (spec.noise_sigma > 0) {
    detail::subdivide_to_edge_length(noisy, 2 * spec.noise_sigma);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> jitter(0.0, spec.noise_sigma);
    for (auto& v : noisy.vertices) {
      v.x += jitter(rng);
      v.y += jitter(rng);
      v.z += jitter(rng);
    }
    drop_degenerate_triangles(noisy);
    compute_vertex_normals(noisy);
  }

  // Camera rings: one per storey at mid-height, aimed at the footprint centroid.
  Aabb2 plan;
  for (const auto& s : spec.storeys)
    for (const auto& p : s.footprint) plan.expand(p);
  Vec2 centroid = (plan.lo + plan.hi) * 0.5;
  double circumradius = 0;
  for (const auto& s : spec.storeys)
    for (const auto& p : s.footprint) circumradius = std::max(circumradius, norm(p - centroid));
  double radius = spec.ring_radius_factor * circumradius;

  CameraSet cameras;
  z = 0;
  for (std::size_t s = 0; s < spec.storeys.size(); ++s) {
    double mid = z + 0.5 * spec.storeys[s].height;
    for (int k = 0; k < spec.cameras_per_ring; ++k) {
      double angle = 2 * M_PI * k / spec.cameras_per_ring;
      Camera cam;
      cam.id = "cam_" + std::to_string(s) + "_" + std::to_string(k);
      cam.center = {centroid.x + radius * std::cos(angle), centroid.y + radius * std::sin(angle),
                    mid};
      cam.rotation = look_at_rotation(cam.center, Vec3{centroid.x, centroid.y, mid});
      cam.focal = spec.focal;
      cam.principal = {spec.image_width / 2.0, spec.image_height / 2.0};
      cam.width = spec.image_width;
      cam.height = spec.image_height;
      cameras.cameras.push_back(std::move(cam));
    }
    z += spec.storeys[s].height;
  }

  SceneBundle bundle;
  bundle.ground_truth = std::move(ground_truth);
  bundle.noisy = std::move(noisy);
  bundle.cameras = std::move(cameras);
  bundle.provenance = {{"generator", "prismcut-synth"},
                       {"sigma", spec.noise_sigma},
                       {"seed", spec.seed},
                       {"storeys", spec.storeys.size()}};
  return bundle;
}

inline SyntheticSceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedFile, path + ": " + e.what());
  }
  SyntheticSceneSpec spec;
  try {
    for (const auto& js : doc.at("storeys")) {
      StoreySpec storey;
      storey.height = js.at("height");
      for (const auto& jp : js.at("footprint"))
        storey.footprint.push_back({jp.at(0), jp.at(1)});
      spec.storeys.push_back(std::move(storey));
    }
    spec.noise_sigma = doc.value("sigma", 0.0);
    spec.seed = doc.value("seed", uint64_t{1});
    spec.cameras_per_ring = doc.value("cameras_per_ring", 12);
    spec.ring_radius_factor = doc.value("ring_radius_factor", 2.5);
    spec.focal = doc.value("focal", 180.0);
    spec.image_width = doc.value("image_width", 256);
    spec.image_height = doc.value("image_height", 256);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedFile, path + ": " + e.what());
  }
  validate_spec(spec);
  return spec;
}

}  // namespace prismcut
