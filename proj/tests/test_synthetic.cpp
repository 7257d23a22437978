#include <cmath>
#include <map>
#include <set>

#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "prismcut/bvh.hpp"
#include "prismcut/synthetic.hpp"

using namespace prismcut;

TEST_CASE("zero noise bundle has noisy identical to ground truth") {
  SyntheticSceneSpec spec;
  spec.storeys.push_back({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 5.0});
  spec.noise_sigma = 0;
  auto bundle = generate_synthetic(spec);
  REQUIRE(bundle.noisy.vertices.size() == bundle.ground_truth.vertices.size());
  REQUIRE(bundle.noisy.triangles.size() == bundle.ground_truth.triangles.size());
  for (std::size_t i = 0; i < bundle.noisy.vertices.size(); ++i)
    CHECK(bundle.noisy.vertices[i] == bundle.ground_truth.vertices[i]);
}

TEST_CASE("two storeys produce both wall loops") {
  auto bundle = generate_synthetic(fixtures::two_storey_spec(0.0));
  const Mesh& gt = bundle.ground_truth;

  auto has_vertex = [&](const Vec3& p) {
    for (const auto& v : gt.vertices)
      if (norm(v - p) < 1e-12) return true;
    return false;
  };
  // lower 10x10 loop corners
  CHECK(has_vertex({0, 0, 0}));
  CHECK(has_vertex({10, 10, 2.5}));
  // upper 6x6 loop corners
  CHECK(has_vertex({2, 2, 2.5}));
  CHECK(has_vertex({8, 8, 5}));

  // exactly two distinct wall loops in plan: vertical faces project onto
  // the 8 support lines of the two squares
  std::set<double> xs, ys;
  for (std::size_t t = 0; t < gt.triangles.size(); ++t) {
    Vec3 n = gt.face_normal(static_cast<int>(t));
    if (std::abs(n.z) > 1e-9) continue;  // wall faces only
    for (int c = 0; c < 3; ++c) {
      Vec3 v = gt.triangle_vertex(static_cast<int>(t), c);
      if (std::abs(std::abs(n.x) - 1) < 1e-9) xs.insert(v.x);
      if (std::abs(std::abs(n.y) - 1) < 1e-9) ys.insert(v.y);
    }
  }
  CHECK(xs == std::set<double>{0, 2, 8, 10});
  CHECK(ys == std::set<double>{0, 2, 8, 10});
}

TEST_CASE("sigma=0.05 mean per-axis displacement in [0.03, 0.07]") {
  SyntheticSceneSpec spec;
  spec.storeys.push_back({{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 5.0});
  spec.noise_sigma = 0.05;
  spec.seed = 9;
  auto bundle = generate_synthetic(spec);

  // rebuild the pre-jitter subdivided mesh to get correspondences
  Mesh reference = bundle.ground_truth;
  detail::subdivide_to_edge_length(reference, 2 * spec.noise_sigma);
  REQUIRE(reference.vertices.size() == bundle.noisy.vertices.size());

  double sum = 0;
  std::size_t n = reference.vertices.size();
  Vec3 mean_offset{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 d = bundle.noisy.vertices[i] - reference.vertices[i];
    sum += std::abs(d.x) + std::abs(d.y) + std::abs(d.z);
    mean_offset = mean_offset + d;
  }
  double mean_abs_axis = sum / (3.0 * static_cast<double>(n));
  CHECK(mean_abs_axis > 0.03);
  CHECK(mean_abs_axis < 0.07);

  // unbiasedness: mean offset within 3*sigma/sqrt(n) per axis
  double bound = 3 * spec.noise_sigma / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean_offset.x / static_cast<double>(n)) < bound);
  CHECK(std::abs(mean_offset.y / static_cast<double>(n)) < bound);
  CHECK(std::abs(mean_offset.z / static_cast<double>(n)) < bound);
}

TEST_CASE("subdivision respects the edge-length limit and is conforming") {
  auto bundle = generate_synthetic(fixtures::two_storey_spec(0.0));
  Mesh m = bundle.ground_truth;
  detail::subdivide_to_edge_length(m, 0.8);
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e)
      CHECK(norm(m.vertices[t[e]] - m.vertices[t[(e + 1) % 3]]) <= 0.8 + 1e-12);

  // conforming: every interior edge shared by exactly two triangles
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}]++;
    }
  for (const auto& [edge, count] : edge_count) CHECK(count == 2);  // closed surface

  // area preserved by refinement
  CHECK(m.surface_area() == Catch::Approx(bundle.ground_truth.surface_area()).epsilon(1e-9));
}

TEST_CASE("same spec and seed give byte-identical bundles") {
  auto a = generate_synthetic(fixtures::two_storey_spec(0.05, 3));
  auto b = generate_synthetic(fixtures::two_storey_spec(0.05, 3));
  REQUIRE(a.noisy.vertices.size() == b.noisy.vertices.size());
  for (std::size_t i = 0; i < a.noisy.vertices.size(); ++i)
    CHECK(a.noisy.vertices[i] == b.noisy.vertices[i]);

  auto c = generate_synthetic(fixtures::two_storey_spec(0.05, 4));
  bool identical = a.noisy.vertices.size() == c.noisy.vertices.size();
  if (identical)
    for (std::size_t i = 0; i < a.noisy.vertices.size(); ++i)
      identical &= (a.noisy.vertices[i] == c.noisy.vertices[i]);
  CHECK_FALSE(identical);
  // ground truth is untouched by the seed
  REQUIRE(a.ground_truth.vertices.size() == c.ground_truth.vertices.size());
  for (std::size_t i = 0; i < a.ground_truth.vertices.size(); ++i)
    CHECK(a.ground_truth.vertices[i] == c.ground_truth.vertices[i]);
}

TEST_CASE("every camera has an unoccluded line to at least one vertex") {
  auto bundle = generate_synthetic(fixtures::two_storey_spec(0.05, 21));
  RayAccel accel(bundle.noisy);
  for (const auto& cam : bundle.cameras.cameras) {
    bool seen = false;
    for (const auto& v : bundle.noisy.vertices) {
      if (!accel.segment_occluded(v, cam.center)) {
        seen = true;
        break;
      }
    }
    CHECK(seen);
  }
}

TEST_CASE("camera frusta intersect the mesh bounds") {
  auto bundle = generate_synthetic(fixtures::two_storey_spec(0.0));
  for (const auto& cam : bundle.cameras.cameras) {
    bool any_projects = false;
    for (const auto& v : bundle.ground_truth.vertices) {
      auto px = cam.project(v);
      if (px && px->x >= 0 && px->x < cam.width && px->y >= 0 && px->y < cam.height) {
        any_projects = true;
        break;
      }
    }
    CHECK(any_projects);
  }
}

TEST_CASE("self-intersecting footprint rejected") {
  SyntheticSceneSpec spec;
  spec.storeys.push_back({{{0, 0}, {10, 10}, {10, 0}, {0, 10}}, 5.0});  // bowtie
  try {
    generate_synthetic(spec);
    FAIL("expected BadFootprint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadFootprint);
  }
}
