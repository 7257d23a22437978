#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "prismcut/camera.hpp"
#include "prismcut/errors.hpp"

namespace prismcut {

namespace detail {

// Gram-Schmidt on rows, preserving determinant sign.
inline Mat3 orthonormalized(const Mat3& r) {
  Vec3 r0 = normalized(r.row(0));
  Vec3 r1 = r.row(1) - r0 * dot(r.row(1), r0);
  r1 = normalized(r1);
  Vec3 r2 = cross(r0, r1);
  if (dot(r2, r.row(2)) < 0) r2 = -r2;
  return Mat3::from_rows(r0, r1, r2);
}

}  // namespace detail

// JSON schema:
//   {"cameras":[{"id":str,"center":[x,y,z],"rotation":[9 floats row-major],
//                "focal":f,"pp":[cx,cy],"size":[w,h]}]}
inline CameraSet load_cameras(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedFile, path + ": " + e.what());
  }
  if (!doc.contains("cameras") || !doc["cameras"].is_array())
    fail(ErrorCode::MalformedFile, path + ": missing \"cameras\" array");

  CameraSet set;
  std::set<std::string> ids;
  for (const auto& jc : doc["cameras"]) {
    Camera cam;
    try {
      cam.id = jc.at("id").get<std::string>();
      auto c = jc.at("center");
      cam.center = {c.at(0), c.at(1), c.at(2)};
      auto r = jc.at("rotation");
      if (r.size() != 9) fail(ErrorCode::MalformedFile, path + ": rotation needs 9 entries");
      for (int i = 0; i < 9; ++i) cam.rotation.m[i] = r.at(i);
      cam.focal = jc.at("focal");
      auto pp = jc.at("pp");
      cam.principal = {pp.at(0), pp.at(1)};
      auto sz = jc.at("size");
      cam.width = sz.at(0);
      cam.height = sz.at(1);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedFile, path + ": camera entry: " + e.what());
    }

    if (!ids.insert(cam.id).second)
      fail(ErrorCode::DuplicateCamera, path + ": duplicate camera id '" + cam.id + "'");
    if (cam.focal <= 0) fail(ErrorCode::MalformedFile, path + ": focal must be positive");
    if (cam.width < 1 || cam.height < 1)
      fail(ErrorCode::MalformedFile, path + ": image size must be at least 1x1");

    double drift = cam.rotation.orthonormality_drift();
    if (drift > 1e-4)
      fail(ErrorCode::BadRotation,
           path + ": camera '" + cam.id + "' rotation drifts from orthonormal by " +
               std::to_string(drift));
    if (cam.rotation.determinant() < 0)
      fail(ErrorCode::BadRotation, path + ": camera '" + cam.id + "' rotation is a reflection");
    if (drift > 1e-9) cam.rotation = detail::orthonormalized(cam.rotation);

    set.cameras.push_back(std::move(cam));
  }
  return set;
}

inline void save_cameras(const CameraSet& set, const std::string& path) {
  nlohmann::json doc;
  doc["cameras"] = nlohmann::json::array();
  for (const auto& cam : set.cameras) {
    nlohmann::json jc;
    jc["id"] = cam.id;
    jc["center"] = {cam.center.x, cam.center.y, cam.center.z};
    jc["rotation"] = cam.rotation.m;
    jc["focal"] = cam.focal;
    jc["pp"] = {cam.principal.x, cam.principal.y};
    jc["size"] = {cam.width, cam.height};
    doc["cameras"].push_back(jc);
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << doc.dump(2) << "\n";
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace prismcut
