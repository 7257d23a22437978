#pragma once

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prismcut/errors.hpp"
#include "prismcut/mesh.hpp"

namespace prismcut {

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, std::size_t line,
                                    const std::string& msg) {
  fail(ErrorCode::MalformedFile, path + ":" + std::to_string(line) + ": " + msg);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline Mesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  Mesh mesh;
  std::vector<Vec3> file_normals;
  std::vector<int> vertex_normal;  // vn index per vertex, -1 if unset
  bool any_normals = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) parse_fail(path, lineno, "vertex needs 3 coordinates");
      try {
        mesh.vertices.push_back({std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3])});
      } catch (const std::exception&) {
        parse_fail(path, lineno, "bad vertex coordinate");
      }
      vertex_normal.push_back(-1);
    } else if (tok[0] == "vn") {
      if (tok.size() < 4) parse_fail(path, lineno, "normal needs 3 coordinates");
      try {
        file_normals.push_back({std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3])});
      } catch (const std::exception&) {
        parse_fail(path, lineno, "bad normal coordinate");
      }
    } else if (tok[0] == "f") {
      if (tok.size() < 4) parse_fail(path, lineno, "face needs at least 3 vertices");
      std::vector<int> corners;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        // forms: v, v/vt, v//vn, v/vt/vn
        const std::string& ref = tok[i];
        std::size_t s1 = ref.find('/');
        std::string vpart = ref.substr(0, s1);
        int vi = 0;
        try {
          vi = std::stoi(vpart);
        } catch (const std::exception&) {
          parse_fail(path, lineno, "bad face vertex reference '" + ref + "'");
        }
        int nverts = static_cast<int>(mesh.vertices.size());
        if (vi < 0) vi = nverts + vi; else vi -= 1;
        if (vi < 0 || vi >= nverts) parse_fail(path, lineno, "face vertex index out of range");
        corners.push_back(vi);
        if (s1 != std::string::npos) {
          std::size_t s2 = ref.find('/', s1 + 1);
          if (s2 != std::string::npos && s2 + 1 < ref.size()) {
            int ni = 0;
            try {
              ni = std::stoi(ref.substr(s2 + 1));
            } catch (const std::exception&) {
              parse_fail(path, lineno, "bad face normal reference '" + ref + "'");
            }
            int nn = static_cast<int>(file_normals.size());
            if (ni < 0) ni = nn + ni; else ni -= 1;
            if (ni < 0 || ni >= nn) parse_fail(path, lineno, "face normal index out of range");
            vertex_normal[vi] = ni;
            any_normals = true;
          }
        }
      }
      // fan triangulation of polygons
      for (std::size_t i = 1; i + 1 < corners.size(); ++i)
        mesh.triangles.push_back({corners[0], corners[i], corners[i + 1]});
    }
    // other directives (vt, o, g, s, usemtl, mtllib) are ignored
  }

  if (mesh.triangles.empty()) fail(ErrorCode::EmptyMesh, path + ": no faces");
  drop_degenerate_triangles(mesh);
  if (mesh.triangles.empty()) fail(ErrorCode::EmptyMesh, path + ": all faces degenerate");

  if (any_normals) {
    mesh.normals.resize(mesh.vertices.size());
    bool complete = true;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      if (vertex_normal[i] >= 0)
        mesh.normals[i] = normalized(file_normals[vertex_normal[i]]);
      else
        complete = false;
    }
    if (!complete) compute_vertex_normals(mesh);  // partial vn coverage: recompute all
  } else {
    compute_vertex_normals(mesh);
  }
  return mesh;
}

struct PlyProperty {
  std::string type;
  std::string name;
  bool is_list = false;
  std::string count_type;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> props;
};

inline double read_binary_scalar(std::istream& in, const std::string& type,
                                 const std::string& path) {
  auto take = [&](auto value) -> double {
    in.read(reinterpret_cast<char*>(&value), sizeof(value));
    if (!in)
      fail(ErrorCode::MalformedFile,
           path + ": truncated binary payload at offset " + std::to_string(in.tellg()));
    return static_cast<double>(value);
  };
  if (type == "float" || type == "float32") return take(float{});
  if (type == "double" || type == "float64") return take(double{});
  if (type == "char" || type == "int8") return take(int8_t{});
  if (type == "uchar" || type == "uint8") return take(uint8_t{});
  if (type == "short" || type == "int16") return take(int16_t{});
  if (type == "ushort" || type == "uint16") return take(uint16_t{});
  if (type == "int" || type == "int32") return take(int32_t{});
  if (type == "uint" || type == "uint32") return take(uint32_t{});
  fail(ErrorCode::MalformedFile, path + ": unsupported ply type " + type);
}

inline Mesh load_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);

  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) parse_fail(path, lineno, "unexpected end of header");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line();
  if (line != "ply") parse_fail(path, lineno, "missing ply magic");
  bool binary = false;
  std::vector<PlyElement> elements;
  while (true) {
    next_line();
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2) parse_fail(path, lineno, "bad format line");
      if (tok[1] == "ascii") binary = false;
      else if (tok[1] == "binary_little_endian") binary = true;
      else parse_fail(path, lineno, "unsupported ply format " + tok[1]);
    } else if (tok[0] == "element") {
      if (tok.size() < 3) parse_fail(path, lineno, "bad element line");
      PlyElement el;
      el.name = tok[1];
      el.count = std::stoull(tok[2]);
      elements.push_back(el);
    } else if (tok[0] == "property") {
      if (elements.empty() || tok.size() < 3) parse_fail(path, lineno, "property outside element");
      PlyProperty p;
      if (tok[1] == "list") {
        if (tok.size() < 5) parse_fail(path, lineno, "bad list property");
        p.is_list = true;
        p.count_type = tok[2];
        p.type = tok[3];
        p.name = tok[4];
      } else {
        p.type = tok[1];
        p.name = tok[2];
      }
      elements.back().props.push_back(p);
    } else if (tok[0] == "end_header") {
      break;
    } else {
      parse_fail(path, lineno, "unknown header directive " + tok[0]);
    }
  }

  Mesh mesh;
  bool has_normals = false;
  std::vector<std::string> ascii_tokens;
  std::size_t ascii_pos = 0;
  auto next_ascii = [&]() -> double {
    while (ascii_pos >= ascii_tokens.size()) {
      if (!std::getline(in, line)) parse_fail(path, lineno, "unexpected end of data");
      ++lineno;
      ascii_tokens = split_ws(line);
      ascii_pos = 0;
    }
    try {
      return std::stod(ascii_tokens[ascii_pos++]);
    } catch (const std::exception&) {
      parse_fail(path, lineno, "bad numeric value '" + ascii_tokens[ascii_pos - 1] + "'");
    }
  };
  auto next_value = [&](const std::string& type) -> double {
    return binary ? read_binary_scalar(in, type, path) : next_ascii();
  };

  for (const auto& el : elements) {
    if (el.name == "vertex") {
      for (const auto& p : el.props)
        if (p.name == "nx") has_normals = true;
      mesh.vertices.reserve(el.count);
      if (has_normals) mesh.normals.reserve(el.count);
      for (std::size_t i = 0; i < el.count; ++i) {
        Vec3 v, n;
        for (const auto& p : el.props) {
          double value = next_value(p.type);
          if (p.name == "x") v.x = value;
          else if (p.name == "y") v.y = value;
          else if (p.name == "z") v.z = value;
          else if (p.name == "nx") n.x = value;
          else if (p.name == "ny") n.y = value;
          else if (p.name == "nz") n.z = value;
        }
        mesh.vertices.push_back(v);
        if (has_normals) mesh.normals.push_back(normalized(n));
      }
    } else if (el.name == "face") {
      for (std::size_t i = 0; i < el.count; ++i) {
        for (const auto& p : el.props) {
          if (p.is_list && (p.name == "vertex_indices" || p.name == "vertex_index")) {
            int k = static_cast<int>(next_value(p.count_type));
            if (k < 3) parse_fail(path, lineno, "face with fewer than 3 vertices");
            std::vector<int> corners(k);
            for (int c = 0; c < k; ++c) {
              corners[c] = static_cast<int>(next_value(p.type));
              if (corners[c] < 0 || corners[c] >= static_cast<int>(mesh.vertices.size()))
                parse_fail(path, lineno, "face vertex index out of range");
            }
            for (int c = 1; c + 1 < k; ++c)
              mesh.triangles.push_back({corners[0], corners[c], corners[c + 1]});
          } else if (p.is_list) {
            int k = static_cast<int>(next_value(p.count_type));
            for (int c = 0; c < k; ++c) next_value(p.type);
          } else {
            next_value(p.type);
          }
        }
      }
    } else {
      // skip unknown elements
      for (std::size_t i = 0; i < el.count; ++i)
        for (const auto& p : el.props) {
          if (p.is_list) {
            int k = static_cast<int>(next_value(p.count_type));
            for (int c = 0; c < k; ++c) next_value(p.type);
          } else {
            next_value(p.type);
          }
        }
    }
  }

  if (mesh.triangles.empty()) fail(ErrorCode::EmptyMesh, path + ": no faces");
  drop_degenerate_triangles(mesh);
  if (mesh.triangles.empty()) fail(ErrorCode::EmptyMesh, path + ": all faces degenerate");
  if (!has_normals) compute_vertex_normals(mesh);
  return mesh;
}

}  // namespace detail

// OBJ or PLY by extension (.obj / .ply, case-insensitive). Normals are taken
// from the file when present, otherwise computed area-weighted from faces.
inline Mesh load_mesh(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  Mesh mesh;
  if (ext == "obj") mesh = detail::load_obj(path);
  else if (ext == "ply") mesh = detail::load_ply(path);
  else fail(ErrorCode::MalformedFile, path + ": unsupported mesh format ." + ext);
  validate_mesh(mesh);
  return mesh;
}

inline void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out.precision(12);
  for (const auto& v : mesh.vertices) out << "v " << v.x << " " << v.y << " " << v.z << "\n";
  for (const auto& n : mesh.normals) out << "vn " << n.x << " " << n.y << " " << n.z << "\n";
  for (const auto& t : mesh.triangles)
    out << "f " << t[0] + 1 << "//" << t[0] + 1 << " " << t[1] + 1 << "//" << t[1] + 1 << " "
        << t[2] + 1 << "//" << t[2] + 1 << "\n";
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace prismcut
