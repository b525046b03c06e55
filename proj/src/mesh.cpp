#include "wopsip/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace wopsip {

MeshFamily parse_mesh_family(const std::string& name, double delta) {
  if (name == "uniform") return Uniform{};
  if (name == "shishkin") return Shishkin{delta};
  if (name == "cosine") return CosineGraded{};
  if (name == "quadratic") return QuadraticGraded{};
  throw std::invalid_argument("unknown mesh family: " + name);
}

std::string mesh_family_name(const MeshFamily& family) {
  struct Visitor {
    std::string operator()(const Uniform&) const { return "uniform"; }
    std::string operator()(const Shishkin&) const { return "shishkin"; }
    std::string operator()(const CosineGraded&) const { return "cosine"; }
    std::string operator()(const QuadraticGraded&) const { return "quadratic"; }
  };
  return std::visit(Visitor{}, family);
}

namespace {

std::vector<double> grid_x2(const MeshFamily& family, int n) {
  std::vector<double> x2(static_cast<std::size_t>(n) + 1);
  if (std::holds_alternative<Uniform>(family)) {
    for (int i = 0; i <= n; ++i) x2[i] = static_cast<double>(i) / n;
  } else if (const auto* s = std::get_if<Shishkin>(&family)) {
    if (n % 2 != 0) throw std::invalid_argument("Shishkin mesh requires even n");
    const double tau = 4.0 * s->delta * std::log(static_cast<double>(n));
    if (!(tau > 0.0 && tau < 1.0))
      throw std::invalid_argument("Shishkin transition tau = 4*delta*ln(n) must lie in (0,1)");
    for (int i = 0; i <= n / 2; ++i) x2[i] = tau * (2.0 / n) * i;
    for (int i = n / 2 + 1; i <= n; ++i) x2[i] = tau + (1.0 - tau) * (2.0 / n) * (i - n / 2);
  } else if (std::holds_alternative<CosineGraded>(family)) {
    for (int i = 0; i <= n; ++i) x2[i] = 0.5 * (1.0 - std::cos(i * M_PI / n));
  } else {
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      x2[i] = t * t;
    }
  }
  x2[0] = 0.0;
  x2[n] = 1.0;
  return x2;
}

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

Vec2 centroid(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  return (mesh.vertices[tri.vertexIds[0]] + mesh.vertices[tri.vertexIds[1]] +
          mesh.vertices[tri.vertexIds[2]]) / 3.0;
}

}  // namespace

Mesh generate_mesh(const MeshFamily& family, int n) {
  if (n < 2) throw std::invalid_argument("mesh requires n >= 2");

  Mesh mesh;
  mesh.n = n;
  const std::vector<double> x2 = grid_x2(family, n);

  mesh.vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.emplace_back(static_cast<double>(i) / n, x2[j]);

  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  // Two triangles per cell, split along the lower-left -> upper-right diagonal.
  mesh.triangles.reserve(static_cast<std::size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      Triangle lower;
      lower.vertexIds = {a, b, c};
      Triangle upper;
      upper.vertexIds = {a, c, d};
      mesh.triangles.push_back(lower);
      mesh.triangles.push_back(upper);
    }
  }

  for (auto& tri : mesh.triangles) {
    const Vec2& a = mesh.vertices[tri.vertexIds[0]];
    const Vec2& b = mesh.vertices[tri.vertexIds[1]];
    const Vec2& c = mesh.vertices[tri.vertexIds[2]];
    tri.area = triangle_area(a, b, c);
    if (tri.area <= 0.0) throw std::logic_error("negatively oriented triangle");
    tri.diameter = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    mesh.h = std::max(mesh.h, tri.diameter);
  }

  // Faces keyed by sorted vertex pair; ids assigned in first-encounter order
  // while sweeping triangles, which is deterministic.
  std::map<std::pair<int, int>, int> faceOf;
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int u = tri.vertexIds[(k + 1) % 3];
      const int v = tri.vertexIds[(k + 2) % 3];
      const std::pair<int, int> key{std::min(u, v), std::max(u, v)};
      auto [it, inserted] = faceOf.try_emplace(key, mesh.numFaces());
      if (inserted) {
        Face f;
        f.vertexIds = {key.first, key.second};
        f.triangle[0] = t;
        f.localFace[0] = k;
        mesh.faces.push_back(f);
      } else {
        Face& f = mesh.faces[it->second];
        if (f.triangle[1] >= 0) throw std::logic_error("face shared by more than two triangles");
        f.triangle[1] = t;
        f.localFace[1] = k;
        if (f.triangle[0] > f.triangle[1]) {
          std::swap(f.triangle[0], f.triangle[1]);
          std::swap(f.localFace[0], f.localFace[1]);
        }
      }
      tri.faceIds[k] = it->second;
    }
  }

  for (int fid = 0; fid < mesh.numFaces(); ++fid) {
    Face& f = mesh.faces[fid];
    const Vec2& a = mesh.vertices[f.vertexIds[0]];
    const Vec2& b = mesh.vertices[f.vertexIds[1]];
    const Vec2 tangent = b - a;
    f.length = tangent.norm();
    f.midpoint = 0.5 * (a + b);
    f.normal = Vec2(tangent.y(), -tangent.x()) / f.length;
    for (int s = 0; s < 2; ++s) {
      if (f.triangle[s] < 0) break;
      f.ell[s] = 2.0 * mesh.triangles[f.triangle[s]].area / f.length;
    }
    if (f.interior()) {
      const Vec2 across = centroid(mesh, f.triangle[1]) - centroid(mesh, f.triangle[0]);
      if (f.normal.dot(across) < 0.0) f.normal = -f.normal;
      mesh.interiorFaceIds.push_back(fid);
    } else {
      const Vec2 outward = f.midpoint - centroid(mesh, f.triangle[0]);
      if (f.normal.dot(outward) < 0.0) f.normal = -f.normal;
      mesh.boundaryFaceIds.push_back(fid);
    }
  }

  return mesh;
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  q.h = mesh.h;
  for (const auto& tri : mesh.triangles) {
    const Vec2& a = mesh.vertices[tri.vertexIds[0]];
    const Vec2& b = mesh.vertices[tri.vertexIds[1]];
    const Vec2& c = mesh.vertices[tri.vertexIds[2]];
    std::array<double, 3> len{(b - a).norm(), (c - b).norm(), (a - c).norm()};
    std::sort(len.begin(), len.end());
    q.minAngleMetric = std::max(q.minAngleMetric, len[2] * len[2] / tri.area);
    q.maxAngleMetric = std::max(q.maxAngleMetric, len[0] * len[1] / tri.area);
    // H_T/h_T with h1, h2 the edges other than the longest (h1 >= h2)
    q.semiRegularity = std::max(q.semiRegularity, len[1] * len[0] / tri.area);
  }
  return q;
}

FaceGeometry face_geometry(const Mesh& mesh, int faceId) {
  if (faceId < 0 || faceId >= mesh.numFaces()) throw std::out_of_range("face id out of range");
  const Face& f = mesh.faces[faceId];
  FaceGeometry g;
  g.length = f.length;
  g.normal = f.normal;
  g.midpoint = f.midpoint;
  g.ell.push_back(f.ell[0]);
  if (f.interior()) g.ell.push_back(f.ell[1]);
  return g;
}

void export_mesh(const Mesh& mesh, std::ostream& out) {
  out << "v " << mesh.vertices.size() << "\n";
  out.precision(17);
  for (const auto& p : mesh.vertices) out << p.x() << " " << p.y() << "\n";
  out << "t " << mesh.triangles.size() << "\n";
  for (const auto& tri : mesh.triangles)
    out << tri.vertexIds[0] << " " << tri.vertexIds[1] << " " << tri.vertexIds[2] << "\n";
}

}  // namespace wopsip
