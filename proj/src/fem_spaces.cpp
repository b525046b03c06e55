#include "wopsip/fem_spaces.hpp"

namespace wopsip {

namespace {
double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }
}  // namespace

std::array<double, 3> barycentric(const Mesh& mesh, int t, const Vec2& x) {
  const auto& tri = mesh.triangles[t];
  const Vec2& p0 = mesh.vertices[tri.vertexIds[0]];
  const Vec2& p1 = mesh.vertices[tri.vertexIds[1]];
  const Vec2& p2 = mesh.vertices[tri.vertexIds[2]];
  const double inv = 1.0 / (2.0 * tri.area);
  return {cross2(p1 - x, p2 - x) * inv, cross2(p2 - x, p0 - x) * inv,
          cross2(p0 - x, p1 - x) * inv};
}

CRLocalBasis cr_local_basis(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  CRLocalBasis basis;
  basis.triangle = t;
  const double inv = 1.0 / (2.0 * tri.area);
  for (int i = 0; i < 3; ++i) {
    // grad lambda_i = perp(P_{i+2} - P_{i+1}) / (2|T|) for CCW vertices
    const Vec2& a = mesh.vertices[tri.vertexIds[(i + 1) % 3]];
    const Vec2& b = mesh.vertices[tri.vertexIds[(i + 2) % 3]];
    basis.gradients[i] = -2.0 * inv * perp(b - a);
  }
  return basis;
}

RTLocalBasis rt_local_basis(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  RTLocalBasis basis;
  basis.triangle = t;
  basis.area = tri.area;
  for (int i = 0; i < 3; ++i) {
    basis.vertex[i] = mesh.vertices[tri.vertexIds[i]];
    basis.sign[i] = mesh.faces[tri.faceIds[i]].triangle[0] == t ? 1.0 : -1.0;
  }
  return basis;
}

std::array<double, 3> cr_interpolate_local(const Mesh& mesh, int t,
                                           const std::function<double(const Vec2&)>& v) {
  const auto& tri = mesh.triangles[t];
  std::array<double, 3> coef{};
  for (int i = 0; i < 3; ++i) {
    const Face& f = mesh.faces[tri.faceIds[i]];
    coef[i] = face_average(v, mesh.vertices[f.vertexIds[0]], mesh.vertices[f.vertexIds[1]]);
  }
  return coef;
}

std::array<double, 3> rt_interpolate_local(const Mesh& mesh, int t,
                                           const std::function<Vec2(const Vec2&)>& v) {
  const auto& tri = mesh.triangles[t];
  std::array<double, 3> flux{};
  for (int i = 0; i < 3; ++i) {
    const Face& f = mesh.faces[tri.faceIds[i]];
    const Vec2 n = f.normal;
    const auto normalTrace = [&](const Vec2& x) { return v(x).dot(n); };
    flux[i] = f.length * face_average(normalTrace, mesh.vertices[f.vertexIds[0]],
                                      mesh.vertices[f.vertexIds[1]]);
  }
  return flux;
}

double l2_project_cell(const Mesh& mesh, int t, const std::function<double(const Vec2&)>& f) {
  return integrate_on_triangle(f, mesh, t, triangle_rule(5)) / mesh.triangles[t].area;
}

double l2_project_face(const Mesh& mesh, int faceId,
                       const std::function<double(const Vec2&)>& g) {
  const Face& f = mesh.faces[faceId];
  return face_average(g, mesh.vertices[f.vertexIds[0]], mesh.vertices[f.vertexIds[1]]);
}

DofMap::DofMap(const Mesh& mesh, Layout layout)
    : layout_(layout), nTriangles_(mesh.numTriangles()), nFaces_(mesh.numFaces()) {
  triFaces_.reserve(mesh.triangles.size());
  for (const auto& tri : mesh.triangles) triFaces_.push_back(tri.faceIds);
  if (layout_ == Layout::WopsipCell) {
    velocityPerComponent_ = 3 * nTriangles_;
  } else {
    faceDof_.assign(nFaces_, -1);
    for (int fid : mesh.interiorFaceIds) faceDof_[fid] = velocityPerComponent_++;
  }
}

long DofMap::nodalPoints() const {
  if (layout_ == Layout::WopsipCell) return 7L * nTriangles_;
  return 2L * nFaces_ + nTriangles_;
}

Eigen::VectorXd global_interpolate_cr(const Mesh& mesh,
                                      const std::function<Vec2(const Vec2&)>& v,
                                      const DofMap& dofMap) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(dofMap.numVelocity());
  if (dofMap.layout() == DofMap::Layout::WopsipCell) {
    for (int t = 0; t < mesh.numTriangles(); ++t) {
      for (int c = 0; c < 2; ++c) {
        const auto comp = [&](const Vec2& x) { return v(x)[c]; };
        const auto coef = cr_interpolate_local(mesh, t, comp);
        for (int i = 0; i < 3; ++i) u[dofMap.velocityDof(t, i, c)] = coef[i];
      }
    }
  } else {
    for (int fid : mesh.interiorFaceIds) {
      const Face& f = mesh.faces[fid];
      const Vec2 avg = face_average(v, mesh.vertices[f.vertexIds[0]],
                                    mesh.vertices[f.vertexIds[1]]);
      for (int c = 0; c < 2; ++c) u[dofMap.faceVelocityDof(fid, c)] = avg[c];
    }
  }
  return u;
}

}  // namespace wopsip
