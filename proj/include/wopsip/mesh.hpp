#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace wopsip {

using Vec2 = Eigen::Vector2d;

/// Graded tensor meshes of the unit square. The x1 grid is always uniform;
/// the x2 grid follows the family rule.
struct Uniform {};
struct Shishkin {
  double delta = 1.0 / 128.0;  // layer width; transition tau = 4*delta*ln(n)
};
struct CosineGraded {};
struct QuadraticGraded {};

using MeshFamily = std::variant<Uniform, Shishkin, CosineGraded, QuadraticGraded>;

MeshFamily parse_mesh_family(const std::string& name, double delta);
std::string mesh_family_name(const MeshFamily& family);

struct Triangle {
  std::array<int, 3> vertexIds{};  // counterclockwise
  std::array<int, 3> faceIds{};    // faceIds[i] opposite vertexIds[i]
  double area = 0.0;               // |T|_2
  double diameter = 0.0;           // h_T, longest edge
};

struct Face {
  std::array<int, 2> vertexIds{};
  double length = 0.0;  // h_F
  Vec2 midpoint = Vec2::Zero();
  Vec2 normal = Vec2::Zero();  // unit; t1 -> t2 for interior, outward on the boundary
  // adjacency: triangle[0] always valid; triangle[1] = -1 on the boundary
  std::array<int, 2> triangle{-1, -1};
  std::array<int, 2> localFace{-1, -1};  // local face index within each triangle
  std::array<double, 2> ell{0.0, 0.0};   // ell_{T,F} = 2|T|_2 / |F|_1 per adjacent triangle

  bool interior() const { return triangle[1] >= 0; }
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Face> faces;
  std::vector<int> interiorFaceIds;
  std::vector<int> boundaryFaceIds;
  double h = 0.0;  // max over h_T
  int n = 0;       // grid divisions per side

  int numTriangles() const { return static_cast<int>(triangles.size()); }
  int numFaces() const { return static_cast<int>(faces.size()); }
};

/// Quality metrics of §"mesh conditions" style reports. L1 <= L2 <= L3 denote
/// the sorted edge lengths of a triangle.
struct MeshQuality {
  double minAngleMetric = 0.0;   // max over T of |L3|^2 / |T|
  double maxAngleMetric = 0.0;   // max over T of |L1||L2| / |T|; >= 2, = 2 iff right-angled
  double h = 0.0;                // max diameter
  double semiRegularity = 0.0;   // max over T of H_T / h_T, H_T = h1 h2 h_T / |T|
};

/// Build the tensor mesh: x1 uniform, x2 per family, each cell split by the
/// diagonal from its lower-left to its upper-right corner.
/// Requires n >= 2; Shishkin additionally requires n even and 4*delta*ln(n) < 1.
Mesh generate_mesh(const MeshFamily& family, int n);

MeshQuality mesh_quality(const Mesh& mesh);

struct FaceGeometry {
  double length = 0.0;
  Vec2 normal = Vec2::Zero();
  Vec2 midpoint = Vec2::Zero();
  std::vector<double> ell;  // size 2 interior, 1 boundary
};

FaceGeometry face_geometry(const Mesh& mesh, int faceId);

/// Plain-text export: `v <count>` then `x y` lines, `t <count>` then `i j k`
/// lines (0-based). Inspection/plotting only.
void export_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace wopsip
