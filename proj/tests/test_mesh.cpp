#include "wopsip/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace wopsip;

namespace {

// Distance from the vertex opposite a face to the line through the face;
// the second route for ell besides 2|T|/|F|.
double opposite_vertex_distance(const Mesh& mesh, const Face& face, int side) {
  const Triangle& tri = mesh.triangles[face.triangle[side]];
  const Vec2 a = mesh.vertices[face.vertexIds[0]];
  const Vec2 b = mesh.vertices[face.vertexIds[1]];
  const Vec2 p = mesh.vertices[tri.vertexIds[face.localFace[side]]];
  const Vec2 t = (b - a).normalized();
  const Vec2 d = p - a;
  return std::abs(d.x() * t.y() - d.y() * t.x());
}

}  // namespace

TEST_CASE("uniform N=2 counts and coordinates") {
  const Mesh mesh = generate_mesh(Uniform{}, 2);
  CHECK(mesh.numTriangles() == 8);
  CHECK(mesh.numFaces() == 16);
  CHECK(mesh.vertices.size() == 9);
  for (const Vec2& v : mesh.vertices) {
    CHECK((v.x() == 0.0 || v.x() == 0.5 || v.x() == 1.0));
    CHECK((v.y() == 0.0 || v.y() == 0.5 || v.y() == 1.0));
  }
}

TEST_CASE("entity counts, Euler characteristic and areas") {
  for (int n : {2, 3, 8}) {
    const Mesh mesh = generate_mesh(Uniform{}, n);
    CHECK(mesh.numTriangles() == 2 * n * n);
    CHECK(mesh.numFaces() == 3 * n * n + 2 * n);
    CHECK(static_cast<int>(mesh.boundaryFaceIds.size()) == 4 * n);
    const int euler = static_cast<int>(mesh.vertices.size()) - mesh.numFaces() +
                      mesh.numTriangles();
    CHECK(euler == 1);
    double area = 0.0;
    for (const auto& tri : mesh.triangles) {
      CHECK(tri.area > 0.0);
      area += tri.area;
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("uniform N=16 mesh size is the cell diagonal") {
  const Mesh mesh = generate_mesh(Uniform{}, 16);
  CHECK(mesh.h == doctest::Approx(std::sqrt(2.0) / 16.0).epsilon(1e-14));
}

TEST_CASE("Shishkin delta=1/1024 N=16 matches the reported penalty scales") {
  const Mesh mesh = generate_mesh(Shishkin{1.0 / 1024.0}, 16);
  const double tau = (4.0 / 1024.0) * std::log(16.0);
  double minFace = 1e300;
  for (const auto& f : mesh.faces) minFace = std::min(minFace, f.length);
  CHECK(minFace == doctest::Approx(tau / 8.0).epsilon(1e-12));
  CHECK(1.0 / minFace == doctest::Approx(7.3866e+02).epsilon(1e-4));
  CHECK(1.0 / mesh.h == doctest::Approx(7.2179).epsilon(1e-4));
}

TEST_CASE("Shishkin rejects odd n and tau >= 1") {
  CHECK_THROWS_AS(generate_mesh(Shishkin{1.0 / 128.0}, 15), std::invalid_argument);
  CHECK_THROWS_AS(generate_mesh(Shishkin{0.25}, 16), std::invalid_argument);
  CHECK_THROWS_AS(generate_mesh(Uniform{}, 1), std::invalid_argument);
}

TEST_CASE("face geometry: ell identities") {
  for (const MeshFamily family :
       {MeshFamily{Uniform{}}, MeshFamily{Shishkin{1.0 / 128.0}}, MeshFamily{CosineGraded{}}}) {
    const Mesh mesh = generate_mesh(family, 8);
    for (const auto& face : mesh.faces) {
      for (int s = 0; s < 2; ++s) {
        if (face.triangle[s] < 0) break;
        const Triangle& tri = mesh.triangles[face.triangle[s]];
        CHECK(face.ell[s] > 0.0);
        // d=2 identity ell * |F| = 2 |T|
        CHECK(face.ell[s] * face.length ==
              doctest::Approx(2.0 * tri.area).epsilon(1e-12));
        // agrees with the point-to-line distance
        CHECK(face.ell[s] ==
              doctest::Approx(opposite_vertex_distance(mesh, face, s)).epsilon(1e-12));
      }
      if (face.interior()) {
        CHECK(face.ell[0] + face.ell[1] <= mesh.triangles[face.triangle[0]].diameter +
                                               mesh.triangles[face.triangle[1]].diameter);
      }
    }
  }
}

TEST_CASE("face normals: unit length and orientation") {
  const Mesh mesh = generate_mesh(Shishkin{1.0 / 128.0}, 8);
  const auto centroid = [&](int t) {
    const auto& tri = mesh.triangles[t];
    return Vec2((mesh.vertices[tri.vertexIds[0]] + mesh.vertices[tri.vertexIds[1]] +
                 mesh.vertices[tri.vertexIds[2]]) /
                3.0);
  };
  for (const auto& face : mesh.faces) {
    CHECK(face.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    if (face.interior()) {
      CHECK(face.normal.dot(centroid(face.triangle[1]) - centroid(face.triangle[0])) > 0.0);
      CHECK(face.triangle[0] < face.triangle[1]);
    } else {
      CHECK(face.normal.dot(face.midpoint - centroid(face.triangle[0])) > 0.0);
      const bool onBoundary = face.midpoint.x() == 0.0 || face.midpoint.x() == 1.0 ||
                              face.midpoint.y() == 0.0 || face.midpoint.y() == 1.0;
      CHECK(onBoundary);
    }
  }
}

TEST_CASE("specific ell values on the uniform N=2 mesh") {
  const Mesh mesh = generate_mesh(Uniform{}, 2);
  bool sawVertical = false, sawDiagonal = false, sawBoundary = false;
  for (int fid = 0; fid < mesh.numFaces(); ++fid) {
    const Face& f = mesh.faces[fid];
    const FaceGeometry g = face_geometry(mesh, fid);
    if (f.interior() && f.midpoint.x() == 0.5 && f.midpoint.y() == 0.25) {
      // vertical face between two leg-sharing triangles: ell = 2(1/8)/(1/2)
      CHECK(g.ell.size() == 2);
      CHECK(g.ell[0] == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(g.ell[1] == doctest::Approx(0.5).epsilon(1e-14));
      sawVertical = true;
    }
    if (f.interior() && f.midpoint.x() == 0.25 && f.midpoint.y() == 0.25) {
      // cell diagonal: ell = 2 (1/(2 N^2)) / (sqrt(2)/N) with N = 2
      CHECK(g.ell[0] == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
      CHECK(g.ell[1] == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
      sawDiagonal = true;
    }
    if (!f.interior()) {
      CHECK(g.ell.size() == 1);
      sawBoundary = true;
    }
  }
  CHECK(sawVertical);
  CHECK(sawDiagonal);
  CHECK(sawBoundary);
  CHECK_THROWS_AS(face_geometry(mesh, mesh.numFaces()), std::out_of_range);
}

TEST_CASE("generation is deterministic") {
  const Mesh a = generate_mesh(Shishkin{1.0 / 1024.0}, 16);
  const Mesh b = generate_mesh(Shishkin{1.0 / 1024.0}, 16);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    CHECK(a.vertices[i].x() == b.vertices[i].x());
    CHECK(a.vertices[i].y() == b.vertices[i].y());
  }
}

TEST_CASE("mesh quality reproduces the reported metrics") {
  const MeshQuality uniform = mesh_quality(generate_mesh(Uniform{}, 32));
  CHECK(uniform.minAngleMetric == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(uniform.maxAngleMetric == doctest::Approx(2.0).epsilon(1e-9));

  const MeshQuality shishkin = mesh_quality(generate_mesh(Shishkin{1.0 / 128.0}, 32));
  CHECK(shishkin.minAngleMetric == doctest::Approx(9.66647).epsilon(2e-5));

  const MeshQuality cosine = mesh_quality(generate_mesh(CosineGraded{}, 64));
  CHECK(cosine.minAngleMetric == doctest::Approx(5.19640e+01).epsilon(1e-3));

  const MeshQuality quadratic = mesh_quality(generate_mesh(QuadraticGraded{}, 64));
  CHECK(quadratic.minAngleMetric == doctest::Approx(1.28031e+02).epsilon(1e-3));

  // every triangle of every family is right-angled
  for (const MeshFamily family :
       {MeshFamily{Uniform{}}, MeshFamily{Shishkin{1.0 / 128.0}}, MeshFamily{CosineGraded{}},
        MeshFamily{QuadraticGraded{}}}) {
    const MeshQuality q = mesh_quality(generate_mesh(family, 16));
    CHECK(q.maxAngleMetric == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(q.minAngleMetric >= q.maxAngleMetric);
  }
}

TEST_CASE("quality formulas on a single right triangle") {
  // legs a >= b: minAngle = 2(a^2+b^2)/(ab), maxAngle = 2
  const double a = 0.7, b = 0.2;
  Mesh mesh;
  mesh.vertices = {{0.0, 0.0}, {a, 0.0}, {0.0, b}};
  Triangle tri;
  tri.vertexIds = {0, 1, 2};
  tri.area = 0.5 * a * b;
  tri.diameter = std::sqrt(a * a + b * b);
  mesh.triangles.push_back(tri);
  mesh.h = tri.diameter;
  const MeshQuality q = mesh_quality(mesh);
  CHECK(q.minAngleMetric == doctest::Approx(2.0 * (a * a + b * b) / (a * b)).epsilon(1e-13));
  CHECK(q.maxAngleMetric == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(q.semiRegularity == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("plain text export") {
  const Mesh mesh = generate_mesh(Uniform{}, 2);
  std::ostringstream out;
  export_mesh(mesh, out);
  std::istringstream in(out.str());
  std::string tag;
  int count = 0;
  in >> tag >> count;
  CHECK(tag == "v");
  CHECK(count == 9);
  double x, y;
  for (int i = 0; i < count; ++i) CHECK((in >> x >> y));
  in >> tag >> count;
  CHECK(tag == "t");
  CHECK(count == 8);
  int v0, v1, v2;
  std::set<int> seen;
  for (int i = 0; i < count; ++i) {
    CHECK((in >> v0 >> v1 >> v2));
    seen.insert({v0, v1, v2});
  }
  CHECK(*seen.begin() >= 0);
  CHECK(*seen.rbegin() < 9);
}
