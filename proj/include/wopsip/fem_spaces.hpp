#pragma once

#include "wopsip/mesh.hpp"
#include "wopsip/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>

namespace wopsip {

std::array<double, 3> barycentric(const Mesh& mesh, int t, const Vec2& x);

/// Crouzeix-Raviart basis theta_i = 1 - 2*lambda_i on one triangle; theta_i
/// equals 1 at the midpoint of face i and 0 at the other two midpoints.
struct CRLocalBasis {
  int triangle = -1;
  std::array<Vec2, 3> gradients{};

  static double value(int i, const std::array<double, 3>& lambda) {
    return 1.0 - 2.0 * lambda[i];
  }
};

CRLocalBasis cr_local_basis(const Mesh& mesh, int t);

/// Lowest-order Raviart-Thomas shapes theta_i(x) = iota_i/(2|T|) (x - P_i),
/// dual to fluxes through the mesh's stored face normals.
struct RTLocalBasis {
  int triangle = -1;
  std::array<double, 3> sign{};       // iota: +1 when the stored normal is outward
  std::array<Vec2, 3> vertex{};       // P_i opposite face i
  double area = 0.0;

  Vec2 value(int i, const Vec2& x) const { return sign[i] / (2.0 * area) * (x - vertex[i]); }
  double divergence(int i) const { return sign[i] / area; }
};

RTLocalBasis rt_local_basis(const Mesh& mesh, int t);

/// Face averages of v over the three faces (degree-5 edge quadrature);
/// reproduces affine functions exactly.
std::array<double, 3> cr_interpolate_local(const Mesh& mesh, int t,
                                           const std::function<double(const Vec2&)>& v);

/// Signed fluxes of v through the three faces w.r.t. the stored normals;
/// reproduces RT0 fields exactly.
std::array<double, 3> rt_interpolate_local(const Mesh& mesh, int t,
                                           const std::function<Vec2(const Vec2&)>& v);

/// Cell average (degree-5 quadrature).
double l2_project_cell(const Mesh& mesh, int t, const std::function<double(const Vec2&)>& f);

/// Face average (3-point Gauss); equals g(x_F) for affine g.
double l2_project_face(const Mesh& mesh, int faceId,
                       const std::function<double(const Vec2&)>& g);

/// Velocity DOF layouts. WopsipCell keeps 3 DOFs per triangle per component
/// (discontinuous); WbcrEdge shares one DOF per face per component with
/// boundary faces eliminated (strong zero).
class DofMap {
 public:
  enum class Layout { WopsipCell, WbcrEdge };

  DofMap(const Mesh& mesh, Layout layout);

  Layout layout() const { return layout_; }
  int velocityPerComponent() const { return velocityPerComponent_; }
  int numVelocity() const { return 2 * velocityPerComponent_; }
  int numPressure() const { return nTriangles_; }
  int totalUnknowns() const { return numVelocity() + numPressure(); }
  /// Nodal points as reported in convergence tables (boundary included).
  long nodalPoints() const;

  /// Global index of the velocity DOF for (triangle, local face, component),
  /// or -1 when eliminated by the boundary condition.
  int velocityDof(int t, int localFace, int component) const {
    if (layout_ == Layout::WopsipCell)
      return component * velocityPerComponent_ + 3 * t + localFace;
    const int fd = faceDof_[triFaces_[t][localFace]];
    return fd < 0 ? -1 : component * velocityPerComponent_ + fd;
  }

  /// DOF attached to a face id (WbcrEdge only), -1 for boundary faces.
  int faceVelocityDof(int faceId, int component) const {
    const int fd = faceDof_[faceId];
    return fd < 0 ? -1 : component * velocityPerComponent_ + fd;
  }

  int pressureDof(int t) const { return numVelocity() + t; }

  /// Local CR coefficients of one component on triangle t (0 for eliminated DOFs).
  std::array<double, 3> localVelocity(const Eigen::VectorXd& u, int t, int component) const {
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) {
      const int dof = velocityDof(t, i, component);
      c[i] = dof >= 0 ? u[dof] : 0.0;
    }
    return c;
  }

 private:
  Layout layout_;
  int nTriangles_ = 0;
  int nFaces_ = 0;
  int velocityPerComponent_ = 0;
  std::vector<std::array<int, 3>> triFaces_;
  std::vector<int> faceDof_;
};

/// Element-wise CR interpolation of a continuous vector field into the given
/// layout; returns the velocity coefficient vector.
Eigen::VectorXd global_interpolate_cr(const Mesh& mesh,
                                      const std::function<Vec2(const Vec2&)>& v,
                                      const DofMap& dofMap);

}  // namespace wopsip
