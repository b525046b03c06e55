#include "wopsip/analysis.hpp"

#include "wopsip/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wopsip {

ErrorReport error_report(const Mesh& mesh, const Problem& problem, const DofMap& dofMap,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& p) {
  if (u.size() != dofMap.numVelocity() || p.size() != dofMap.numPressure())
    throw std::invalid_argument("solution size does not match the DOF layout");

  const QuadRule& rule = triangle_rule(10);
  double errGrad2 = 0.0, errU2 = 0.0, errP2 = 0.0;
  double normGrad2 = 0.0, normU2 = 0.0, normP2 = 0.0;

  for (int t = 0; t < mesh.numTriangles(); ++t) {
    const CRLocalBasis basis = cr_local_basis(mesh, t);
    const std::array<std::array<double, 3>, 2> coef{dofMap.localVelocity(u, t, 0),
                                                    dofMap.localVelocity(u, t, 1)};
    Eigen::Matrix2d gradH = Eigen::Matrix2d::Zero();
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 3; ++i) gradH.row(c) += coef[c][i] * basis.gradients[i].transpose();
    const double pT = p[t];

    const auto cellTerms = [&](const Vec2& x) {
      const auto lambda = barycentric(mesh, t, x);
      Vec2 uh = Vec2::Zero();
      for (int i = 0; i < 3; ++i) {
        const double theta = CRLocalBasis::value(i, lambda);
        uh.x() += coef[0][i] * theta;
        uh.y() += coef[1][i] * theta;
      }
      const Vec2 ue = problem.velocity(x);
      const Eigen::Matrix2d ge = problem.velocityGradient(x);
      const double pe = problem.pressure(x);
      Eigen::Matrix<double, 6, 1> vals;
      vals << (ge - gradH).squaredNorm(), (ue - uh).squaredNorm(), (pe - pT) * (pe - pT),
          ge.squaredNorm(), ue.squaredNorm(), pe * pe;
      return vals;
    };
    const auto sums = integrate_on_triangle(cellTerms, mesh, t, rule);
    errGrad2 += sums[0];
    errU2 += sums[1];
    errP2 += sums[2];
    normGrad2 += sums[3];
    normU2 += sums[4];
    normP2 += sums[5];
  }

  double jump2 = 0.0;
  if (dofMap.layout() == DofMap::Layout::WopsipCell) {
    for (const Face& face : mesh.faces) {
      const double w = face_penalty_weight(face, mesh.h, PenaltyMode::Kappa);
      const Vec2 exactAvg = face_average(problem.velocity, mesh.vertices[face.vertexIds[0]],
                                         mesh.vertices[face.vertexIds[1]]);
      for (int c = 0; c < 2; ++c) {
        // theta_i(x_F) = delta_i(localFace): the midpoint trace is the face's
        // own coefficient.
        const double trace0 =
            u[dofMap.velocityDof(face.triangle[0], face.localFace[0], c)];
        double projectedJump;
        if (face.interior()) {
          const double trace1 =
              u[dofMap.velocityDof(face.triangle[1], face.localFace[1], c)];
          projectedJump = trace0 - trace1;  // [[u]] vanishes for continuous u
        } else {
          projectedJump = exactAvg[c] - trace0;
        }
        jump2 += w * projectedJump * projectedJump;
      }
    }
  }

  ErrorReport report;
  report.errH1Broken = std::sqrt(errGrad2);
  report.jumpSemi = std::sqrt(jump2);
  report.errEnergy = std::sqrt(errGrad2 + jump2);
  report.errL2u = std::sqrt(errU2);
  report.errL2p = std::sqrt(errP2);
  report.normH1u = std::sqrt(normGrad2);
  report.normL2u = std::sqrt(normU2);
  report.normL2p = std::sqrt(normP2);
  report.relH1Broken = report.errH1Broken / report.normH1u;
  report.relL2u = report.errL2u / report.normL2u;
  report.relL2p = report.errL2p / report.normL2p;
  report.relEnergy = report.errEnergy / report.normH1u;
  report.relCombined = (report.errEnergy + report.errL2p) / (report.normH1u + report.normL2p);
  return report;
}

double convergence_rate(double errCoarse, double errFine) {
  if (errCoarse <= 0.0 || errFine <= 0.0)
    throw std::invalid_argument("convergence rate requires positive errors");
  return std::log2(errCoarse / errFine);
}

PenaltyDiagnostics penalty_diagnostics(const Mesh& mesh) {
  PenaltyDiagnostics d;
  for (int fid : mesh.interiorFaceIds) {
    const Face& f = mesh.faces[fid];
    const double s = std::sqrt(f.ell[0]) + std::sqrt(f.ell[1]);
    d.tauF = std::max(d.tauF, 1.0 / f.length);
    d.tauAve = std::max(d.tauAve, 0.25 * (1.0 / f.ell[0] + 1.0 / f.ell[1]));
    d.tauDg = std::max(d.tauDg, 2.0 / (s * s));
    d.tauWop = std::max(d.tauWop, 2.0 / (mesh.h * mesh.h * s * s));
  }
  return d;
}

long dof_count(const Mesh& mesh, Scheme scheme) {
  if (scheme == Scheme::Wopsip) return 7L * mesh.numTriangles();
  return 2L * mesh.numFaces() + mesh.numTriangles();
}

}  // namespace wopsip
